#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "measure.hpp"
#include "scalar.hpp"

namespace ratla {

/**
 * Rotation angle: an exact count of quarter turns, or radians as a double.
 */
class Angle {
public:
    static Angle quarter_turns(long long k) {
        Angle a;
        a.quarters_ = static_cast<int>(((k % 4) + 4) % 4);
        return a;
    }

    static Angle radians(double r) {
        Angle a;
        a.exact_ = false;
        a.radians_ = r;
        return a;
    }

    /// "0", "pi/2", "pi", "3pi/2" are exact; anything else is read as radians.
    static Angle parse(std::string_view text) {
        auto s = detail::trim(text);
        if (s == "0") return quarter_turns(0);
        if (s == "pi/2") return quarter_turns(1);
        if (s == "pi") return quarter_turns(2);
        if (s == "3pi/2") return quarter_turns(3);
        if (s == "-pi/2") return quarter_turns(-1);
        std::string str(s);
        std::size_t used = 0;
        double r = 0;
        try {
            r = std::stod(str, &used);
        } catch (const std::exception&) {
            throw parse_error("malformed angle '" + str + "'");
        }
        if (used != str.size() || !std::isfinite(r)) throw parse_error("malformed angle '" + str + "'");
        return radians(r);
    }

    bool is_exact() const noexcept { return exact_; }
    int quarters() const noexcept { return quarters_; }

    double to_radians() const { return exact_ ? quarters_ * std::numbers::pi / 2 : radians_; }

    std::string to_string() const {
        if (!exact_) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", radians_);
            return buf;
        }
        static constexpr const char* names[] = {"0", "pi/2", "pi", "3pi/2"};
        return names[quarters_];
    }

    friend Angle operator+(const Angle& a, const Angle& b) {
        if (a.exact_ && b.exact_) return quarter_turns(a.quarters_ + b.quarters_);
        return radians(a.to_radians() + b.to_radians());
    }

    friend bool operator==(const Angle& a, const Angle& b) {
        if (a.exact_ != b.exact_) return false;
        return a.exact_ ? a.quarters_ == b.quarters_ : a.radians_ == b.radians_;
    }

    /// cos and sin; exact from the quarter-turn table, otherwise the float values as exact dyadics.
    std::pair<Scalar, Scalar> cos_sin() const {
        if (exact_) {
            static constexpr int table[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            return {Scalar(table[quarters_][0]), Scalar(table[quarters_][1])};
        }
        return {Scalar::from_double(std::cos(radians_)), Scalar::from_double(std::sin(radians_))};
    }

private:
    bool exact_ = true;
    int quarters_ = 0;
    double radians_ = 0.0;
};

template <std::size_t N>
struct Translation {
    std::array<Scalar, N> offset{};
    friend bool operator==(const Translation&, const Translation&) = default;
};

/// Rotation in the plane; in 3D, about the z-axis.
struct Rotation {
    Angle angle;
    friend bool operator==(const Rotation&, const Rotation&) = default;
};

/// Reflection through the xy-plane, (x, y, z) -> (x, y, -z).
struct ReflectionXY {
    friend bool operator==(const ReflectionXY&, const ReflectionXY&) = default;
};

enum class TransformKind { identity, translation, rotation, reflection_xy, composite };

/**
 * Isometry of the plane (N = 2) or space (N = 3), kept as primitive steps.
 *
 * Steps apply first to last. Composition fuses adjacent steps of the same
 * kind: angles add, offsets add, two reflections cancel.
 */
template <std::size_t N>
class Transform {
    static_assert(N == 2 || N == 3);

public:
    using Step = std::conditional_t<N == 2, std::variant<Translation<N>, Rotation>,
                                    std::variant<Translation<N>, Rotation, ReflectionXY>>;

    Transform() = default;

    static Transform identity() { return {}; }

    static Transform translation(std::array<Scalar, N> offset) {
        return Transform(std::vector<Step>{Translation<N>{std::move(offset)}});
    }

    static Transform rotation(Angle angle) { return Transform(std::vector<Step>{Rotation{angle}}); }

    static Transform reflection_xy()
        requires(N == 3)
    {
        return Transform(std::vector<Step>{ReflectionXY{}});
    }

    const std::vector<Step>& steps() const noexcept { return steps_; }

    TransformKind kind() const {
        if (steps_.empty()) return TransformKind::identity;
        if (steps_.size() > 1) return TransformKind::composite;
        return std::visit(
            [](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, Translation<N>>) {
                    return TransformKind::translation;
                } else if constexpr (std::is_same_v<S, Rotation>) {
                    return TransformKind::rotation;
                } else {
                    return TransformKind::reflection_xy;
                }
            },
            steps_.front());
    }

    /// True when every step is exact (no float-angle rotation).
    bool is_exact() const {
        for (const auto& s : steps_) {
            if (const auto* r = std::get_if<Rotation>(&s); r && !r->angle.is_exact()) return false;
        }
        return true;
    }

    Point<N> apply(Point<N> p) const {
        for (const auto& s : steps_) p = apply_step(s, std::move(p));
        return p;
    }

    Point<N> operator()(const Point<N>& p) const { return apply(p); }

    /// Linear part as an N x N matrix (product of the steps' linear parts).
    Matrix linear_part() const {
        Matrix m = Matrix::identity(N);
        for (const auto& s : steps_) m = mat_mul(step_linear(s), m);
        return m;
    }

    /// Image of the origin.
    std::array<Scalar, N> offset() const { return apply(Point<N>{}).coords; }

    friend bool operator==(const Transform&, const Transform&) = default;

    template <std::size_t M>
    friend Transform<M> compose(const Transform<M>& outer, const Transform<M>& inner);

private:
    explicit Transform(std::vector<Step> steps) : steps_(std::move(steps)) {}

    static Point<N> apply_step(const Step& step, Point<N> p) {
        std::visit(
            [&p](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, Translation<N>>) {
                    for (std::size_t i = 0; i < N; ++i) p.coords[i] += s.offset[i];
                } else if constexpr (std::is_same_v<S, Rotation>) {
                    if (s.angle.is_exact()) {
                        auto [c, sn] = s.angle.cos_sin();
                        Scalar x = p.coords[0] * c - p.coords[1] * sn;
                        Scalar y = p.coords[0] * sn + p.coords[1] * c;
                        p.coords[0] = std::move(x);
                        p.coords[1] = std::move(y);
                    } else {
                        const double th = s.angle.to_radians();
                        const double x = p.coords[0].to_double();
                        const double y = p.coords[1].to_double();
                        p.coords[0] = Scalar::from_double(x * std::cos(th) - y * std::sin(th));
                        p.coords[1] = Scalar::from_double(x * std::sin(th) + y * std::cos(th));
                    }
                } else {
                    p.coords[2] = -p.coords[2];
                }
            },
            step);
        return p;
    }

    static Matrix step_linear(const Step& step) {
        return std::visit(
            [](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                Matrix id = Matrix::identity(N);
                std::vector<Scalar> e(id.entries());
                if constexpr (std::is_same_v<S, Rotation>) {
                    auto [c, sn] = s.angle.cos_sin();
                    e[0] = c;
                    e[1] = -sn;
                    e[N] = sn;
                    e[N + 1] = c;
                } else if constexpr (std::is_same_v<S, ReflectionXY>) {
                    e[8] = -1;
                }
                return Matrix(N, N, std::move(e));
            },
            step);
    }

    /// Fuses `b` (applied second) into `a` when they share a kind.
    static std::optional<std::optional<Step>> fuse(const Step& a, const Step& b) {
        if (a.index() != b.index()) return std::nullopt;
        if (const auto* ta = std::get_if<Translation<N>>(&a)) {
            const auto& tb = std::get<Translation<N>>(b);
            Translation<N> t;
            for (std::size_t i = 0; i < N; ++i) t.offset[i] = ta->offset[i] + tb.offset[i];
            return std::optional<Step>(Step{t});
        }
        if (const auto* ra = std::get_if<Rotation>(&a)) {
            return std::optional<Step>(Step{Rotation{ra->angle + std::get<Rotation>(b).angle}});
        }
        // Two reflections cancel.
        return std::optional<Step>(std::nullopt);
    }

    std::vector<Step> steps_;
};

using Transform2 = Transform<2>;
using Transform3 = Transform<3>;

/// outer after inner: compose(a, b)(p) == a(b(p)).
template <std::size_t N>
Transform<N> compose(const Transform<N>& outer, const Transform<N>& inner) {
    using Step = typename Transform<N>::Step;
    std::vector<Step> steps = inner.steps_;
    for (const auto& s : outer.steps_) {
        if (!steps.empty()) {
            if (auto fused = Transform<N>::fuse(steps.back(), s)) {
                steps.pop_back();
                if (*fused) steps.push_back(std::move(**fused));
                continue;
            }
        }
        steps.push_back(s);
    }
    return Transform<N>(std::move(steps));
}

inline Point2 apply2(const Transform2& t, const Point2& p) { return t.apply(p); }
inline Point3 apply3(const Transform3& t, const Point3& p) { return t.apply(p); }

struct Vertex {
    std::string label;
    std::vector<Scalar> coords;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Labeled vertices in dimension 2 or 3 joined by edges.
struct Polytope {
    std::size_t dimension = 2;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    void validate() const {
        if (dimension != 2 && dimension != 3) throw shape_error("polytope dimension must be 2 or 3");
        for (const auto& v : vertices) {
            if (v.coords.size() != dimension) throw shape_error("vertex '" + v.label + "' has the wrong dimension");
        }
        for (const auto& [a, b] : edges) {
            if (a >= vertices.size() || b >= vertices.size()) throw index_error("edge index out of range");
            if (a == b) throw invalid_operation("self-loop edge");
        }
    }

    /// Closed polygon: edges (0,1), (1,2), ..., (n-1,0).
    static Polytope polygon(std::vector<Vertex> vertices) {
        Polytope p{2, std::move(vertices), {}};
        const auto n = p.vertices.size();
        for (std::size_t i = 0; n >= 2 && i < n; ++i) {
            if (n == 2 && i == 1) break;
            p.edges.emplace_back(i, (i + 1) % n);
        }
        p.validate();
        return p;
    }

    template <std::size_t N>
    Point<N> point(std::size_t i) const {
        if (dimension != N) throw shape_error("polytope dimension mismatch");
        Point<N> p;
        for (std::size_t k = 0; k < N; ++k) p.coords[k] = vertices.at(i).coords[k];
        p.label = vertices.at(i).label;
        return p;
    }

    friend bool operator==(const Polytope&, const Polytope&) = default;
};

/// Maps every vertex; labels and edges are kept.
template <std::size_t N>
Polytope apply_polytope(const Transform<N>& t, const Polytope& shape) {
    if (shape.dimension != N) {
        throw shape_error("cannot apply a " + std::to_string(N) + "D transform to a " +
                          std::to_string(shape.dimension) + "D shape");
    }
    Polytope out = shape;
    for (std::size_t i = 0; i < out.vertices.size(); ++i) {
        auto image = t.apply(shape.point<N>(i));
        out.vertices[i].coords.assign(image.coords.begin(), image.coords.end());
    }
    return out;
}

}  // namespace ratla
