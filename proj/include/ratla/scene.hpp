#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "affine.hpp"
#include "errors.hpp"
#include "measure.hpp"
#include "scalar.hpp"

namespace ratla {

/// Parses "(x,y[,z])" with an optional leading label, e.g. "A(1,5)".
inline Vertex parse_vertex(std::string_view text) {
    auto s = detail::trim(text);
    auto open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')') {
        throw parse_error("malformed point '" + std::string(s) + "'");
    }
    Vertex v;
    v.label = std::string(s.substr(0, open));
    for (char c : v.label) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') {
            throw parse_error("malformed point label '" + v.label + "'");
        }
    }
    auto body = s.substr(open + 1, s.size() - open - 2);
    std::size_t start = 0;
    while (true) {
        auto comma = body.find(',', start);
        v.coords.push_back(parse_scalar(body.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return v;
}

template <std::size_t N>
Point<N> parse_point(std::string_view text) {
    auto v = parse_vertex(text);
    if (v.coords.size() != N) {
        throw parse_error("expected " + std::to_string(N) + " coordinates in '" + std::string(text) + "'");
    }
    Point<N> p;
    std::copy(v.coords.begin(), v.coords.end(), p.coords.begin());
    p.label = std::move(v.label);
    return p;
}

inline std::string format_vertex(const Vertex& v) {
    std::string out = v.label + "(";
    for (std::size_t i = 0; i < v.coords.size(); ++i) {
        if (i) out += ',';
        out += v.coords[i].to_string();
    }
    return out + ")";
}

enum class ObjectKind { point, polygon, polytope };

struct SceneObject {
    std::string name;
    ObjectKind kind = ObjectKind::polygon;
    Polytope shape;
    bool derived = false;  // produced by a transform directive

    friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

enum class TransformOp { translate, rotate, reflect_xy };

struct TransformDirective {
    TransformOp op = TransformOp::translate;
    std::string source;
    std::string target;
    std::vector<Scalar> offset;  // translate only
    Angle angle;                 // rotate only

    friend bool operator==(const TransformDirective&, const TransformDirective&) = default;
};

struct MeasureDirective {
    MeasureKind kind = MeasureKind::area;
    std::string name;

    friend bool operator==(const MeasureDirective&, const MeasureDirective&) = default;
};

struct RenderDirective {
    std::vector<std::string> names;

    friend bool operator==(const RenderDirective&, const RenderDirective&) = default;
};

using Directive = std::variant<TransformDirective, MeasureDirective, RenderDirective>;

/**
 * Named shapes of one dimension plus ordered directives.
 *
 * Objects produced by transform directives are stored with `derived` set.
 */
struct Scene {
    std::size_t dimension = 2;
    std::vector<SceneObject> objects;
    std::vector<Directive> directives;

    const SceneObject* find(std::string_view name) const {
        for (const auto& o : objects) {
            if (o.name == name) return &o;
        }
        return nullptr;
    }

    const SceneObject& get(std::string_view name) const {
        if (const auto* o = find(name)) return *o;
        throw invalid_operation("undefined object '" + std::string(name) + "'");
    }

    friend bool operator==(const Scene&, const Scene&) = default;
};

inline Polytope apply_directive(const TransformDirective& d, const Polytope& shape) {
    auto relabel = [](Polytope p) {
        for (auto& v : p.vertices) {
            if (!v.label.empty()) v.label += '\'';
        }
        return p;
    };
    if (shape.dimension == 2) {
        Transform2 t = d.op == TransformOp::translate
                           ? Transform2::translation({d.offset.at(0), d.offset.at(1)})
                           : Transform2::rotation(d.angle);
        return relabel(apply_polytope(t, shape));
    }
    Transform3 t;
    switch (d.op) {
        case TransformOp::translate: t = Transform3::translation({d.offset.at(0), d.offset.at(1), d.offset.at(2)}); break;
        case TransformOp::rotate: t = Transform3::rotation(d.angle); break;
        case TransformOp::reflect_xy: t = Transform3::reflection_xy(); break;
    }
    return relabel(apply_polytope(t, shape));
}

/**
 * Area of a triangle or parallelogram, volume of a tetrahedron or
 * parallelepiped. Parallelograms list their vertices in order; a
 * parallelepiped is read off the three neighbours of its first vertex.
 */
inline MeasureResult measure_object(const SceneObject& obj, MeasureKind kind) {
    const auto& shape = obj.shape;
    const auto n = shape.vertices.size();
    if (kind == MeasureKind::area) {
        if (shape.dimension != 2) throw invalid_operation("area needs a 2D object");
        if (n == 3) return triangle_area(shape.point<2>(0), shape.point<2>(1), shape.point<2>(2));
        if (n == 4) {
            auto a = shape.point<2>(0);
            auto b = shape.point<2>(1);
            auto c = shape.point<2>(2);
            auto d = shape.point<2>(3);
            if (a + c == b + d) return parallelogram_area_from_vertices(a, b, c);
        }
        throw invalid_operation("area of '" + obj.name + "': only triangles and parallelograms are supported");
    }
    if (shape.dimension != 3) throw invalid_operation("volume needs a 3D object");
    if (n == 4) {
        return tetrahedron_volume(shape.point<3>(0), shape.point<3>(1), shape.point<3>(2), shape.point<3>(3));
    }
    if (n == 8) {
        std::vector<std::size_t> neighbours;
        for (const auto& [a, b] : shape.edges) {
            if (a == 0) neighbours.push_back(b);
            if (b == 0) neighbours.push_back(a);
        }
        std::sort(neighbours.begin(), neighbours.end());
        neighbours.erase(std::unique(neighbours.begin(), neighbours.end()), neighbours.end());
        if (neighbours.size() == 3) {
            auto o = shape.point<3>(0);
            return parallelepiped_volume(shape.point<3>(neighbours[0]) - o, shape.point<3>(neighbours[1]) - o,
                                         shape.point<3>(neighbours[2]) - o);
        }
    }
    throw invalid_operation("volume of '" + obj.name + "': only tetrahedra and parallelepipeds are supported");
}

inline std::string measurement_line(const MeasureDirective& d, const MeasureResult& r) {
    return std::string(d.kind == MeasureKind::area ? "area " : "volume ") + d.name + " = " + r.value.to_string();
}

/// One "area NAME = value" / "volume NAME = value" line per measure directive.
inline std::vector<std::string> scene_measurements(const Scene& scene) {
    std::vector<std::string> lines;
    for (const auto& d : scene.directives) {
        if (const auto* m = std::get_if<MeasureDirective>(&d)) {
            lines.push_back(measurement_line(*m, measure_object(scene.get(m->name), m->kind)));
        }
    }
    return lines;
}

namespace detail {

/// Whitespace-separated tokens; parentheses keep their contents together.
inline std::vector<std::string> scene_tokens(std::string_view line) {
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char c : line) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth <= 0 && std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
            continue;
        }
        if (depth > 0 && std::isspace(static_cast<unsigned char>(c))) continue;
        cur += c;
    }
    if (depth != 0) throw parse_error("unbalanced parentheses");
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

inline std::vector<Edge> parse_edges(std::string_view text, std::size_t vertex_count) {
    std::vector<Edge> edges;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
        auto dash = item.find('-');
        if (dash == std::string_view::npos) throw parse_error("malformed edge '" + std::string(item) + "'");
        auto a = item.substr(0, dash);
        auto b = item.substr(dash + 1);
        if (!all_digits(a) || !all_digits(b)) throw parse_error("malformed edge '" + std::string(item) + "'");
        Edge e{std::stoul(std::string(a)), std::stoul(std::string(b))};
        if (e.first >= vertex_count || e.second >= vertex_count) {
            throw parse_error("edge '" + std::string(item) + "' refers to a missing vertex");
        }
        if (e.first == e.second) throw parse_error("edge '" + std::string(item) + "' is a self-loop");
        edges.push_back(e);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return edges;
}

}  // namespace detail

/**
 * Parses the line-oriented scene language.
 *
 *   dim 2|3
 *   point NAME (x,y[,z])
 *   polygon NAME [L](x,y) ...
 *   polytope NAME [L](x,y,z) ... [edges i-j,i-j,...]
 *   translate SRC by (p,q[,r]) as DST
 *   rotate SRC by ANGLE as DST
 *   reflectxy SRC as DST
 *   measure area|volume NAME
 *   render NAME ...
 *
 * '#' starts a comment. Vertex indices in edge lists are 0-based.
 */
inline Scene parse_scene(std::string_view text) {
    Scene scene;
    bool dim_seen = false;
    bool content_seen = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;

    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        try {
            auto tok = detail::scene_tokens(line);
            if (tok.empty()) continue;
            const auto& kw = tok[0];

            auto expect = [&](bool ok, const std::string& msg) {
                if (!ok) throw parse_error(msg);
            };
            auto require_new_name = [&](const std::string& name) {
                expect(detail::is_identifier(name), "invalid object name '" + name + "'");
                expect(scene.find(name) == nullptr, "object '" + name + "' is already defined");
            };
            auto require_defined = [&](const std::string& name) -> const SceneObject& {
                const auto* o = scene.find(name);
                expect(o != nullptr, "undefined object '" + name + "'");
                return *o;
            };
            auto vertex_of_dim = [&](const std::string& t) {
                auto v = parse_vertex(t);
                expect(v.coords.size() == scene.dimension, "point '" + t + "' does not match scene dimension " +
                                                               std::to_string(scene.dimension));
                return v;
            };

            if (kw == "dim") {
                expect(tok.size() == 2, "usage: dim 2|3");
                expect(!dim_seen, "dimension declared twice");
                expect(!content_seen, "dim must precede all objects and directives");
                expect(tok[1] == "2" || tok[1] == "3", "dimension must be 2 or 3");
                scene.dimension = tok[1] == "2" ? 2 : 3;
                dim_seen = true;
                continue;
            }
            content_seen = true;

            if (kw == "point") {
                expect(tok.size() == 3, "usage: point NAME (x,y[,z])");
                require_new_name(tok[1]);
                auto v = vertex_of_dim(tok[2]);
                if (v.label.empty()) v.label = tok[1];
                scene.objects.push_back({tok[1], ObjectKind::point, Polytope{scene.dimension, {v}, {}}, false});
            } else if (kw == "polygon") {
                expect(scene.dimension == 2, "polygon is 2D only; use polytope in 3D");
                expect(tok.size() >= 3, "usage: polygon NAME (x,y) ...");
                require_new_name(tok[1]);
                std::vector<Vertex> vs;
                for (std::size_t i = 2; i < tok.size(); ++i) vs.push_back(vertex_of_dim(tok[i]));
                scene.objects.push_back({tok[1], ObjectKind::polygon, Polytope::polygon(std::move(vs)), false});
            } else if (kw == "polytope") {
                expect(scene.dimension == 3, "polytope is 3D only; use polygon in 2D");
                expect(tok.size() >= 3, "usage: polytope NAME (x,y,z) ... [edges i-j,...]");
                require_new_name(tok[1]);
                Polytope p{3, {}, {}};
                std::size_t i = 2;
                for (; i < tok.size() && tok[i] != "edges"; ++i) p.vertices.push_back(vertex_of_dim(tok[i]));
                expect(!p.vertices.empty(), "polytope needs at least one vertex");
                if (i < tok.size()) {
                    expect(i + 2 == tok.size(), "usage: ... edges i-j,i-j,...");
                    p.edges = detail::parse_edges(tok[i + 1], p.vertices.size());
                }
                scene.objects.push_back({tok[1], ObjectKind::polytope, std::move(p), false});
            } else if (kw == "translate" || kw == "rotate" || kw == "reflectxy") {
                TransformDirective d;
                if (kw == "reflectxy") {
                    expect(tok.size() == 4 && tok[2] == "as", "usage: reflectxy SRC as DST");
                    expect(scene.dimension == 3, "reflectxy is 3D only");
                    d.op = TransformOp::reflect_xy;
                    d.target = tok[3];
                } else {
                    expect(tok.size() == 6 && tok[2] == "by" && tok[4] == "as",
                           "usage: " + kw + " SRC by " + (kw == "rotate" ? "ANGLE" : "(p,q[,r])") + " as DST");
                    d.target = tok[5];
                    if (kw == "translate") {
                        d.op = TransformOp::translate;
                        auto v = parse_vertex(tok[3]);
                        expect(v.label.empty(), "translation vector cannot be labeled");
                        expect(v.coords.size() == scene.dimension,
                               "translation vector does not match scene dimension " + std::to_string(scene.dimension));
                        d.offset = std::move(v.coords);
                    } else {
                        d.op = TransformOp::rotate;
                        d.angle = Angle::parse(tok[3]);
                    }
                }
                d.source = tok[1];
                const auto& src = require_defined(d.source);
                require_new_name(d.target);
                auto shape = apply_directive(d, src.shape);
                auto kind = src.kind;
                scene.objects.push_back({d.target, kind, std::move(shape), true});
                scene.directives.emplace_back(std::move(d));
            } else if (kw == "measure") {
                expect(tok.size() == 3 && (tok[1] == "area" || tok[1] == "volume"), "usage: measure area|volume NAME");
                MeasureDirective d{tok[1] == "area" ? MeasureKind::area : MeasureKind::volume, tok[2]};
                const auto& obj = require_defined(d.name);
                try {
                    (void)measure_object(obj, d.kind);
                } catch (const invalid_operation& e) {
                    throw parse_error(e.what());
                }
                scene.directives.emplace_back(std::move(d));
            } else if (kw == "render") {
                expect(tok.size() >= 2, "usage: render NAME ...");
                RenderDirective d;
                for (std::size_t i = 1; i < tok.size(); ++i) {
                    require_defined(tok[i]);
                    d.names.push_back(tok[i]);
                }
                scene.directives.emplace_back(std::move(d));
            } else {
                throw parse_error("unknown keyword '" + kw + "'");
            }
        } catch (const parse_error& e) {
            if (e.line() != 0) throw;
            throw parse_error(e.what(), line_no);
        } catch (const error& e) {
            throw parse_error(e.what(), line_no);
        }
    }
    return scene;
}

/// Text that parses back to an equal Scene.
inline std::string serialize_scene(const Scene& scene) {
    std::ostringstream out;
    auto emit_directive = [&out](const Directive& d) {
        std::visit(
            [&out](const auto& x) {
                using D = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<D, TransformDirective>) {
                    switch (x.op) {
                        case TransformOp::translate:
                            out << "translate " << x.source << " by " << format_vertex({"", x.offset}) << " as "
                                << x.target;
                            break;
                        case TransformOp::rotate:
                            out << "rotate " << x.source << " by " << x.angle.to_string() << " as " << x.target;
                            break;
                        case TransformOp::reflect_xy: out << "reflectxy " << x.source << " as " << x.target; break;
                    }
                } else if constexpr (std::is_same_v<D, MeasureDirective>) {
                    out << "measure " << (x.kind == MeasureKind::area ? "area " : "volume ") << x.name;
                } else {
                    out << "render";
                    for (const auto& n : x.names) out << ' ' << n;
                }
                out << '\n';
            },
            d);
    };

    out << "dim " << scene.dimension << '\n';
    // Derived objects appear in the same order as their transform directives,
    // so directives are flushed up to the one that produced each of them.
    std::size_t next = 0;
    for (const auto& o : scene.objects) {
        if (o.derived) {
            while (next < scene.directives.size()) {
                const auto& d = scene.directives[next++];
                emit_directive(d);
                if (std::holds_alternative<TransformDirective>(d)) break;
            }
            continue;
        }
        switch (o.kind) {
            case ObjectKind::point: {
                auto v = o.shape.vertices.front();
                if (v.label == o.name) v.label.clear();
                out << "point " << o.name << ' ' << format_vertex(v) << '\n';
                break;
            }
            case ObjectKind::polygon:
            case ObjectKind::polytope: {
                out << (o.kind == ObjectKind::polygon ? "polygon " : "polytope ") << o.name;
                for (const auto& v : o.shape.vertices) out << ' ' << format_vertex(v);
                if (o.kind == ObjectKind::polytope && !o.shape.edges.empty()) {
                    out << " edges ";
                    for (std::size_t i = 0; i < o.shape.edges.size(); ++i) {
                        if (i) out << ',';
                        out << o.shape.edges[i].first << '-' << o.shape.edges[i].second;
                    }
                }
                out << '\n';
                break;
            }
        }
    }
    while (next < scene.directives.size()) emit_directive(scene.directives[next++]);
    return out.str();
}

}  // namespace ratla
