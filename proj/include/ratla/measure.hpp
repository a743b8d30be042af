#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "scalar.hpp"

namespace ratla {

/// Labeled point with exact coordinates.
template <std::size_t N>
struct Point {
    std::array<Scalar, N> coords{};
    std::string label;

    Point() = default;
    Point(std::array<Scalar, N> c, std::string l = {}) : coords(std::move(c)), label(std::move(l)) {}

    static constexpr std::size_t dimension = N;

    const Scalar& operator[](std::size_t i) const { return coords[i]; }
    Scalar& operator[](std::size_t i) { return coords[i]; }

    /// Coordinates only; labels do not take part in equality.
    friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
};

using Point2 = Point<2>;
using Point3 = Point<3>;

template <std::size_t N>
Point<N> operator-(const Point<N>& a, const Point<N>& b) {
    Point<N> r;
    for (std::size_t i = 0; i < N; ++i) r.coords[i] = a.coords[i] - b.coords[i];
    return r;
}

template <std::size_t N>
Point<N> operator+(const Point<N>& a, const Point<N>& b) {
    Point<N> r;
    for (std::size_t i = 0; i < N; ++i) r.coords[i] = a.coords[i] + b.coords[i];
    return r;
}

template <std::size_t N>
Scalar squared_distance(const Point<N>& a, const Point<N>& b) {
    Scalar s;
    for (std::size_t i = 0; i < N; ++i) {
        Scalar d = a.coords[i] - b.coords[i];
        s += d * d;
    }
    return s;
}

template <std::size_t N>
std::string to_string(const Point<N>& p) {
    std::string out = p.label + "(";
    for (std::size_t i = 0; i < N; ++i) {
        if (i) out += ',';
        out += p.coords[i].to_string();
    }
    return out + ")";
}

enum class MeasureKind { area, volume };

struct MeasureResult {
    Scalar value;         // |signed_value|
    Scalar signed_value;
    MeasureKind kind = MeasureKind::area;

    static MeasureResult from_signed(Scalar s, MeasureKind kind) {
        Scalar v = s.abs();
        return {std::move(v), std::move(s), kind};
    }
};

namespace detail {

inline Scalar cofactor_det(const Matrix& a, std::vector<std::size_t>& cols_left, std::size_t row) {
    if (cols_left.size() == 1) return a(row, cols_left.front());
    // Expand along `row` over the columns still in play.
    Scalar total;
    for (std::size_t k = 0; k < cols_left.size(); ++k) {
        std::size_t col = cols_left[k];
        const Scalar& entry = a(row, col);
        if (entry.is_zero()) continue;
        std::vector<std::size_t> minor_cols;
        minor_cols.reserve(cols_left.size() - 1);
        for (std::size_t m = 0; m < cols_left.size(); ++m) {
            if (m != k) minor_cols.push_back(cols_left[m]);
        }
        Scalar minor = cofactor_det(a, minor_cols, row + 1);
        if (k % 2 == 0) {
            total += entry * minor;
        } else {
            total -= entry * minor;
        }
    }
    return total;
}

}  // namespace detail

/**
 * Exact determinant by cofactor expansion along the first row.
 *
 * Orders 1 through 4 only.
 */
inline Scalar det(const Matrix& a) {
    if (!a.is_square()) throw shape_error("determinant of a non-square matrix");
    if (a.rows() > 4) throw shape_error("determinant supports order at most 4");
    std::vector<std::size_t> cols(a.cols());
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    return detail::cofactor_det(a, cols, 0);
}

inline MeasureResult parallelogram_area_from_vectors(const Point2& u, const Point2& v) {
    return MeasureResult::from_signed(det(Matrix{{u[0], u[1]}, {v[0], v[1]}}), MeasureKind::area);
}

/// Parallelogram with three of its vertices given, through the 3x3 determinant bordered by ones.
inline MeasureResult parallelogram_area_from_vertices(const Point2& a, const Point2& b, const Point2& c) {
    Matrix m{{a[0], a[1], 1}, {b[0], b[1], 1}, {c[0], c[1], 1}};
    return MeasureResult::from_signed(det(m), MeasureKind::area);
}

inline MeasureResult triangle_area(const Point2& a, const Point2& b, const Point2& c) {
    auto p = parallelogram_area_from_vertices(a, b, c);
    return MeasureResult::from_signed(p.signed_value / 2, MeasureKind::area);
}

inline MeasureResult parallelepiped_volume(const Point3& u, const Point3& v, const Point3& w) {
    Matrix m{{u[0], u[1], u[2]}, {v[0], v[1], v[2]}, {w[0], w[1], w[2]}};
    return MeasureResult::from_signed(det(m), MeasureKind::volume);
}

/// One sixth of the parallelepiped on the edge vectors DA, DB, DC.
inline MeasureResult tetrahedron_volume(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    auto p = parallelepiped_volume(a - d, b - d, c - d);
    return MeasureResult::from_signed(p.signed_value / 6, MeasureKind::volume);
}

}  // namespace ratla
