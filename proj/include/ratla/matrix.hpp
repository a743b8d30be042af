#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace ratla {

using Vector = std::vector<Scalar>;

/**
 * Dense row-major matrix of exact scalars.
 *
 * Immutable after construction: every operation returns a new matrix.
 */
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows_ == 0 || cols_ == 0) throw shape_error("matrix must have at least one row and one column");
        if (entries_.size() != rows_ * cols_) {
            throw shape_error("expected " + std::to_string(rows_ * cols_) + " entries, got " +
                              std::to_string(entries_.size()));
        }
    }

    Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) : rows_(rows.size()) {
        if (rows_ == 0) throw shape_error("matrix must have at least one row and one column");
        cols_ = rows.begin()->size();
        for (const auto& row : rows) {
            if (row.size() != cols_) throw shape_error("ragged matrix rows");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
        if (cols_ == 0) throw shape_error("matrix must have at least one row and one column");
    }

    static Matrix zero(std::size_t rows, std::size_t cols) {
        return Matrix(rows, cols, std::vector<Scalar>(rows * cols));
    }

    static Matrix identity(std::size_t n) {
        std::vector<Scalar> e(n * n);
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
        return Matrix(n, n, std::move(e));
    }

    static Matrix from_rows(const std::vector<Vector>& rows) {
        if (rows.empty()) throw shape_error("matrix must have at least one row and one column");
        std::vector<Scalar> e;
        for (const auto& r : rows) {
            if (r.size() != rows.front().size()) throw shape_error("ragged matrix rows");
            e.insert(e.end(), r.begin(), r.end());
        }
        return Matrix(rows.size(), rows.front().size(), std::move(e));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const Scalar& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw index_error("matrix index out of range");
        return (*this)(i, j);
    }

    std::span<const Scalar> row(std::size_t i) const {
        if (i >= rows_) throw index_error("row index out of range");
        return {entries_.data() + i * cols_, cols_};
    }

    Vector column(std::size_t j) const {
        if (j >= cols_) throw index_error("column index out of range");
        Vector c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    const std::vector<Scalar>& entries() const noexcept { return entries_; }

    Scalar trace() const {
        if (!is_square()) throw shape_error("trace of a non-square matrix");
        Scalar t;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Textual form "a,b;c,d" with canonical scalars.
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) out += ';';
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) out += ',';
                out += (*this)(i, j).to_string();
            }
        }
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

/// Parses "a,b;c,d" (rows separated by ';', entries by ',').
inline Matrix parse_matrix(std::string_view text) {
    std::vector<Vector> rows;
    std::size_t start = 0;
    while (true) {
        auto end = text.find(';', start);
        auto row_text = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        Vector row;
        std::size_t cstart = 0;
        while (true) {
            auto cend = row_text.find(',', cstart);
            row.push_back(parse_scalar(row_text.substr(cstart, cend == std::string_view::npos ? std::string_view::npos
                                                                                              : cend - cstart)));
            if (cend == std::string_view::npos) break;
            cstart = cend + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw parse_error("matrix row " + std::to_string(rows.size() + 1) + " has " +
                              std::to_string(row.size()) + " entries, expected " +
                              std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return Matrix::from_rows(rows);
}

/// Row-by-column product.
inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw shape_error("cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " by " +
                          std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    std::vector<Scalar> out(a.rows() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Scalar sum;
            for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
            out[i * b.cols() + j] = std::move(sum);
        }
    }
    return Matrix(a.rows(), b.cols(), std::move(out));
}

inline Vector mat_vec(const Matrix& a, std::span<const Scalar> x) {
    if (a.cols() != x.size()) throw shape_error("vector length does not match matrix columns");
    Vector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * x[k];
    }
    return out;
}

inline Matrix transpose(const Matrix& a) {
    std::vector<Scalar> out(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out[j * a.rows() + i] = a(i, j);
    }
    return Matrix(a.cols(), a.rows(), std::move(out));
}

inline Matrix add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw shape_error("cannot add matrices of different shapes");
    std::vector<Scalar> out(a.entries());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += b.entries()[k];
    return Matrix(a.rows(), a.cols(), std::move(out));
}

inline Matrix scale(const Matrix& a, const Scalar& h) {
    std::vector<Scalar> out(a.entries());
    for (auto& e : out) e *= h;
    return Matrix(a.rows(), a.cols(), std::move(out));
}

/// Elementary row replacement R_target <- R_target + h * R_source (0-based rows).
inline Matrix row_replace(const Matrix& a, std::size_t target, std::size_t source, const Scalar& h) {
    if (target >= a.rows() || source >= a.rows()) throw index_error("row index out of range");
    if (target == source) throw invalid_operation("row replacement needs two distinct rows");
    std::vector<Scalar> out(a.entries());
    for (std::size_t j = 0; j < a.cols(); ++j) out[target * a.cols() + j] += h * a(source, j);
    return Matrix(a.rows(), a.cols(), std::move(out));
}

/// Exchanges two rows; the identity when `i == j`.
inline Matrix swap_rows(const Matrix& a, std::size_t i, std::size_t j) {
    if (i >= a.rows() || j >= a.rows()) throw index_error("row index out of range");
    std::vector<Scalar> out(a.entries());
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(out[i * a.cols() + c], out[j * a.cols() + c]);
    return Matrix(a.rows(), a.cols(), std::move(out));
}

}  // namespace ratla
