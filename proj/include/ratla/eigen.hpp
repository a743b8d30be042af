#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "measure.hpp"
#include "scalar.hpp"

namespace ratla {

/// Polynomial with exact coefficients, lowest degree first.
class Polynomial {
public:
    Polynomial() : coeffs_{Scalar()} {}
    explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.emplace_back();
        trim();
    }

    /// Monic linear factor (x - root).
    static Polynomial linear_factor(const Scalar& root) { return Polynomial({-root, Scalar(1)}); }

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0].is_zero(); }
    const Scalar& coefficient(std::size_t i) const { return coeffs_.at(i); }
    const Scalar& leading() const { return coeffs_.back(); }
    const std::vector<Scalar>& coefficients() const noexcept { return coeffs_; }

    Scalar operator()(const Scalar& x) const {
        Scalar acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double operator()(double x) const {
        long double acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
        return static_cast<double>(acc);
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(out));
    }

    /// Quotient by (x - root); the remainder must be zero.
    Polynomial deflate(const Scalar& root) const {
        if (degree() == 0) throw invalid_operation("cannot deflate a constant polynomial");
        std::vector<Scalar> q(degree());
        Scalar carry;
        for (std::size_t k = degree(); k >= 1; --k) {
            carry = coeffs_[k] + carry * root;
            q[k - 1] = carry;
        }
        if (!(coeffs_[0] + carry * root).is_zero()) throw invalid_operation("deflation by a non-root");
        return Polynomial(std::move(q));
    }

    /// Human-readable form in the variable `var`, e.g. "-x^3 + 4x^2 - 41/9x + 14/9".
    std::string to_string(const std::string& var = "x") const {
        std::string out;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const Scalar& c = coeffs_[k];
            if (c.is_zero() && !(k == 0 && out.empty())) continue;
            Scalar mag = c.abs();
            if (out.empty()) {
                if (c.sign() < 0) out += "-";
            } else {
                out += c.sign() < 0 ? " - " : " + ";
            }
            bool unit = mag == Scalar(1) && k > 0;
            if (!unit) out += mag.to_string();
            if (k >= 1) out += var;
            if (k >= 2) out += "^" + std::to_string(k);
        }
        return out;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Scalar> coeffs_;
};

/**
 * Characteristic polynomial p(x) = det(A - xI) of a 2x2 or 3x3 matrix.
 *
 * The leading coefficient is (-1)^n and p(0) = det(A).
 */
struct CharPoly {
    Polynomial poly;

    std::size_t degree() const { return poly.degree(); }
    const Scalar& coefficient(std::size_t i) const { return poly.coefficient(i); }
    Scalar operator()(const Scalar& x) const { return poly(x); }
    double operator()(double x) const { return poly(x); }
};

inline CharPoly char_poly(const Matrix& a) {
    if (!a.is_square() || a.rows() < 2 || a.rows() > 3) {
        throw shape_error("characteristic polynomial needs a square matrix of order 2 or 3");
    }
    const Scalar tr = a.trace();
    const Scalar d = det(a);
    if (a.rows() == 2) return {Polynomial({d, -tr, Scalar(1)})};

    // Sum of the principal 2x2 minors.
    Scalar m2 = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) + (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) +
                (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1));
    return {Polynomial({d, -m2, tr, Scalar(-1)})};
}

struct RationalRoot {
    Scalar value;
    unsigned multiplicity = 1;
};

struct RationalRoots {
    std::vector<RationalRoot> roots;  // ascending
    Polynomial remaining;             // no rational roots left
};

namespace detail {

inline BigInt gcd(BigInt a, BigInt b) {
    a = boost::multiprecision::abs(a);
    b = boost::multiprecision::abs(b);
    while (b != 0) {
        BigInt t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / gcd(a, b) * b);
}

inline std::vector<BigInt> positive_divisors(BigInt n) {
    n = boost::multiprecision::abs(n);
    std::vector<BigInt> small;
    std::vector<BigInt> large;
    for (BigInt i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            small.push_back(i);
            if (i * i != n) large.push_back(n / i);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Integer coefficients with the same roots, content removed.
inline std::vector<BigInt> primitive_integer_coefficients(const Polynomial& p) {
    BigInt common = 1;
    for (const auto& c : p.coefficients()) common = lcm(common, c.denominator());
    std::vector<BigInt> ints;
    BigInt content = 0;
    for (const auto& c : p.coefficients()) {
        ints.push_back(c.numerator() * (common / c.denominator()));
        content = gcd(content, ints.back());
    }
    if (content > 1) {
        for (auto& v : ints) v /= content;
    }
    return ints;
}

}  // namespace detail

/**
 * Extracts every rational root by the rational root theorem.
 *
 * Candidates are +-d/e with d dividing the constant term and e dividing the
 * leading term of the denominator-cleared polynomial. Each root found is
 * deflated out, so `remaining * prod (x - r)^m` reproduces `p` exactly.
 */
inline RationalRoots rational_roots(const Polynomial& p) {
    RationalRoots out;
    Polynomial rest = p;
    if (rest.is_zero()) return {{}, rest};

    auto record = [&](const Scalar& r) {
        unsigned m = 0;
        while (rest.degree() > 0 && rest(r).is_zero()) {
            rest = rest.deflate(r);
            ++m;
        }
        if (m > 0) out.roots.push_back({r, m});
    };

    record(Scalar(0));
    if (rest.degree() > 0) {
        auto ints = detail::primitive_integer_coefficients(rest);
        auto numerators = detail::positive_divisors(ints.front());
        auto denominators = detail::positive_divisors(ints.back());
        for (const auto& q : denominators) {
            for (const auto& n : numerators) {
                if (rest.degree() == 0) break;
                if (detail::gcd(n, q) != 1) continue;
                record(Scalar(n, q));
                record(Scalar(BigInt(-n), q));
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const RationalRoot& a, const RationalRoot& b) { return a.value < b.value; });
    out.remaining = std::move(rest);
    return out;
}

inline RationalRoots rational_roots(const CharPoly& p) { return rational_roots(p.poly); }

struct NumericRoot {
    double real = 0;
    double imag = 0;
    bool is_real = true;
};

namespace detail {

/// Newton refinement in extended precision; keeps the start if it does not improve.
inline double polish_root(const Polynomial& p, double x) {
    std::vector<long double> c;
    for (const auto& s : p.coefficients()) c.push_back(static_cast<long double>(s.to_double()));
    auto eval = [&](long double t, long double& deriv) {
        long double v = 0;
        deriv = 0;
        for (std::size_t k = c.size(); k-- > 0;) {
            deriv = deriv * t + v;
            v = v * t + c[k];
        }
        return v;
    };
    long double t = x;
    long double d = 0;
    long double best_val = std::fabs(eval(t, d));
    long double best = t;
    for (int iter = 0; iter < 8; ++iter) {
        long double v = eval(t, d);
        if (d == 0) break;
        t -= v / d;
        long double nv = std::fabs(eval(t, d));
        if (nv < best_val) {
            best_val = nv;
            best = t;
        }
        if (nv == 0) break;
    }
    return static_cast<double>(best);
}

}  // namespace detail

/**
 * Closed-form roots of a polynomial of degree at most 3.
 *
 * Quadratics use the cancellation-free quadratic formula; cubics are reduced
 * to t^3 + pt + q and solved trigonometrically when all three roots are real,
 * by Cardano otherwise. Real roots are polished by Newton steps. Results are
 * ordered by real part, ascending.
 */
inline std::vector<NumericRoot> numeric_roots(const Polynomial& poly) {
    if (poly.degree() > 3) throw shape_error("numeric roots support degree at most 3");
    std::vector<NumericRoot> roots;
    const auto deg = poly.degree();
    if (deg == 0) return roots;

    const double lead = poly.leading().to_double();
    auto c = [&](std::size_t i) { return poly.coefficient(i).to_double() / lead; };

    if (deg == 1) {
        roots.push_back({-c(0), 0, true});
    } else if (deg == 2) {
        const double b = c(1);
        const double cc = c(0);
        const double disc = b * b - 4 * cc;
        if (disc >= 0) {
            const double s = std::sqrt(disc);
            const double q = -0.5 * (b + std::copysign(s, b));
            if (q == 0) {
                roots.push_back({0, 0, true});
                roots.push_back({0, 0, true});
            } else {
                roots.push_back({q, 0, true});
                roots.push_back({cc / q, 0, true});
            }
        } else {
            const double im = std::sqrt(-disc) / 2;
            roots.push_back({-b / 2, -im, false});
            roots.push_back({-b / 2, im, false});
        }
    } else {
        const double b = c(2);
        const double cc = c(1);
        const double d = c(0);
        const double shift = b / 3;
        const double p = cc - b * b / 3;
        const double q = 2 * b * b * b / 27 - b * cc / 3 + d;
        const double half_q = q / 2;
        const double third_p = p / 3;
        const double disc = half_q * half_q + third_p * third_p * third_p;
        const double scale = std::max({std::fabs(half_q * half_q), std::fabs(third_p * third_p * third_p), 1e-300});
        constexpr double tol = 1e-12;

        if (disc > tol * scale) {
            const double s = std::sqrt(disc);
            const double u = std::cbrt(-half_q + s);
            const double v = std::cbrt(-half_q - s);
            roots.push_back({u + v - shift, 0, true});
            const double re = -(u + v) / 2 - shift;
            const double im = (u - v) * std::sqrt(3.0) / 2;
            roots.push_back({re, -std::fabs(im), false});
            roots.push_back({re, std::fabs(im), false});
        } else if (std::fabs(third_p) <= 1e-12 * std::max(1.0, b * b)) {
            const double t = std::cbrt(-q);
            for (int k = 0; k < 3; ++k) roots.push_back({t - shift, 0, true});
        } else {
            const double r = 2 * std::sqrt(-third_p);
            double arg = (3 * q) / (2 * p) * std::sqrt(-3 / p);
            arg = std::clamp(arg, -1.0, 1.0);
            const double phi = std::acos(arg) / 3;
            for (int k = 0; k < 3; ++k) {
                roots.push_back({r * std::cos(phi - 2 * std::numbers::pi * k / 3) - shift, 0, true});
            }
        }
    }

    for (auto& r : roots) {
        if (r.is_real) r.real = detail::polish_root(poly, r.real);
    }
    std::sort(roots.begin(), roots.end(), [](const NumericRoot& a, const NumericRoot& b) {
        return a.real != b.real ? a.real < b.real : a.imag < b.imag;
    });
    return roots;
}

inline std::vector<NumericRoot> numeric_roots(const CharPoly& p) { return numeric_roots(p.poly); }

/// |p(x)| relative to the size of the terms summed to evaluate it.
inline double relative_residual(const Polynomial& p, double x) {
    long double value = 0;
    long double magnitude = 0;
    long double power = 1;
    for (const auto& c : p.coefficients()) {
        long double term = static_cast<long double>(c.to_double()) * power;
        value += term;
        magnitude += std::fabs(term);
        power *= x;
    }
    if (magnitude == 0) return 0;
    return static_cast<double>(std::fabs(value) / magnitude);
}

namespace detail {

/// Scales to coprime integers with the first nonzero entry positive.
inline Vector normalize_integer_vector(Vector v) {
    BigInt common = 1;
    for (const auto& x : v) common = lcm(common, x.denominator());
    BigInt content = 0;
    for (auto& x : v) {
        x *= Scalar(common);
        content = gcd(content, x.numerator());
    }
    if (content == 0) return v;
    int lead_sign = 1;
    for (const auto& x : v) {
        if (!x.is_zero()) {
            lead_sign = x.sign();
            break;
        }
    }
    Scalar divisor(lead_sign < 0 ? BigInt(-content) : content);
    for (auto& x : v) x /= divisor;
    return v;
}

/// Row echelon form over the integers: rows combined by cross-multiplication, then divided by their content.
inline std::vector<std::vector<BigInt>> integer_echelon(std::vector<std::vector<BigInt>> rows,
                                                        std::vector<std::size_t>& pivot_cols) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t pivot = r;
        while (pivot < m && rows[pivot][col] == 0) ++pivot;
        if (pivot == m) continue;
        std::swap(rows[r], rows[pivot]);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (rows[i][col] == 0) continue;
            const BigInt a = rows[r][col];
            const BigInt b = rows[i][col];
            BigInt content = 0;
            for (std::size_t j = 0; j < n; ++j) {
                rows[i][j] = a * rows[i][j] - b * rows[r][j];
                content = gcd(content, rows[i][j]);
            }
            if (content > 1) {
                for (auto& x : rows[i]) x /= content;
            }
        }
        pivot_cols.push_back(col);
        ++r;
    }
    rows.resize(r);
    return rows;
}

}  // namespace detail

/**
 * Basis of the null space of A - lambda*I.
 *
 * Rows are cleared to integers and reduced by fraction-free elimination; one
 * basis vector per free column, each normalized to coprime integers with a
 * positive leading entry.
 */
inline std::vector<Vector> null_space(const Matrix& a) {
    std::vector<std::vector<BigInt>> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BigInt common = 1;
        for (const auto& x : a.row(i)) common = detail::lcm(common, x.denominator());
        std::vector<BigInt> row;
        for (const auto& x : a.row(i)) row.push_back(x.numerator() * (common / x.denominator()));
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> pivots;
    auto echelon = detail::integer_echelon(std::move(rows), pivots);

    std::vector<Vector> basis;
    const std::size_t n = a.cols();
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        Vector x(n);
        x[free] = 1;
        for (std::size_t r = echelon.size(); r-- > 0;) {
            const std::size_t p = pivots[r];
            Scalar sum;
            for (std::size_t j = p + 1; j < n; ++j) sum += Scalar(echelon[r][j]) * x[j];
            x[p] = -sum / Scalar(echelon[r][p]);
        }
        basis.push_back(detail::normalize_integer_vector(std::move(x)));
    }
    return basis;
}

inline Matrix shifted(const Matrix& a, const Scalar& lambda) {
    std::vector<Scalar> e(a.entries());
    for (std::size_t i = 0; i < a.rows(); ++i) e[i * a.cols() + i] -= lambda;
    return Matrix(a.rows(), a.cols(), std::move(e));
}

/// Eigenspace basis for an exact eigenvalue of a 2x2 or 3x3 matrix.
inline std::vector<Vector> eigenspace(const Matrix& a, const Scalar& lambda) {
    const auto p = char_poly(a);
    if (!p(lambda).is_zero()) throw not_an_eigenvalue(lambda.to_string() + " is not an eigenvalue");
    return null_space(shifted(a, lambda));
}

/// Eigenvalue that is either exact or a floating-point approximation.
struct Eigenvalue {
    bool exact = true;
    Scalar value;         // meaningful when exact
    double approx = 0.0;  // always set

    static Eigenvalue exact_value(Scalar v) {
        double d = v.to_double();
        return {true, std::move(v), d};
    }
    static Eigenvalue approximate(double v) { return {false, Scalar(), v}; }

    std::string to_string(unsigned places = 6) const {
        if (exact) return value.to_string();
        return "~" + Scalar::from_double(approx).to_decimal(places);
    }
};

struct EigenPair {
    Eigenvalue eigenvalue;
    std::vector<Vector> basis;
    unsigned algebraic_multiplicity = 1;

    std::size_t geometric_multiplicity() const { return basis.size(); }
};

struct Spectrum {
    CharPoly poly;
    std::vector<EigenPair> pairs;             // real eigenvalues, descending
    std::vector<NumericRoot> complex_roots;   // excluded from eigenspace extraction
};

namespace detail {

/// Null space of A - lambda*I in floating point, unit-length vectors.
inline std::vector<Vector> approximate_null_space(const Matrix& a, double lambda) {
    const std::size_t n = a.rows();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = a(i, j).to_double() - (i == j ? lambda : 0.0);
            norm = std::max(norm, std::fabs(m[i][j]));
        }
    }
    const double tol = 1e-9 * std::max(norm, 1.0);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < n; ++col) {
        std::size_t best = r;
        for (std::size_t i = r; i < n; ++i) {
            if (std::fabs(m[i][col]) > std::fabs(m[best][col])) best = i;
        }
        if (std::fabs(m[best][col]) <= tol) continue;
        std::swap(m[r], m[best]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r) continue;
            const double f = m[i][col] / m[r][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        std::vector<double> x(n, 0.0);
        x[free] = 1.0;
        for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -m[k][free] / m[k][pivots[k]];
        double len = 0;
        for (double v : x) len += v * v;
        len = std::sqrt(len);
        double lead = 0;
        for (double v : x) {
            if (std::fabs(v) > tol) {
                lead = v;
                break;
            }
        }
        Vector out;
        for (double v : x) out.push_back(Scalar::from_double((lead < 0 ? -v : v) / len));
        basis.push_back(std::move(out));
    }
    return basis;
}

}  // namespace detail

/**
 * Full real spectrum of a 2x2 or 3x3 matrix.
 *
 * Rational eigenvalues are exact with exact eigenspaces; irrational real ones
 * carry floating-point bases; complex roots are reported separately.
 */
inline Spectrum eigen_decompose(const Matrix& a) {
    Spectrum s{char_poly(a), {}, {}};
    auto exact = rational_roots(s.poly);
    for (const auto& root : exact.roots) {
        s.pairs.push_back({Eigenvalue::exact_value(root.value), null_space(shifted(a, root.value)), root.multiplicity});
    }
    for (const auto& r : numeric_roots(exact.remaining)) {
        if (!r.is_real) {
            s.complex_roots.push_back(r);
            continue;
        }
        s.pairs.push_back({Eigenvalue::approximate(r.real), detail::approximate_null_space(a, r.real), 1});
    }
    std::sort(s.pairs.begin(), s.pairs.end(),
              [](const EigenPair& x, const EigenPair& y) { return x.eigenvalue.approx > y.eigenvalue.approx; });
    return s;
}

/// All eigenvalues in floating point, straight from the closed-form roots of the characteristic polynomial.
inline std::vector<NumericRoot> float_eigenvalues(const Matrix& a) { return numeric_roots(char_poly(a)); }

}  // namespace ratla
