#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace ratla {

using BigInt = boost::multiprecision::cpp_int;

/**
 * Exact rational number with unbounded numerator and denominator.
 *
 * Always stored reduced with a positive denominator; zero is 0/1.
 */
class Scalar {
public:
    using rational_type = boost::multiprecision::cpp_rational;

    Scalar() = default;
    Scalar(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Scalar(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Scalar(long long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    explicit Scalar(const BigInt& value) : value_(value) {}

    Scalar(BigInt numerator, BigInt denominator) {
        if (denominator == 0) throw division_by_zero();
        if (denominator < 0) {
            numerator = -numerator;
            denominator = -denominator;
        }
        value_ = rational_type(numerator, denominator);
    }

    /// Exact value of a finite double (every finite double is a dyadic rational).
    static Scalar from_double(double x) {
        if (!std::isfinite(x)) throw domain_error("cannot represent a non-finite value exactly");
        if (x == 0.0) return Scalar();
        int exponent = 0;
        double mantissa = std::frexp(x, &exponent);
        // 53 significant bits: mantissa * 2^53 is an integer.
        auto bits = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
        exponent -= 53;
        BigInt num(bits);
        BigInt den(1);
        if (exponent >= 0) {
            num <<= exponent;
        } else {
            den <<= -exponent;
        }
        return Scalar(num, den);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(value_); }
    BigInt denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return value_.sign(); }

    double to_double() const { return value_.convert_to<double>(); }

    /// Canonical form: "p/q", or "p" when the denominator is one.
    std::string to_string() const {
        if (is_integer()) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

    /// Fixed-point rendering with `places` decimals, rounding half to even.
    std::string to_decimal(unsigned places) const {
        BigInt scale = 1;
        for (unsigned i = 0; i < places; ++i) scale *= 10;
        BigInt num = boost::multiprecision::abs(numerator()) * scale;
        BigInt den = denominator();
        BigInt quotient = num / den;
        BigInt twice_rem = (num % den) * 2;
        if (twice_rem > den || (twice_rem == den && (quotient & 1) != 0)) quotient += 1;

        std::string digits = quotient.str();
        if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
        std::string out;
        if (sign() < 0 && quotient != 0) out += '-';
        out += digits.substr(0, digits.size() - places);
        if (places > 0) {
            out += '.';
            out += digits.substr(digits.size() - places);
        }
        return out;
    }

    Scalar abs() const { return Scalar(rational_type(boost::multiprecision::abs(value_))); }
    Scalar reciprocal() const {
        if (is_zero()) throw division_by_zero();
        return Scalar(denominator(), numerator());
    }

    Scalar operator-() const { return Scalar(rational_type(-value_)); }
    Scalar& operator+=(const Scalar& rhs) { value_ += rhs.value_; return *this; }
    Scalar& operator-=(const Scalar& rhs) { value_ -= rhs.value_; return *this; }
    Scalar& operator*=(const Scalar& rhs) { value_ *= rhs.value_; return *this; }
    Scalar& operator/=(const Scalar& rhs) {
        if (rhs.is_zero()) throw division_by_zero();
        value_ /= rhs.value_;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

    const rational_type& raw() const { return value_; }

private:
    explicit Scalar(rational_type value) : value_(std::move(value)) {}

    rational_type value_{0};
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

// cpp_int reads a leading zero as an octal prefix, so strip them first.
inline BigInt decimal_integer(std::string_view digits) {
    auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return BigInt(0);
    return BigInt(std::string(digits.substr(first)));
}

}  // namespace detail

/**
 * Parses "[+-]digits[.digits]" or "[+-]p/q" into an exact Scalar.
 *
 * Decimals are read as base-10 fractions, so "10.1" is exactly 101/10.
 */
inline Scalar parse_scalar(std::string_view text) {
    std::string_view s = detail::trim(text);
    const std::string original(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Scalar result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto p = s.substr(0, slash);
        auto q = s.substr(slash + 1);
        if (!detail::all_digits(p) || !detail::all_digits(q)) {
            throw parse_error("malformed number '" + original + "'");
        }
        BigInt den = detail::decimal_integer(q);
        if (den == 0) throw division_by_zero();
        result = Scalar(detail::decimal_integer(p), den);
    } else {
        auto dot = s.find('.');
        auto int_part = s.substr(0, dot);
        std::string_view frac_part;
        if (dot != std::string_view::npos) {
            frac_part = s.substr(dot + 1);
            if (!detail::all_digits(frac_part)) throw parse_error("malformed number '" + original + "'");
        }
        if (!detail::all_digits(int_part)) throw parse_error("malformed number '" + original + "'");
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
        result = Scalar(detail::decimal_integer(std::string(int_part) + std::string(frac_part)), den);
    }
    return negative ? -result : result;
}

}  // namespace ratla
