#ifndef RATWAVE_RATIONAL_HPP
#define RATWAVE_RATIONAL_HPP

#include <cmath>
#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/gmp.hpp>

#include "ratwave/errors.hpp"

namespace ratwave {

using BigInt = boost::multiprecision::mpz_int;

/// Arbitrary-precision fraction, always kept reduced with a positive
/// denominator (zero is 0/1).
class BigRational {
public:
    using backend_type = boost::multiprecision::mpq_rational;

    BigRational() = default;

    template <std::integral I>
    BigRational(I n) : v_(n) {} // NOLINT: implicit by design of the scalar concept

    BigRational(const BigInt& n) : v_(n) {} // NOLINT

    BigRational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DivisionByZero("BigRational: zero denominator");
        v_ = backend_type(num, den);
    }

    /// Exact value of a finite binary double.
    static BigRational from_double(double x) {
        if (!std::isfinite(x)) throw InvalidArgument("BigRational::from_double: non-finite value");
        BigRational r;
        r.v_ = backend_type(x);
        return r;
    }

    /// Accepts "p", "p/q" and plain decimal notation ("-0.125", "3e-2").
    static BigRational parse(std::string_view text) {
        if (text.empty()) throw ParseError("empty rational literal");
        const auto slash = text.find('/');
        if (slash != std::string_view::npos) {
            const BigInt num = parse_integer(text.substr(0, slash), text);
            const BigInt den = parse_integer(text.substr(slash + 1), text);
            if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
            return BigRational(num, den);
        }
        return parse_decimal(text);
    }

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    int sign() const { return v_.sign(); }
    bool is_zero() const { return v_.sign() == 0; }
    bool is_integer() const { return denominator() == 1; }

    double to_double() const { return v_.convert_to<double>(); }

    std::string str() const {
        if (is_integer()) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

    const backend_type& backend() const { return v_; }

    BigRational operator-() const {
        BigRational r;
        r.v_ = -v_;
        return r;
    }

    BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
    BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
    BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
    BigRational& operator/=(const BigRational& o) {
        if (o.is_zero()) throw DivisionByZero("BigRational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
        const int c = a.v_.compare(b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.str(); }

private:
    // The string constructor treats a leading 0 as an octal prefix.
    static BigInt decimal_digits(std::string_view d) {
        const auto first = d.find_first_not_of('0');
        return first == std::string_view::npos ? BigInt(0) : BigInt(std::string(d.substr(first)));
    }

    static BigInt parse_integer(std::string_view digits, std::string_view whole) {
        std::size_t i = 0;
        bool negative = false;
        if (i < digits.size() && (digits[i] == '+' || digits[i] == '-')) negative = digits[i++] == '-';
        if (i == digits.size()) throw ParseError("malformed rational '" + std::string(whole) + "'");
        for (std::size_t j = i; j < digits.size(); ++j)
            if (digits[j] < '0' || digits[j] > '9')
                throw ParseError("malformed rational '" + std::string(whole) + "'");
        const BigInt v = decimal_digits(digits.substr(i));
        return negative ? BigInt(-v) : v;
    }

    static BigRational parse_decimal(std::string_view text) {
        std::string_view mantissa = text;
        long long exponent = 0;
        const auto e = text.find_first_of("eE");
        if (e != std::string_view::npos) {
            mantissa = text.substr(0, e);
            const BigInt ex = parse_integer(text.substr(e + 1), text);
            if (boost::multiprecision::abs(ex) > 4096) throw ParseError("exponent out of range in '" + std::string(text) + "'");
            exponent = ex.convert_to<long long>();
        }
        std::string digits;
        bool negative = false;
        std::size_t i = 0;
        if (i < mantissa.size() && (mantissa[i] == '+' || mantissa[i] == '-')) negative = mantissa[i++] == '-';
        bool seen_point = false;
        bool seen_digit = false;
        for (; i < mantissa.size(); ++i) {
            const char c = mantissa[i];
            if (c == '.' && !seen_point) {
                seen_point = true;
            } else if (c >= '0' && c <= '9') {
                digits.push_back(c);
                seen_digit = true;
                if (seen_point) --exponent;
            } else {
                throw ParseError("malformed rational '" + std::string(text) + "'");
            }
        }
        if (!seen_digit) throw ParseError("malformed rational '" + std::string(text) + "'");
        BigInt num = decimal_digits(digits);
        if (negative) num = -num;
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
        return exponent < 0 ? BigRational(num, scale) : BigRational(num * scale);
    }

    backend_type v_;
};

inline BigRational abs(const BigRational& r) { return r.sign() < 0 ? -r : r; }

/// Default absolute tolerance for float-mode coefficient comparisons.
inline constexpr double kDefaultTolerance = 1e-12;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<BigRational> {
    static constexpr bool exact = true;
    static constexpr std::string_view field_name = "rational";
    static bool is_zero(const BigRational& x) { return x.is_zero(); }
    static BigRational abs(const BigRational& x) { return ratwave::abs(x); }
    static double to_double(const BigRational& x) { return x.to_double(); }
    static std::string to_string(const BigRational& x) { return x.str(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr std::string_view field_name = "float64";
    static bool is_zero(double x) { return x == 0.0; }
    static double abs(double x) { return std::fabs(x); }
    static double to_double(double x) { return x; }
    static std::string to_string(double x);
};

/// The two coefficient fields the library computes over.
template <class T>
concept Scalar = std::regular<T> && std::totally_ordered<T> && requires(const T& a, const T& b) {
    { scalar_traits<T>::exact } -> std::convertible_to<bool>;
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
};

template <Scalar T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

template <Scalar T>
bool is_zero(const T& x) { return scalar_traits<T>::is_zero(x); }

template <Scalar T>
T abs_value(const T& x) { return scalar_traits<T>::abs(x); }

template <Scalar T>
double to_double(const T& x) { return scalar_traits<T>::to_double(x); }

/// A residual is acceptable when it is exactly zero (exact mode) or within
/// `tol` (float mode).
template <Scalar T>
bool residual_ok(const T& residual, double tol = kDefaultTolerance) {
    if constexpr (is_exact_v<T>) return is_zero(residual);
    else return std::fabs(residual) <= tol;
}

/// Conversion between the two fields. Float to rational is exact.
template <Scalar To, Scalar From>
To convert_scalar(const From& x) {
    if constexpr (std::same_as<To, From>) return x;
    else if constexpr (std::same_as<To, double>) return to_double(x);
    else return BigRational::from_double(x);
}

} // namespace ratwave

#include <cstdio>

namespace ratwave {

inline std::string scalar_traits<double>::to_string(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Decimal rendering with `digits` significant digits, locale independent.
template <Scalar T>
std::string decimal_string(const T& x, int digits = 15) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, to_double(x));
    return buf;
}

} // namespace ratwave

#endif // RATWAVE_RATIONAL_HPP
