#ifndef RATWAVE_LAURENT_HPP
#define RATWAVE_LAURENT_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "ratwave/rational.hpp"

namespace ratwave {

/// Finitely supported Laurent polynomial sum_k c_k z^k over a scalar field.
///
/// Storage is a dense coefficient run starting at `lowest_exponent()`. The run
/// is trimmed after every operation, so the first and last stored
/// coefficients are nonzero and two polynomials are equal exactly when their
/// representations are equal. The zero polynomial has an empty run.
template <Scalar T>
class LaurentPoly {
public:
    using scalar_type = T;

    LaurentPoly() = default;

    LaurentPoly(const T& constant) : coeffs_{constant} { trim(); } // NOLINT: constants embed implicitly

    LaurentPoly(int lowest_exponent, std::vector<T> coefficients)
        : low_(lowest_exponent), coeffs_(std::move(coefficients)) {
        trim();
    }

    static LaurentPoly monomial(const T& c, int exponent) { return LaurentPoly(exponent, {c}); }

    bool is_zero() const { return coeffs_.empty(); }

    /// Lowest exponent with a nonzero coefficient. Zero polynomial: 0.
    int min_exp() const { return low_; }
    /// Highest exponent with a nonzero coefficient. Zero polynomial: -1, so
    /// that `max_exp() < min_exp()` identifies empty support.
    int max_exp() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }

    int lowest_exponent() const { return low_; }
    std::span<const T> coefficients() const { return coeffs_; }

    T coeff(int exponent) const {
        if (exponent < low_ || exponent > max_exp()) return T{};
        return coeffs_[static_cast<std::size_t>(exponent - low_)];
    }

    /// Member of P+ (no negative powers; zero counts).
    bool is_causal() const { return is_zero() || low_ >= 0; }

    T evaluate_at_one() const {
        T s{};
        for (const auto& c : coeffs_) s += c;
        return s;
    }

    T evaluate(const T& z) const {
        if (is_zero()) return T{};
        // Horner over the run, then scale by z^low.
        T acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        T zp = T(1);
        const int e = low_ < 0 ? -low_ : low_;
        for (int i = 0; i < e; ++i) zp = zp * z;
        return low_ < 0 ? acc / zp : acc * zp;
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = combine(*this, o, false); }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = combine(*this, o, true); }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, false); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return combine(a, b, true); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (ratwave::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return LaurentPoly(a.low_ + b.low_, std::move(out));
    }

    friend LaurentPoly operator*(const T& s, const LaurentPoly& p) { return p.scaled(s); }
    friend LaurentPoly operator*(const LaurentPoly& p, const T& s) { return p.scaled(s); }
    friend LaurentPoly operator/(const LaurentPoly& p, const T& s) { return p.scaled(T(1) / s); }

    LaurentPoly scaled(const T& s) const {
        LaurentPoly r = *this;
        for (auto& c : r.coeffs_) c = c * s;
        r.trim();
        return r;
    }

    /// Multiplication by z^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly r = *this;
        if (!r.is_zero()) r.low_ += k;
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
            if (ratwave::is_zero(p.coeffs_[i])) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << p.coeffs_[i] << ")";
            const int e = p.low_ + static_cast<int>(i);
            if (e != 0) os << "z^" << e;
        }
        return os;
    }

private:
    static LaurentPoly combine(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;
        const int lo = std::min(a.low_, b.low_);
        const int hi = std::max(a.max_exp(), b.max_exp());
        std::vector<T> out(static_cast<std::size_t>(hi - lo + 1));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[static_cast<std::size_t>(a.low_ - lo) + i] = a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            auto& slot = out[static_cast<std::size_t>(b.low_ - lo) + i];
            slot = subtract ? slot - b.coeffs_[i] : slot + b.coeffs_[i];
        }
        return LaurentPoly(lo, std::move(out));
    }

    void trim() {
        std::size_t first = 0;
        while (first < coeffs_.size() && ratwave::is_zero(coeffs_[first])) ++first;
        if (first == coeffs_.size()) {
            coeffs_.clear();
            low_ = 0;
            return;
        }
        std::size_t last = coeffs_.size();
        while (ratwave::is_zero(coeffs_[last - 1])) --last;
        coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(last), coeffs_.end());
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
        low_ += static_cast<int>(first);
    }

    int low_ = 0;
    std::vector<T> coeffs_;
};

/// Builds sum_k coeffs[k] z^k.
template <Scalar T>
LaurentPoly<T> causal_poly(std::vector<T> coeffs) {
    return LaurentPoly<T>(0, std::move(coeffs));
}

/// The adjoint p~(z) = sum_k c_k z^(-k); coefficients are real, so this is an
/// index reversal.
template <Scalar T>
LaurentPoly<T> tilde(const LaurentPoly<T>& p) {
    if (p.is_zero()) return {};
    auto c = p.coefficients();
    return LaurentPoly<T>(-p.max_exp(), std::vector<T>(c.rbegin(), c.rend()));
}

/// [p]^- : the terms with strictly negative exponents.
template <Scalar T>
LaurentPoly<T> neg_part(const LaurentPoly<T>& p) {
    if (p.is_zero() || p.min_exp() >= 0) return {};
    auto c = p.coefficients();
    const auto count = static_cast<std::size_t>(std::min(-p.min_exp(), static_cast<int>(c.size())));
    return LaurentPoly<T>(p.min_exp(), std::vector<T>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(count)));
}

/// [p]^+ : the terms with nonnegative exponents.
template <Scalar T>
LaurentPoly<T> pos_part(const LaurentPoly<T>& p) {
    return p - neg_part(p);
}

/// [p]^+_n : the terms with exponents 0..n.
template <Scalar T>
LaurentPoly<T> pos_part(const LaurentPoly<T>& p, int n) {
    std::vector<T> c;
    c.reserve(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) c.push_back(p.coeff(k));
    return LaurentPoly<T>(0, std::move(c));
}

/// Taylor coefficients of 1/p at the origin through degree n.
/// Requires p causal with p(0) != 0.
template <Scalar T>
LaurentPoly<T> series_inverse_trunc(const LaurentPoly<T>& p, int n) {
    if (!p.is_causal()) throw InvalidArgument("series_inverse_trunc: polynomial has negative powers");
    const T p0 = p.coeff(0);
    if (is_zero(p0)) throw ZeroConstantTerm("series_inverse_trunc: p(0) = 0");
    if (n < 0) return {};
    std::vector<T> r;
    r.reserve(static_cast<std::size_t>(n + 1));
    const int top = p.max_exp();
    for (int k = 0; k <= n; ++k) {
        T s = k == 0 ? T(1) : T{};
        for (int j = std::max(0, k - top); j < k; ++j) s -= p.coeff(k - j) * r[static_cast<std::size_t>(j)];
        r.push_back(s / p0);
    }
    return LaurentPoly<T>(0, std::move(r));
}

/// p(z) -> p(-z).
template <Scalar T>
LaurentPoly<T> substitute_neg_z(const LaurentPoly<T>& p) {
    if (p.is_zero()) return {};
    auto c = p.coefficients();
    std::vector<T> out(c.begin(), c.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int e = p.min_exp() + static_cast<int>(i);
        if (e % 2 != 0) out[i] = -out[i];
    }
    return LaurentPoly<T>(p.min_exp(), std::move(out));
}

/// Largest absolute coefficient; zero for the zero polynomial.
template <Scalar T>
T max_abs_coeff(const LaurentPoly<T>& p) {
    T m{};
    for (const auto& c : p.coefficients()) m = std::max(m, abs_value(c));
    return m;
}

/// Whether p lies in P_n^+ (exponents 0..n).
template <Scalar T>
bool in_causal_range(const LaurentPoly<T>& p, int n) {
    return p.is_zero() || (p.min_exp() >= 0 && p.max_exp() <= n);
}

template <Scalar To, Scalar From>
LaurentPoly<To> convert_poly(const LaurentPoly<From>& p) {
    std::vector<To> c;
    for (const auto& x : p.coefficients()) c.push_back(convert_scalar<To>(x));
    return LaurentPoly<To>(p.lowest_exponent(), std::move(c));
}

} // namespace ratwave

#endif // RATWAVE_LAURENT_HPP
