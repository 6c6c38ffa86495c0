#ifndef RATWAVE_TESTS_ORACLES_HPP
#define RATWAVE_TESTS_ORACLES_HPP

// Test-only reference computations. Nothing here calls into the library
// code path it is used to check.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "ratwave/rational.hpp"

namespace oracle {

using ratwave::BigInt;
using ratwave::BigRational;

/// Deterministic generator for property tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    long integer(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(eng_() % span);
    }

    /// p/q with |p| <= max_num, 1 <= q <= max_den.
    BigRational rational(long max_num, long max_den) { return BigRational(integer(-max_num, max_num), integer(1, max_den)); }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 eng_;
};

inline std::vector<BigRational> parse_all(const std::vector<std::string_view>& v) {
    std::vector<BigRational> out;
    for (auto s : v) out.push_back(BigRational::parse(s));
    return out;
}

/// Scaling row -> wavelet row from the interleaved layout, written directly
/// from the index formulas h1[2k] = -b_{N-1-k}, h1[2k+1] = a_{N-1-k}.
template <class T>
std::vector<T> wavelet_row(const std::vector<T>& h0) {
    const std::size_t n = h0.size() / 2;
    std::vector<T> h1(h0.size());
    for (std::size_t k = 0; k < n; ++k) {
        const T a = h0[2 * (n - 1 - k)];
        const T b = h0[2 * (n - 1 - k) + 1];
        h1[2 * k] = -b;
        h1[2 * k + 1] = a;
    }
    return h1;
}

/// Every shifted inner product sum_k x[k + 2r] y[k + 2s] over a window of
/// shifts wide enough to cover all overlaps; returns the largest deviation
/// from 2 delta_xy delta_rs.
template <class T>
T brute_force_orthogonality_defect(const std::vector<T>& h0) {
    const auto h1 = wavelet_row(h0);
    const std::vector<const std::vector<T>*> rows{&h0, &h1};
    const long len = static_cast<long>(h0.size());
    auto tap = [len](const std::vector<T>& h, long k) { return k < 0 || k >= len ? T{} : h[static_cast<std::size_t>(k)]; };
    T worst{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (long r = -len; r <= len; ++r)
                for (long s = -len; s <= len; ++s) {
                    T sum{};
                    for (long k = -3 * len; k <= 3 * len; ++k)
                        sum += tap(*rows[static_cast<std::size_t>(i)], k + 2 * r) * tap(*rows[static_cast<std::size_t>(j)], k + 2 * s);
                    if (i == j && r == s) sum -= T(2);
                    const T mag = sum < T{} ? -sum : sum;
                    if (worst < mag) worst = mag;
                }
    return worst;
}

/// Genus-2 taps for phi = -(p/q) z^-1, from a hand solve of the 2x2 system.
inline std::vector<BigRational> genus2_closed_form(const BigInt& p, const BigInt& q) {
    const BigInt d = p * p + q * q;
    return {BigRational(q * q - p * q, d), BigRational(q * q + p * q, d), BigRational(p * p + p * q, d),
            BigRational(p * p - p * q, d)};
}

/// Smallest-denominator fraction in [x - eps, x + eps] (smallest |p| among
/// ties) by scanning denominators upward.
inline BigRational scan_simplest(const BigRational& x, const BigRational& eps, long max_q) {
    const BigRational lo = x - eps;
    const BigRational hi = x + eps;
    for (long q = 1; q <= max_q; ++q) {
        std::vector<BigRational> hits;
        const BigRational lq = lo * BigRational(q);
        BigInt p = lq.numerator() / lq.denominator() - 1;
        for (; BigRational(p, q) <= hi; ++p)
            if (BigRational(p, q) >= lo) hits.emplace_back(p, q);
        if (!hits.empty()) {
            BigRational best = hits.front();
            for (const auto& h : hits)
                if (ratwave::abs(h) < ratwave::abs(best)) best = h;
            return best;
        }
    }
    return x;
}

/// Closest fraction with denominator <= max_q by exhaustive scan; ties go
/// to smaller |p|.
inline BigRational scan_bounded(const BigRational& x, long max_q) {
    BigRational best;
    bool have = false;
    for (long q = 1; q <= max_q; ++q) {
        const BigRational xq = x * BigRational(q);
        BigInt fl = xq.numerator() / xq.denominator();
        for (BigInt p = fl - 1; p <= fl + 1; ++p) {
            const BigRational c(p, q);
            if (!have) {
                best = c;
                have = true;
                continue;
            }
            const auto dc = ratwave::abs(c - x);
            const auto db = ratwave::abs(best - x);
            if (dc < db || (dc == db && ratwave::abs(c) < ratwave::abs(best))) best = c;
        }
    }
    return best;
}

} // namespace oracle

#endif // RATWAVE_TESTS_ORACLES_HPP
