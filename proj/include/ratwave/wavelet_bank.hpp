#ifndef RATWAVE_WAVELET_BANK_HPP
#define RATWAVE_WAVELET_BANK_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ratwave/laurent.hpp"
#include "ratwave/param_maps.hpp"
#include "ratwave/rational.hpp"

namespace ratwave {

/// Rank-2 wavelet bank of genus N. The scaling row is interleaved as
/// h0 = (a_0, b_0, a_1, b_1, ..., a_{N-1}, b_{N-1}); the wavelet row is fully
/// determined by it: h1[2k] = -b_{N-1-k}, h1[2k+1] = a_{N-1-k}.
template <Scalar T>
class WaveletBank2 {
public:
    WaveletBank2() = default;

    explicit WaveletBank2(std::vector<T> h0) : h0_(std::move(h0)) {
        if (h0_.empty() || h0_.size() % 2 != 0)
            throw InvalidArgument("WaveletBank2: scaling row must have 2N > 0 taps, got " + std::to_string(h0_.size()));
        const std::size_t len = h0_.size();
        h1_.resize(len);
        for (std::size_t k = 0; k < len; ++k) {
            const T& mirror = h0_[len - 1 - k];
            h1_[k] = k % 2 == 0 ? -mirror : mirror;
        }
    }

    /// Interleaves a(z) = sum a_k z^k and b(z) = sum b_k z^k into a genus-N bank.
    static WaveletBank2 from_polyphase(const LaurentPoly<T>& a, const LaurentPoly<T>& b, int genus) {
        if (genus < 1) throw InvalidArgument("WaveletBank2: genus must be positive");
        if (!in_causal_range(a, genus - 1) || !in_causal_range(b, genus - 1))
            throw DegreeMismatch("WaveletBank2: polyphase components exceed degree " + std::to_string(genus - 1));
        std::vector<T> h0;
        h0.reserve(static_cast<std::size_t>(2 * genus));
        for (int k = 0; k < genus; ++k) {
            h0.push_back(a.coeff(k));
            h0.push_back(b.coeff(k));
        }
        return WaveletBank2(std::move(h0));
    }

    int genus() const { return static_cast<int>(h0_.size() / 2); }
    std::size_t taps() const { return h0_.size(); }
    const std::vector<T>& h0() const { return h0_; }
    const std::vector<T>& h1() const { return h1_; }
    const std::vector<T>& row(int r) const { return r == 0 ? h0_ : h1_; }

    LaurentPoly<T> a_poly() const { return strided(0); }
    LaurentPoly<T> b_poly() const { return strided(1); }

    /// z-transform of row r.
    LaurentPoly<T> filter(int r) const { return causal_poly(row(r)); }

    friend bool operator==(const WaveletBank2&, const WaveletBank2&) = default;

private:
    LaurentPoly<T> strided(std::size_t offset) const {
        std::vector<T> c;
        for (std::size_t k = offset; k < h0_.size(); k += 2) c.push_back(h0_[k]);
        return causal_poly(std::move(c));
    }

    std::vector<T> h0_;
    std::vector<T> h1_;
};

/// A(z) = [[a, b], [-z^{N-1} b~, z^{N-1} a~]].
template <Scalar T>
struct PolyphaseMatrix2 {
    std::array<std::array<LaurentPoly<T>, 2>, 2> entries;

    const LaurentPoly<T>& operator()(int i, int j) const {
        return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
};

template <Scalar T>
PolyphaseMatrix2<T> polyphase(const WaveletBank2<T>& bank) {
    const int s = bank.genus() - 1;
    const auto a = bank.a_poly();
    const auto b = bank.b_poly();
    return {{{{a, b}, {-tilde(b).shifted(s), tilde(a).shifted(s)}}}};
}

/// Largest coefficient of A(z) A~(z) - 2 I.
template <Scalar T>
T polyphase_residual(const PolyphaseMatrix2<T>& m) {
    T worst{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            LaurentPoly<T> s = m(i, 0) * tilde(m(j, 0)) + m(i, 1) * tilde(m(j, 1));
            if (i == j) s -= LaurentPoly<T>(T(2));
            worst = std::max(worst, max_abs_coeff(s));
        }
    return worst;
}

/// Largest deviation of the shift-orthogonality sums
/// sum_k h_i[k + 2r] h_j[k + 2s] = 2 delta_ij delta_rs. Only the relative
/// shift matters, so s = 0 and r ranges over all overlapping offsets.
template <Scalar T>
T shift_orthogonality_residual(const WaveletBank2<T>& bank) {
    const auto len = static_cast<long>(bank.taps());
    T worst{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (long shift = -(len - 1) / 2 * 2; shift < len; shift += 2) {
                T s{};
                for (long k = 0; k < len; ++k) {
                    const long m = k + shift;
                    if (m < 0 || m >= len) continue;
                    s += bank.row(i)[static_cast<std::size_t>(m)] * bank.row(j)[static_cast<std::size_t>(k)];
                }
                if (i == j && shift == 0) s -= T(2);
                worst = std::max(worst, abs_value(s));
            }
    return worst;
}

/// Largest coefficient of sum_{w = +-1} h_r(wz) h~_s(wz) - 4 delta_rs.
template <Scalar T>
T modulation_residual(const WaveletBank2<T>& bank) {
    T worst{};
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            const auto hr = bank.filter(r);
            const auto hs = bank.filter(s);
            LaurentPoly<T> sum = hr * tilde(hs) + substitute_neg_z(hr) * tilde(substitute_neg_z(hs));
            if (r == s) sum -= LaurentPoly<T>(T(4));
            worst = std::max(worst, max_abs_coeff(sum));
        }
    return worst;
}

/// The three equivalent forms of the quadratic condition.
template <Scalar T>
struct QuadraticReport {
    T shift;      // shifted-row orthogonality sums
    T polyphase;  // A A~ = 2 I
    T modulation; // h(z) h~(z) + h(-z) h~(-z) = 4

    T max_residual() const { return std::max({shift, polyphase, modulation}); }
    bool passes(double tol = kDefaultTolerance) const { return residual_ok(max_residual(), tol); }
};

template <Scalar T>
QuadraticReport<T> check_quadratic(const WaveletBank2<T>& bank) {
    return {shift_orthogonality_residual(bank), polyphase_residual(polyphase(bank)), modulation_residual(bank)};
}

/// (h0(1), h1(1)); a canonical bank has (2, 0).
template <Scalar T>
struct LinearReport {
    T h0_at_one;
    T h1_at_one;

    T residual() const { return std::max(abs_value(h0_at_one - T(2)), abs_value(h1_at_one)); }
    bool passes(double tol = kDefaultTolerance) const { return residual_ok(residual(), tol); }
};

template <Scalar T>
LinearReport<T> check_linear(const WaveletBank2<T>& bank) {
    return {bank.filter(0).evaluate_at_one(), bank.filter(1).evaluate_at_one()};
}

/// M_p = sum_k h1[k] k^p for p = 0..pmax.
template <Scalar T>
struct MomentReport {
    std::vector<T> values;

    const T& operator[](std::size_t p) const { return values[p]; }
};

template <Scalar T>
MomentReport<T> moments(const WaveletBank2<T>& bank, int pmax) {
    MomentReport<T> r;
    for (int p = 0; p <= pmax; ++p) {
        T m{};
        for (std::size_t k = 0; k < bank.taps(); ++k) {
            T power(1);
            for (int i = 0; i < p; ++i) power = power * T(static_cast<int>(k));
            m += bank.h1()[k] * power;
        }
        r.values.push_back(m);
    }
    return r;
}

/// (a, b) -> ((a + b) / 2, (b - a) / 2): the canonical pair of a bank with the
/// Haar factor and both 1/sqrt(2) scalings folded in.
template <Scalar T>
ParamPair<T> to_param(const WaveletBank2<T>& bank, double tol = kDefaultTolerance) {
    const auto q = check_quadratic(bank);
    if (!q.passes(tol)) throw NotParaunitary("to_param: bank fails the quadratic condition", to_double(q.max_residual()));
    const auto a = bank.a_poly();
    const auto b = bank.b_poly();
    return {(a + b) / T(2), (b - a) / T(2)};
}

/// (alpha, beta) -> (a, b) = (alpha - beta, alpha + beta), interleaved.
template <Scalar T>
WaveletBank2<T> from_param(const ParamPair<T>& pair, int genus) {
    if (!in_causal_range(pair.alpha, genus - 1) || !in_causal_range(pair.beta, genus - 1))
        throw DegreeMismatch("from_param: pair exceeds degree " + std::to_string(genus - 1) + " for genus " +
                             std::to_string(genus));
    return WaveletBank2<T>::from_polyphase(pair.alpha - pair.beta, pair.alpha + pair.beta, genus);
}

/// Finitely supported real signal: samples[i] is f(offset + i); zero elsewhere.
template <Scalar T>
struct Signal {
    long offset = 0;
    std::vector<T> samples;

    T at(long k) const {
        if (k < offset || k >= offset + static_cast<long>(samples.size())) return T{};
        return samples[static_cast<std::size_t>(k - offset)];
    }

    /// Drops zero samples at both ends.
    Signal trimmed() const {
        std::size_t first = 0;
        while (first < samples.size() && is_zero(samples[first])) ++first;
        if (first == samples.size()) return {};
        std::size_t last = samples.size();
        while (is_zero(samples[last - 1])) --last;
        return {offset + static_cast<long>(first),
                std::vector<T>(samples.begin() + static_cast<std::ptrdiff_t>(first),
                               samples.begin() + static_cast<std::ptrdiff_t>(last))};
    }

    friend Signal operator+(const Signal& a, const Signal& b) {
        if (a.samples.empty()) return b;
        if (b.samples.empty()) return a;
        const long lo = std::min(a.offset, b.offset);
        const long hi = std::max(a.offset + static_cast<long>(a.samples.size()),
                                 b.offset + static_cast<long>(b.samples.size()));
        Signal s{lo, std::vector<T>(static_cast<std::size_t>(hi - lo))};
        for (long k = lo; k < hi; ++k) s.samples[static_cast<std::size_t>(k - lo)] = a.at(k) + b.at(k);
        return s;
    }

    /// Equality of the underlying functions Z -> field.
    friend bool operator==(const Signal& a, const Signal& b) {
        const auto ta = a.trimmed();
        const auto tb = b.trimmed();
        return ta.offset == tb.offset && ta.samples == tb.samples;
    }
};

template <Scalar T>
T max_abs_diff(const Signal<T>& a, const Signal<T>& b) {
    const long lo = std::min(a.offset, b.offset);
    const long hi = std::max(a.offset + static_cast<long>(a.samples.size()),
                             b.offset + static_cast<long>(b.samples.size()));
    T worst{};
    for (long k = lo; k < hi; ++k) worst = std::max(worst, abs_value(a.at(k) - b.at(k)));
    return worst;
}

/// The two channel components f_r = 1/2 sum_s <f, h_r(. - 2s)> h_r(. - 2s).
template <Scalar T>
struct ChannelParts {
    Signal<T> low;
    Signal<T> high;
};

/// Filters by each row at stride-2 shifts and projects back. With `strict`
/// set, a bank that fails the quadratic condition is rejected.
template <Scalar T>
ChannelParts<T> analyze(const WaveletBank2<T>& bank, const Signal<T>& f, bool strict = false,
                        double tol = kDefaultTolerance) {
    if (strict) {
        const auto q = check_quadratic(bank);
        if (!q.passes(tol)) throw NotParaunitary("analyze: bank fails the quadratic condition", to_double(q.max_residual()));
    }
    const auto sig = f.trimmed();
    if (sig.samples.empty()) return {};
    const auto len = static_cast<long>(bank.taps());
    const long lo = sig.offset;
    const long hi = sig.offset + static_cast<long>(sig.samples.size()) - 1;
    // shifts 2s with [2s, 2s + len - 1] meeting [lo, hi]
    auto floor_div2 = [](long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); };
    const long s_min = floor_div2(lo - len + 2);
    const long s_max = floor_div2(hi);
    const long out_lo = 2 * s_min;
    const auto out_len = static_cast<std::size_t>(2 * (s_max - s_min) + len);

    ChannelParts<T> parts{{out_lo, std::vector<T>(out_len)}, {out_lo, std::vector<T>(out_len)}};
    const T half = T(1) / T(2);
    for (int r = 0; r < 2; ++r) {
        const auto& h = bank.row(r);
        auto& out = r == 0 ? parts.low.samples : parts.high.samples;
        for (long s = s_min; s <= s_max; ++s) {
            T inner{};
            for (long k = 0; k < len; ++k) inner += sig.at(2 * s + k) * h[static_cast<std::size_t>(k)];
            if (is_zero(inner)) continue;
            inner = inner * half;
            for (long k = 0; k < len; ++k)
                out[static_cast<std::size_t>(2 * s + k - out_lo)] += inner * h[static_cast<std::size_t>(k)];
        }
    }
    return parts;
}

template <Scalar T>
Signal<T> synthesize(const ChannelParts<T>& parts) {
    return parts.low + parts.high;
}

template <Scalar To, Scalar From>
WaveletBank2<To> convert_bank(const WaveletBank2<From>& bank) {
    std::vector<To> h0;
    for (const auto& x : bank.h0()) h0.push_back(convert_scalar<To>(x));
    return WaveletBank2<To>(std::move(h0));
}

} // namespace ratwave

#endif // RATWAVE_WAVELET_BANK_HPP
