#ifndef RATWAVE_RATIONALIZE_HPP
#define RATWAVE_RATIONALIZE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "ratwave/param_maps.hpp"
#include "ratwave/rational.hpp"
#include "ratwave/wavelet_bank.hpp"

namespace ratwave {

// ---------------------------------------------------------------------------
// Scalar approximation

namespace detail {

/// floor(x) for an exact rational.
inline BigInt floor_of(const BigRational& x) {
    const BigInt num = x.numerator();
    const BigInt den = x.denominator();
    BigInt q = num / den; // truncates toward zero
    if (num.sign() < 0 && q * den != num) q -= 1;
    return q;
}

inline BigInt ceil_of(const BigRational& x) { return -floor_of(-x); }

// Simplest fraction in [lo, hi] with 0 < lo <= hi.
inline BigRational simplest_positive(BigRational lo, BigRational hi) {
    // Continued-fraction descent; (h, k) and (h_prev, k_prev) are the last
    // two convergents of the terms consumed so far.
    BigInt h = 1, k = 0;
    BigInt h_prev = 0, k_prev = 1;
    for (;;) {
        const BigInt c = ceil_of(lo);
        if (BigRational(c) <= hi) {
            return BigRational(c * h + h_prev, c * k + k_prev);
        }
        const BigInt a = floor_of(lo);
        const BigInt h_next = a * h + h_prev;
        const BigInt k_next = a * k + k_prev;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        const BigRational new_lo = BigRational(1) / (hi - BigRational(a));
        const BigRational new_hi = BigRational(1) / (lo - BigRational(a));
        lo = new_lo;
        hi = new_hi;
    }
}

} // namespace detail

/// Fraction of smallest denominator in the closed interval [lo, hi]; among
/// those, the one of smallest magnitude.
inline BigRational simplest_in_interval(const BigRational& lo, const BigRational& hi) {
    if (hi < lo) throw InvalidArgument("simplest_in_interval: empty interval");
    if (lo.sign() <= 0 && hi.sign() >= 0) return BigRational(0);
    if (hi.sign() < 0) return -detail::simplest_positive(-hi, -lo);
    return detail::simplest_positive(lo, hi);
}

/// Smallest-denominator fraction within epsilon of x.
inline BigRational best_rational_within(const BigRational& x, const BigRational& epsilon) {
    if (epsilon.sign() < 0) throw InvalidArgument("best_rational_within: negative epsilon");
    return simplest_in_interval(x - epsilon, x + epsilon);
}

inline BigRational best_rational_within(double x, const BigRational& epsilon) {
    return best_rational_within(BigRational::from_double(x), epsilon);
}

/// Closest fraction to x with denominator at most max_den; ties go to the
/// smaller numerator magnitude.
inline BigRational best_rational_bounded(const BigRational& x, const BigInt& max_den) {
    if (max_den < 1) throw InvalidArgument("best_rational_bounded: denominator bound must be >= 1");
    if (x.sign() < 0) return -best_rational_bounded(-x, max_den);
    if (x.denominator() <= max_den) return x;
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    BigInt n = x.numerator(), d = x.denominator();
    for (;;) {
        const BigInt a = n / d;
        const BigInt q2 = q0 + a * q1;
        if (q2 > max_den) break;
        const BigInt p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const BigInt r = n - a * d;
        n = d;
        d = r;
    }
    const BigInt j = (max_den - q0) / q1;
    const BigRational semi(p0 + j * p1, q0 + j * q1);
    const BigRational conv(p1, q1);
    const BigRational ds = abs(semi - x);
    const BigRational dc = abs(conv - x);
    if (ds < dc) return semi;
    if (dc < ds) return conv;
    return abs(semi) <= abs(conv) ? semi : conv;
}

inline BigRational best_rational_bounded(double x, const BigInt& max_den) {
    return best_rational_bounded(BigRational::from_double(x), max_den);
}

/// round(x 2^bits) / 2^bits with halves rounded away from zero.
inline BigRational dyadic_round(const BigRational& x, int bits) {
    if (bits < 0) throw InvalidArgument("dyadic_round: negative bit count");
    const BigInt scale = BigInt(1) << bits;
    const BigRational scaled = abs(x) * BigRational(scale);
    BigInt r = detail::floor_of(scaled + BigRational(1, 2));
    if (x.sign() < 0) r = -r;
    return BigRational(r, scale);
}

/// Convergents and semiconvergents of x with denominator <= max_den, plus
/// floor(x); ascending by denominator.
inline std::vector<BigRational> semiconvergents(const BigRational& x, const BigInt& max_den) {
    const BigInt base = detail::floor_of(x);
    std::vector<BigRational> out{BigRational(base)};
    BigRational frac = x - BigRational(base);
    BigInt h2 = 1, k2 = 0, h1 = 0, k1 = 1;
    while (!frac.is_zero()) {
        const BigRational inv = BigRational(1) / frac;
        const BigInt a = detail::floor_of(inv);
        for (BigInt j = 1; j <= a; ++j) {
            const BigInt k = k2 + j * k1;
            if (k > max_den) return out;
            out.emplace_back(BigRational(base) + BigRational(h2 + j * h1, k));
        }
        const BigInt h = h2 + a * h1;
        const BigInt k = k2 + a * k1;
        h2 = h1;
        k2 = k1;
        h1 = h;
        k1 = k;
        frac = inv - BigRational(a);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Strategies

struct Dyadic {
    int bits;
};
struct BestWithin {
    BigRational epsilon;
};
struct MaxDenominator {
    BigInt max_den;
};
struct Screening {
    BigRational epsilon;
    BigInt max_tap_den;
};

using ApproxStrategy = std::variant<Dyadic, BestWithin, MaxDenominator, Screening>;

inline void validate(const ApproxStrategy& s) {
    std::visit(
        [](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Dyadic>) {
                if (v.bits < 1) throw InvalidArgument("dyadic strategy needs K >= 1");
            } else if constexpr (std::is_same_v<V, BestWithin>) {
                if (v.epsilon.sign() <= 0) throw InvalidArgument("best strategy needs EPS > 0");
            } else if constexpr (std::is_same_v<V, MaxDenominator>) {
                if (v.max_den < 1) throw InvalidArgument("maxden strategy needs Q >= 1");
            } else {
                if (v.epsilon.sign() < 0) throw InvalidArgument("screen strategy needs EPS >= 0");
                if (v.max_tap_den < 2) throw InvalidArgument("screen strategy needs DMAX >= 2");
            }
        },
        s);
}

/// Parses "dyadic:K", "best:EPS", "maxden:Q" or "screen:EPS,DMAX".
inline ApproxStrategy parse_strategy(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("strategy '" + text + "' lacks ':'");
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    auto integer = [&](const std::string& s) {
        const auto r = BigRational::parse(s);
        if (!r.is_integer()) throw ParseError("strategy '" + text + "': expected an integer, got '" + s + "'");
        return r.numerator();
    };
    ApproxStrategy out;
    if (kind == "dyadic") {
        const BigInt k = integer(arg);
        if (k > 4096 || k < -4096) throw ParseError("strategy '" + text + "': bit count out of range");
        out = Dyadic{k.convert_to<int>()};
    } else if (kind == "best") {
        out = BestWithin{BigRational::parse(arg)};
    } else if (kind == "maxden") {
        out = MaxDenominator{integer(arg)};
    } else if (kind == "screen") {
        const auto comma = arg.find(',');
        if (comma == std::string::npos) throw ParseError("strategy '" + text + "': expected screen:EPS,DMAX");
        out = Screening{BigRational::parse(arg.substr(0, comma)), integer(arg.substr(comma + 1))};
    } else {
        throw ParseError("unknown strategy kind '" + kind + "'");
    }
    validate(out);
    return out;
}

inline std::string to_string(const ApproxStrategy& s) {
    return std::visit(
        [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Dyadic>) return "dyadic:" + std::to_string(v.bits);
            else if constexpr (std::is_same_v<V, BestWithin>) return "best:" + v.epsilon.str();
            else if constexpr (std::is_same_v<V, MaxDenominator>) return "maxden:" + v.max_den.str();
            else return "screen:" + v.epsilon.str() + "," + v.max_tap_den.str();
        },
        s);
}

/// Per-coefficient approximation. A screening strategy falls back to the
/// simplest fraction within its epsilon.
inline PhiParam<BigRational> approximate_phi(const PhiParam<BigRational>& phi, const ApproxStrategy& strategy) {
    validate(strategy);
    std::vector<BigRational> out;
    for (const auto& g : phi.gammas) {
        out.push_back(std::visit(
            [&g](const auto& v) -> BigRational {
                using V = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<V, Dyadic>) return dyadic_round(g, v.bits);
                else if constexpr (std::is_same_v<V, BestWithin>) return best_rational_within(g, v.epsilon);
                else if constexpr (std::is_same_v<V, MaxDenominator>) return best_rational_bounded(g, v.max_den);
                else return best_rational_within(g, v.epsilon);
            },
            strategy));
    }
    return PhiParam<BigRational>(phi.n, std::move(out));
}

inline PhiParam<BigRational> approximate_phi(const PhiParam<double>& phi, const ApproxStrategy& strategy) {
    return approximate_phi(convert_phi<BigRational>(phi), strategy);
}

// ---------------------------------------------------------------------------
// Pipeline

struct RationalizationResult {
    PhiParam<BigRational> phi_q;
    WaveletBank2<BigRational> bank;
    BigInt max_tap_denominator;
    MomentReport<BigRational> moment_report; // M_0 .. M_{N-1}
    double input_distance = 0.0;             // max_i |gamma_i - gamma_Q,i|

    /// max_{1 <= p <= N-1} |M_p|.
    BigRational moment_magnitude() const {
        BigRational m;
        for (std::size_t p = 1; p < moment_report.values.size(); ++p) m = std::max(m, abs(moment_report.values[p]));
        return m;
    }
};

inline BigInt max_denominator(const WaveletBank2<BigRational>& bank) {
    BigInt d = 1;
    for (const auto& t : bank.h0()) d = std::max(d, t.denominator());
    return d;
}

/// coprod(phi_q) followed by the Haar bridge, all in exact arithmetic.
inline RationalizationResult evaluate_candidate(const PhiParam<BigRational>& phi, const PhiParam<BigRational>& phi_q) {
    const int genus = phi_q.n + 1;
    RationalizationResult r;
    r.phi_q = phi_q;
    r.bank = from_param(coprod(phi_q), genus);
    r.max_tap_denominator = max_denominator(r.bank);
    r.moment_report = moments(r.bank, genus - 1);
    r.input_distance = to_double(max_abs_diff(phi, phi_q));
    return r;
}

struct ScreenOptions {
    /// Upper bound on candidates evaluated; BudgetExceeded beyond it.
    std::size_t max_candidates = 200000;
    /// Denominator bound for per-coefficient candidates at genus >= 3;
    /// 0 means "use the tap-denominator bound".
    BigInt max_phi_denominator = 0;
    /// 0 means RATWAVE_THREADS or the hardware concurrency.
    unsigned threads = 0;
};

namespace detail {

inline unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RATWAVE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = fn(i); each index is written by exactly one worker.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t count, unsigned threads, Fn fn) {
    std::vector<R> out(count);
    const std::size_t workers = std::min<std::size_t>(worker_count(threads), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
        });
    for (auto& t : pool) t.join();
    return out;
}

inline bool phi_less(const PhiParam<BigRational>& a, const PhiParam<BigRational>& b) {
    return std::lexicographical_compare(a.gammas.begin(), a.gammas.end(), b.gammas.begin(), b.gammas.end());
}

} // namespace detail

/// Candidates within epsilon of phi. Genus 2 is enumerated exhaustively over
/// every reduced p/q whose tap denominator can stay below the bound; higher
/// genus uses the product of per-coefficient semiconvergent lists.
inline std::vector<PhiParam<BigRational>> screen_candidates(const PhiParam<BigRational>& phi,
                                                            const BigRational& epsilon, const BigInt& max_tap_den,
                                                            const ScreenOptions& options = {}) {
    if (epsilon.sign() < 0) throw InvalidArgument("screen: negative epsilon");
    if (phi.n == 0) return {phi};
    std::vector<std::vector<BigRational>> per_coeff;
    if (phi.n == 1) {
        // A reduced -p/q yields taps over (p^2 + q^2) / g with g | 2, so
        // q^2 < 2 * max_tap_den.
        const BigInt q_max = boost::multiprecision::sqrt(BigInt(2 * max_tap_den));
        const BigRational lo = phi.gammas[0] - epsilon;
        const BigRational hi = phi.gammas[0] + epsilon;
        std::vector<BigRational> list;
        for (BigInt q = 1; q <= q_max; ++q) {
            const BigInt p_lo = detail::ceil_of(lo * BigRational(q));
            const BigInt p_hi = detail::floor_of(hi * BigRational(q));
            for (BigInt p = p_lo; p <= p_hi; ++p) {
                if (boost::multiprecision::gcd(p, q) != 1) continue;
                list.emplace_back(p, q);
                if (list.size() > options.max_candidates)
                    throw BudgetExceeded("screen: more than " + std::to_string(options.max_candidates) + " candidates");
            }
        }
        per_coeff.push_back(std::move(list));
    } else {
        const BigInt q_max = options.max_phi_denominator > 0 ? options.max_phi_denominator : max_tap_den;
        for (const auto& g : phi.gammas) {
            std::vector<BigRational> list;
            for (auto& c : semiconvergents(g, q_max))
                if (abs(c - g) <= epsilon) list.push_back(std::move(c));
            const auto simplest = best_rational_within(g, epsilon);
            if (simplest.denominator() <= q_max && std::find(list.begin(), list.end(), simplest) == list.end())
                list.push_back(simplest);
            std::sort(list.begin(), list.end());
            per_coeff.push_back(std::move(list));
        }
    }
    std::size_t total = 1;
    for (const auto& l : per_coeff) {
        if (l.empty()) return {};
        if (total > options.max_candidates / l.size() + 1)
            throw BudgetExceeded("screen: candidate product exceeds " + std::to_string(options.max_candidates));
        total *= l.size();
    }
    if (total > options.max_candidates)
        throw BudgetExceeded("screen: " + std::to_string(total) + " candidates exceed the cap of " +
                             std::to_string(options.max_candidates));
    std::vector<PhiParam<BigRational>> out;
    out.reserve(total);
    std::vector<std::size_t> idx(per_coeff.size(), 0);
    for (std::size_t c = 0; c < total; ++c) {
        std::vector<BigRational> g;
        for (std::size_t i = 0; i < per_coeff.size(); ++i) g.push_back(per_coeff[i][idx[i]]);
        out.emplace_back(phi.n, std::move(g));
        for (std::size_t i = per_coeff.size(); i-- > 0;) {
            if (++idx[i] < per_coeff[i].size()) break;
            idx[i] = 0;
        }
    }
    return out;
}

/// Evaluates every candidate, keeps those with tap denominators <= the bound
/// and orders them by denominator, then moment magnitude, then phi.
inline std::vector<RationalizationResult> screen_phi(const PhiParam<BigRational>& phi, const BigRational& epsilon,
                                                     const BigInt& max_tap_den, const ScreenOptions& options = {}) {
    const auto candidates = screen_candidates(phi, epsilon, max_tap_den, options);
    auto evaluated = detail::parallel_map<RationalizationResult>(
        candidates.size(), options.threads, [&](std::size_t i) { return evaluate_candidate(phi, candidates[i]); });
    std::vector<RationalizationResult> kept;
    for (auto& r : evaluated)
        if (r.max_tap_denominator <= max_tap_den) kept.push_back(std::move(r));
    std::sort(kept.begin(), kept.end(), [](const RationalizationResult& a, const RationalizationResult& b) {
        if (a.max_tap_denominator != b.max_tap_denominator) return a.max_tap_denominator < b.max_tap_denominator;
        const auto ma = a.moment_magnitude();
        const auto mb = b.moment_magnitude();
        if (ma != mb) return ma < mb;
        return detail::phi_less(a.phi_q, b.phi_q);
    });
    return kept;
}

/// phi of a bank, as an exact rational parameter.
template <Scalar T>
PhiParam<BigRational> bank_phi(const WaveletBank2<T>& bank, double tol = kDefaultTolerance) {
    return convert_phi<BigRational>(prod(to_param(bank, tol), bank.genus() - 1));
}

template <Scalar T>
std::vector<RationalizationResult> screen(const WaveletBank2<T>& bank, const BigRational& epsilon,
                                          const BigInt& max_tap_den, const ScreenOptions& options = {},
                                          double tol = kDefaultTolerance) {
    return screen_phi(bank_phi(bank, tol), epsilon, max_tap_den, options);
}

/// Bank -> phi -> rational phi_Q -> exact bank with the quadratic and
/// linear conditions satisfied identically.
template <Scalar T>
RationalizationResult rationalize_bank(const WaveletBank2<T>& bank, const ApproxStrategy& strategy,
                                       const ScreenOptions& options = {}, double tol = kDefaultTolerance) {
    validate(strategy);
    const auto phi = bank_phi(bank, tol);
    if (const auto* s = std::get_if<Screening>(&strategy)) {
        auto results = screen_phi(phi, s->epsilon, s->max_tap_den, options);
        if (results.empty())
            throw InvalidArgument("rationalize: no candidate within " + s->epsilon.str() +
                                  " reaches tap denominator <= " + s->max_tap_den.str());
        return std::move(results.front());
    }
    return evaluate_candidate(phi, approximate_phi(phi, strategy));
}

} // namespace ratwave

#endif // RATWAVE_RATIONALIZE_HPP
