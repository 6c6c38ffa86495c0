#ifndef RATWAVE_PARAM_MAPS_HPP
#define RATWAVE_PARAM_MAPS_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ratwave/dense.hpp"
#include "ratwave/laurent.hpp"
#include "ratwave/rational.hpp"

namespace ratwave {

/// phi(z) = sum_{k=1..n} gamma_k z^(-k), an element of P^-_n. The nominal
/// degree n is part of the value: trailing gammas may be zero.
template <Scalar T>
struct PhiParam {
    int n = 0;
    std::vector<T> gammas; // gammas[k-1] is the coefficient of z^(-k)

    PhiParam() = default;

    PhiParam(int degree, std::vector<T> coefficients) : n(degree), gammas(std::move(coefficients)) {
        if (n < 0) throw InvalidArgument("PhiParam: negative degree");
        if (gammas.size() > static_cast<std::size_t>(n))
            throw DegreeMismatch("PhiParam: " + std::to_string(gammas.size()) + " coefficients for degree " +
                                 std::to_string(n));
        gammas.resize(static_cast<std::size_t>(n));
    }

    static PhiParam zero(int degree) { return PhiParam(degree, {}); }

    static PhiParam from_laurent(const LaurentPoly<T>& p, int degree) {
        if (!p.is_zero() && (p.max_exp() >= 0 || p.min_exp() < -degree))
            throw DegreeMismatch("PhiParam::from_laurent: polynomial is not in P^-_" + std::to_string(degree));
        std::vector<T> g(static_cast<std::size_t>(degree));
        for (int k = 1; k <= degree; ++k) g[static_cast<std::size_t>(k - 1)] = p.coeff(-k);
        return PhiParam(degree, std::move(g));
    }

    const T& gamma(int k) const { return gammas[static_cast<std::size_t>(k - 1)]; }

    LaurentPoly<T> laurent() const {
        if (n == 0) return {};
        return LaurentPoly<T>(-n, std::vector<T>(gammas.rbegin(), gammas.rend()));
    }

    bool is_zero() const {
        return std::all_of(gammas.begin(), gammas.end(), [](const T& g) { return ratwave::is_zero(g); });
    }

    friend bool operator==(const PhiParam&, const PhiParam&) = default;
};

/// A pair (alpha, beta) of causal polynomials.
template <Scalar T>
struct ParamPair {
    LaurentPoly<T> alpha;
    LaurentPoly<T> beta;

    /// Smallest n with both members in P^+_n.
    int degree() const { return std::max({0, alpha.max_exp(), beta.max_exp()}); }

    /// alpha alpha~ + beta beta~.
    LaurentPoly<T> gram() const { return alpha * tilde(alpha) + beta * tilde(beta); }

    friend bool operator==(const ParamPair&, const ParamPair&) = default;
};

/// The Hankel system whose solution yields the pair for a given phi.
template <Scalar T>
struct HankelSystem {
    DenseMatrix<T> theta; // theta(i, j) = gamma_{i+j} for 1 <= i+j <= n, else 0
    DenseMatrix<T> delta; // theta^T theta + I
    std::vector<T> rhs;   // e_1
};

/// U = [[u11, u12], [-u12, u11]] with u11 = alpha(1), u12 = beta(1) and
/// c = u11^2 + u12^2 (the value of alpha alpha~ + beta beta~).
template <Scalar T>
struct CorrectionMatrix {
    T u11;
    T u12;
    T c;

    /// (alpha, beta) * U.
    ParamPair<T> apply_right(const ParamPair<T>& p) const {
        return {p.alpha * u11 - p.beta * u12, p.alpha * u12 + p.beta * u11};
    }

    friend bool operator==(const CorrectionMatrix&, const CorrectionMatrix&) = default;
};

/// Coefficient vectors X, Y of the uncorrected solution.
template <Scalar T>
struct HankelSolution {
    std::vector<T> x;
    std::vector<T> y;

    ParamPair<T> pair() const { return {causal_poly(x), causal_poly(y)}; }
};

template <Scalar T>
HankelSystem<T> build_theta(const PhiParam<T>& phi) {
    const auto size = static_cast<std::size_t>(phi.n + 1);
    HankelSystem<T> sys{DenseMatrix<T>(size, size), {}, std::vector<T>(size)};
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            const auto k = static_cast<int>(i + j);
            if (k >= 1 && k <= phi.n) sys.theta(i, j) = phi.gamma(k);
        }
    sys.delta = sys.theta.transposed() * sys.theta + DenseMatrix<T>::identity(size);
    sys.rhs[0] = T(1);
    return sys;
}

/// Solves delta X = e_1 and sets Y = theta X.
template <Scalar T>
HankelSolution<T> solve_system(const HankelSystem<T>& sys) {
    HankelSolution<T> s;
    s.x = gaussian_solve(sys.delta, sys.rhs);
    s.y = sys.theta * s.x;
    return s;
}

template <Scalar T>
CorrectionMatrix<T> correction_matrix(const ParamPair<T>& pair) {
    const T a1 = pair.alpha.evaluate_at_one();
    const T b1 = pair.beta.evaluate_at_one();
    return {a1, b1, a1 * a1 + b1 * b1};
}

/// Rescales and rotates a pair with constant gram c into the canonical set:
/// alpha alpha~ + beta beta~ = 1, alpha(1) = 1, beta(1) = 0. The combined
/// map (a, b) -> (a a(1) + b b(1), -a b(1) + b a(1)) / c needs no square
/// roots, so rational pairs stay rational.
template <Scalar T>
ParamPair<T> correct_to_canonical(const ParamPair<T>& pair) {
    const auto u = correction_matrix(pair);
    if (is_zero(u.c)) throw DegeneratePair("correct_to_canonical: alpha(1)^2 + beta(1)^2 = 0");
    return {(pair.alpha * u.u11 + pair.beta * u.u12) / u.c, (pair.beta * u.u11 - pair.alpha * u.u12) / u.c};
}

/// phi -> (alpha, beta), the canonical pair with (1 0; phi 1)(alpha beta;
/// -beta~ alpha~) causal.
template <Scalar T>
ParamPair<T> coprod(const PhiParam<T>& phi) {
    return correct_to_canonical(solve_system(build_theta(phi)).pair());
}

enum class ProdBranch { automatic, alpha, beta };

/// (alpha, beta) -> phi, via the first n+1 Taylor coefficients of 1/alpha
/// (or 1/beta). The automatic branch picks the larger constant term.
template <Scalar T>
PhiParam<T> prod(const ParamPair<T>& pair, int n, ProdBranch branch = ProdBranch::automatic) {
    if (!in_causal_range(pair.alpha, n) || !in_causal_range(pair.beta, n))
        throw DegreeMismatch("prod: pair is not in P^+_" + std::to_string(n));
    const T a0 = pair.alpha.coeff(0);
    const T b0 = pair.beta.coeff(0);
    if (is_zero(a0) && is_zero(b0)) throw DegeneratePair("prod: alpha(0) = beta(0) = 0");
    if (branch == ProdBranch::automatic)
        branch = abs_value(a0) >= abs_value(b0) ? ProdBranch::alpha : ProdBranch::beta;
    LaurentPoly<T> phi;
    if (branch == ProdBranch::alpha)
        phi = neg_part(series_inverse_trunc(pair.alpha, n) * tilde(pair.beta));
    else
        phi = -neg_part(series_inverse_trunc(pair.beta, n) * tilde(pair.alpha));
    return PhiParam<T>::from_laurent(phi, n);
}

template <Scalar T>
PhiParam<T> prod(const ParamPair<T>& pair) {
    return prod(pair, pair.degree());
}

/// Negative parts of phi alpha - beta~ and phi beta + alpha~; both vanish
/// exactly when (1 0; phi 1)(alpha beta; -beta~ alpha~) is causal.
template <Scalar T>
std::pair<LaurentPoly<T>, LaurentPoly<T>> causality_defect(const PhiParam<T>& phi, const ParamPair<T>& pair) {
    const auto p = phi.laurent();
    return {neg_part(p * pair.alpha - tilde(pair.beta)), neg_part(p * pair.beta + tilde(pair.alpha))};
}

/// Worst coefficient deviation of a pair from the canonical-set identities.
template <Scalar T>
T canonical_defect(const ParamPair<T>& pair) {
    T worst = max_abs_coeff(pair.gram() - LaurentPoly<T>(T(1)));
    worst = std::max(worst, abs_value(pair.alpha.evaluate_at_one() - T(1)));
    worst = std::max(worst, abs_value(pair.beta.evaluate_at_one()));
    return worst;
}

template <Scalar T>
T max_abs_diff(const ParamPair<T>& a, const ParamPair<T>& b) {
    return std::max(max_abs_coeff(a.alpha - b.alpha), max_abs_coeff(a.beta - b.beta));
}

template <Scalar T>
T max_abs_diff(const PhiParam<T>& a, const PhiParam<T>& b) {
    return max_abs_coeff(a.laurent() - b.laurent());
}

/// Checks prod(coprod(phi)) == phi; throws RoundTripMismatch otherwise.
template <Scalar T>
bool roundtrip_check(const PhiParam<T>& phi, double tol = kDefaultTolerance) {
    const auto back = prod(coprod(phi), phi.n);
    const T residual = max_abs_diff(back, phi);
    if (!residual_ok(residual, tol))
        throw RoundTripMismatch("prod(coprod(phi)) != phi", to_double(residual));
    return true;
}

/// For a pair with constant gram, returns U with pair = coprod(prod(pair)) U
/// and throws RoundTripMismatch if that relation fails.
template <Scalar T>
CorrectionMatrix<T> pair_roundtrip_check(const ParamPair<T>& pair, int n, double tol = kDefaultTolerance) {
    const auto canonical = coprod(prod(pair, n));
    const auto u = correction_matrix(pair);
    const T residual = max_abs_diff(u.apply_right(canonical), pair);
    if (!residual_ok(residual, tol))
        throw RoundTripMismatch("pair != coprod(prod(pair)) U", to_double(residual));
    return u;
}

template <Scalar T>
CorrectionMatrix<T> pair_roundtrip_check(const ParamPair<T>& pair, double tol = kDefaultTolerance) {
    return pair_roundtrip_check(pair, pair.degree(), tol);
}

template <Scalar To, Scalar From>
PhiParam<To> convert_phi(const PhiParam<From>& phi) {
    std::vector<To> g;
    for (const auto& x : phi.gammas) g.push_back(convert_scalar<To>(x));
    return PhiParam<To>(phi.n, std::move(g));
}

template <Scalar To, Scalar From>
ParamPair<To> convert_pair(const ParamPair<From>& p) {
    return {convert_poly<To>(p.alpha), convert_poly<To>(p.beta)};
}

} // namespace ratwave

#endif // RATWAVE_PARAM_MAPS_HPP
