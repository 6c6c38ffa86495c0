#ifndef RATWAVE_DAUBECHIES_HPP
#define RATWAVE_DAUBECHIES_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ratwave/wavelet_bank.hpp"

namespace ratwave::daubechies {

struct DaubechiesSpec {
    int genus = 2;
    int max_genus = 20;
    /// Newton steps applied to each root of the halfband factor.
    int polish_steps = 3;
    /// Generation fails if the finished bank misses the quadratic condition
    /// by more than this.
    double acceptance = 1e-10;
};

namespace detail {

using cplx = std::complex<long double>;

// P(y) = sum_{k<N} C(N-1+k, k) y^k, coefficients in ascending order.
inline std::vector<long double> halfband_factor(int genus) {
    std::vector<long double> c(static_cast<std::size_t>(genus));
    long double binom = 1;
    for (int k = 0; k < genus; ++k) {
        if (k > 0) binom = binom * static_cast<long double>(genus - 1 + k) / static_cast<long double>(k);
        c[static_cast<std::size_t>(k)] = binom;
    }
    return c;
}

inline std::vector<cplx> polynomial_roots(const std::vector<long double>& c, int polish_steps) {
    const auto degree = static_cast<Eigen::Index>(c.size()) - 1;
    if (degree < 1) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    const long double lead = c.back();
    for (Eigen::Index i = 0; i < degree; ++i) {
        companion(0, i) = static_cast<double>(-c[static_cast<std::size_t>(degree - 1 - i)] / lead);
        if (i + 1 < degree) companion(i + 1, i) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw RootFindingFailure("companion eigenvalue solve did not converge");
    std::vector<cplx> roots;
    for (Eigen::Index i = 0; i < degree; ++i) {
        const auto ev = solver.eigenvalues()(i);
        cplx y(ev.real(), ev.imag());
        for (int step = 0; step < polish_steps; ++step) {
            cplx p = 0, dp = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) {
                dp = dp * y + p;
                p = p * y + *it;
            }
            if (std::abs(dp) == 0) break;
            y -= p / dp;
        }
        roots.push_back(y);
    }
    return roots;
}

} // namespace detail

/// Minimal-phase Daubechies bank D_N with h0(1) = 2 and N vanishing moments
/// of the wavelet row, in the tap order that starts with the large
/// coefficients (for N = 2: (1+sqrt3)/4, (3+sqrt3)/4, ...).
inline WaveletBank2<double> generate(const DaubechiesSpec& spec) {
    const int n = spec.genus;
    if (n < 1 || n > spec.max_genus)
        throw UnsupportedGenus("daubechies::generate: genus " + std::to_string(n) + " outside 1.." +
                               std::to_string(spec.max_genus));
    using detail::cplx;

    // Each root y of P gives a reciprocal pair z, 1/z of
    // z^2 - (2 - 4y) z + 1; keep the member inside the unit disk.
    std::vector<cplx> inside;
    for (const auto& y : detail::polynomial_roots(detail::halfband_factor(n), spec.polish_steps)) {
        const cplx t = cplx(2) - cplx(4) * y;
        const cplx disc = std::sqrt(t * t - cplx(4));
        const cplx z1 = (t + disc) / cplx(2);
        const cplx z2 = (t - disc) / cplx(2);
        inside.push_back(std::abs(z1) < std::abs(z2) ? z1 : z2);
    }

    // h(z) = (1 + z)^N prod_r (1 - r z)
    std::vector<cplx> h{cplx(1)};
    auto multiply_linear = [&h](cplx c0, cplx c1) {
        std::vector<cplx> out(h.size() + 1, cplx(0));
        for (std::size_t i = 0; i < h.size(); ++i) {
            out[i] += h[i] * c0;
            out[i + 1] += h[i] * c1;
        }
        h = std::move(out);
    };
    for (int i = 0; i < n; ++i) multiply_linear(cplx(1), cplx(1));
    for (const auto& r : inside) multiply_linear(cplx(1), -r);

    long double sum = 0;
    for (const auto& c : h) sum += c.real();
    std::vector<double> taps;
    for (const auto& c : h) taps.push_back(static_cast<double>(2 * c.real() / sum));

    WaveletBank2<double> bank(std::move(taps));
    const auto q = check_quadratic(bank);
    if (!(q.max_residual() <= spec.acceptance))
        throw RootFindingFailure("daubechies::generate: genus " + std::to_string(n) +
                                 " bank misses the quadratic condition by " + std::to_string(q.max_residual()));
    return bank;
}

inline WaveletBank2<double> generate(int genus) {
    DaubechiesSpec spec;
    spec.genus = genus;
    return generate(spec);
}

} // namespace ratwave::daubechies

#endif // RATWAVE_DAUBECHIES_HPP
