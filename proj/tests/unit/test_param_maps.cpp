#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ratwave/param_maps.hpp"

using namespace ratwave;
using Q = BigRational;
using P = LaurentPoly<BigRational>;
using Phi = PhiParam<BigRational>;
using Pair = ParamPair<BigRational>;

namespace {

Q q(const char* s) { return Q::parse(s); }

Phi random_phi(oracle::Rng& rng, int max_n, long max_num, long max_den) {
    const int n = static_cast<int>(rng.integer(1, max_n));
    std::vector<Q> g;
    for (int k = 0; k < n; ++k) g.push_back(rng.rational(max_num, max_den));
    return Phi(n, g);
}

} // namespace

TEST(PhiParam, NominalDegreeAndLaurentForm) {
    const Phi phi(3, {q("1/2"), Q(0)});
    EXPECT_EQ(phi.gammas.size(), 3u);
    EXPECT_EQ(phi.laurent(), P::monomial(q("1/2"), -1));
    EXPECT_EQ(Phi::from_laurent(phi.laurent(), 3), phi);
    EXPECT_THROW(Phi(1, {Q(1), Q(2)}), DegreeMismatch);
    EXPECT_THROW(Phi::from_laurent(P::monomial(Q(1), -3), 2), DegreeMismatch);
    EXPECT_THROW(Phi::from_laurent(P(Q(1)), 2), DegreeMismatch);
}

TEST(BuildTheta, HankelPatternForSmallDegrees) {
    const auto s1 = build_theta(Phi(1, {Q(7)}));
    EXPECT_EQ(s1.theta(0, 0), Q(0));
    EXPECT_EQ(s1.theta(0, 1), Q(7));
    EXPECT_EQ(s1.theta(1, 0), Q(7));
    EXPECT_EQ(s1.theta(1, 1), Q(0));

    const auto quarter = build_theta(Phi(1, {q("-1/4")}));
    EXPECT_EQ(quarter.delta(0, 0), q("17/16"));
    EXPECT_EQ(quarter.delta(1, 1), q("17/16"));
    EXPECT_EQ(quarter.delta(0, 1), Q(0));

    const auto s2 = build_theta(Phi(2, {Q(2), Q(3)}));
    const Q expected[3][3] = {{Q(0), Q(2), Q(3)}, {Q(2), Q(3), Q(0)}, {Q(3), Q(0), Q(0)}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(s2.theta(i, j), expected[i][j]) << i << "," << j;
    EXPECT_EQ(s2.rhs, (std::vector<Q>{Q(1), Q(0), Q(0)}));
}

TEST(SolveSystem, ZeroThetaAndQuarterExample) {
    const auto s0 = solve_system(build_theta(Phi::zero(3)));
    EXPECT_EQ(s0.x, (std::vector<Q>{Q(1), Q(0), Q(0), Q(0)}));
    EXPECT_EQ(s0.y, (std::vector<Q>(4)));

    const auto s = solve_system(build_theta(Phi(1, {q("-1/4")})));
    EXPECT_EQ(s.x, (std::vector<Q>{q("16/17"), Q(0)}));
    EXPECT_EQ(s.y, (std::vector<Q>{Q(0), q("-4/17")}));
}

TEST(SolveSystem, SolutionSatisfiesSystemAndGramIsTheConstantX0) {
    oracle::Rng rng(21);
    for (int i = 0; i < 150; ++i) {
        const auto phi = random_phi(rng, 5, 20, 10);
        const auto sys = build_theta(phi);
        const auto s = solve_system(sys);
        EXPECT_EQ(sys.delta * s.x, sys.rhs);
        const auto pair = s.pair();
        const auto gram = pair.gram();
        EXPECT_EQ(gram, P(s.x[0]));
        const Q a1 = pair.alpha.evaluate_at_one();
        const Q b1 = pair.beta.evaluate_at_one();
        EXPECT_EQ(s.x[0], a1 * a1 + b1 * b1);
        const auto [d1, d2] = causality_defect(phi, pair);
        EXPECT_TRUE(d1.is_zero());
        EXPECT_TRUE(d2.is_zero());
    }
}

TEST(CorrectToCanonical, Examples) {
    EXPECT_EQ(correct_to_canonical(Pair{P(Q(1)), P()}), (Pair{P(Q(1)), P()}));
    const Pair raw{P(q("16/17")), P::monomial(q("-4/17"), 1)};
    const auto c = correction_matrix(raw);
    EXPECT_EQ(c.u11, q("16/17"));
    EXPECT_EQ(c.u12, q("-4/17"));
    EXPECT_EQ(c.c, q("16/17"));
    EXPECT_EQ(correct_to_canonical(raw), (Pair{P(0, {q("16/17"), q("1/17")}), P(0, {q("4/17"), q("-4/17")})}));

    const double h = 1.0 / std::sqrt(2.0);
    const ParamPair<double> haar{LaurentPoly<double>(h), LaurentPoly<double>(h)};
    const auto canonical = correct_to_canonical(haar);
    EXPECT_NEAR(canonical.alpha.coeff(0), 1.0, 1e-12);
    EXPECT_LE(max_abs_coeff(canonical.beta), 1e-12);

    EXPECT_THROW(correct_to_canonical(Pair{}), DegeneratePair);
}

TEST(Coprod, Examples) {
    EXPECT_EQ(coprod(Phi::zero(1)), (Pair{P(Q(1)), P()}));
    EXPECT_EQ(coprod(Phi::zero(0)), (Pair{P(Q(1)), P()}));
    EXPECT_EQ(coprod(Phi(1, {q("-1/4")})), (Pair{P(0, {q("16/17"), q("1/17")}), P(0, {q("4/17"), q("-4/17")})}));
    EXPECT_EQ(coprod(Phi(1, {q("-17/64")})),
              (Pair{P(0, {q("4096/4385"), q("289/4385")}), P(0, {q("1088/4385"), q("-1088/4385")})}));
}

TEST(Coprod, RationalOutputSatisfiesAllIdentitiesExactly) {
    oracle::Rng rng(22);
    for (int i = 0; i < 150; ++i) {
        const auto phi = random_phi(rng, 6, 100, 100);
        const auto pair = coprod(phi);
        EXPECT_TRUE(in_causal_range(pair.alpha, phi.n));
        EXPECT_TRUE(in_causal_range(pair.beta, phi.n));
        EXPECT_EQ(pair.gram(), P(Q(1)));
        EXPECT_EQ(pair.alpha.evaluate_at_one(), Q(1));
        EXPECT_EQ(pair.beta.evaluate_at_one(), Q(0));
        const auto [d1, d2] = causality_defect(phi, pair);
        EXPECT_TRUE(d1.is_zero());
        EXPECT_TRUE(d2.is_zero());
        EXPECT_FALSE(pair.alpha.coeff(0).is_zero() && pair.beta.coeff(0).is_zero());
    }
}

TEST(Prod, Examples) {
    EXPECT_EQ(prod(Pair{P(Q(1)), P()}, 1), Phi::zero(1));
    const Pair t1{P(0, {q("16/17"), q("1/17")}), P(0, {q("4/17"), q("-4/17")})};
    EXPECT_EQ(prod(t1), Phi(1, {q("-1/4")}));

    // Canonical pair of the genus-2 Daubechies bank, (a + b)/2 and (b - a)/2.
    const double s3 = std::sqrt(3.0);
    const double a0 = (1 + s3) / 4, b0 = (3 + s3) / 4, a1 = (3 - s3) / 4, b1 = (1 - s3) / 4;
    const ParamPair<double> d2{LaurentPoly<double>(0, {(a0 + b0) / 2, (a1 + b1) / 2}),
                               LaurentPoly<double>(0, {(b0 - a0) / 2, (b1 - a1) / 2})};
    const auto phi = prod(d2, 1);
    EXPECT_NEAR(phi.gamma(1), -(2 - s3), 1e-12);
    EXPECT_LE(max_abs_diff(coprod(phi), d2), 1e-12);
}

TEST(Prod, ErrorPaths) {
    EXPECT_THROW(prod(Pair{P::monomial(Q(1), 1), P::monomial(Q(1), 1)}, 1), DegeneratePair);
    EXPECT_THROW(prod(Pair{P(0, {Q(1), Q(0), Q(1)}), P()}, 1), DegreeMismatch);
    EXPECT_THROW(prod(Pair{P(-1, {Q(1), Q(1)}), P()}, 2), DegreeMismatch);
}

TEST(Prod, BranchesAgreeWhenBothConstantTermsAreNonzero) {
    oracle::Rng rng(23);
    int compared = 0;
    for (int i = 0; i < 200; ++i) {
        const auto phi = random_phi(rng, 5, 50, 30);
        const auto pair = coprod(phi);
        if (pair.alpha.coeff(0).is_zero() || pair.beta.coeff(0).is_zero()) continue;
        ++compared;
        EXPECT_EQ(prod(pair, phi.n, ProdBranch::alpha), prod(pair, phi.n, ProdBranch::beta));
    }
    EXPECT_GT(compared, 100);
}

TEST(Prod, InvariantUnderRotationAndScalingOfThePair) {
    oracle::Rng rng(24);
    for (int i = 0; i < 100; ++i) {
        const auto phi = random_phi(rng, 4, 30, 20);
        const auto canonical = coprod(phi);
        Q u = rng.rational(20, 9);
        Q v = rng.rational(20, 9);
        if (u.is_zero() && v.is_zero()) u = Q(1);
        const auto rotated = CorrectionMatrix<Q>{u, v, u * u + v * v}.apply_right(canonical);
        EXPECT_EQ(prod(rotated, phi.n), phi);
        EXPECT_EQ(prod(rotated, phi.n), prod(correct_to_canonical(rotated), phi.n));
        EXPECT_EQ(correct_to_canonical(rotated), canonical);
    }
}

TEST(RoundTrip, ZeroAndRandomRationalParameters) {
    EXPECT_TRUE(roundtrip_check(Phi::zero(4)));
    oracle::Rng rng(25);
    for (int i = 0; i < 100; ++i) EXPECT_TRUE(roundtrip_check(random_phi(rng, 8, 100, 100)));
}

TEST(RoundTrip, PairCheckRecoversCorrectionMatrix) {
    const double h = 1.0 / std::sqrt(2.0);
    const ParamPair<double> haar{LaurentPoly<double>(h), LaurentPoly<double>(h)};
    const auto u = pair_roundtrip_check(haar);
    EXPECT_NEAR(u.u11, h, 1e-12);
    EXPECT_NEAR(u.u12, h, 1e-12);
    EXPECT_NEAR(u.c, 1.0, 1e-12);

    oracle::Rng rng(26);
    for (int i = 0; i < 50; ++i) {
        const auto phi = random_phi(rng, 4, 30, 20);
        const CorrectionMatrix<Q> m{rng.rational(9, 9) + Q(10), rng.rational(9, 9), Q(0)};
        const auto pair = m.apply_right(coprod(phi));
        const auto back = pair_roundtrip_check(pair, phi.n);
        EXPECT_EQ(back.u11, m.u11);
        EXPECT_EQ(back.u12, m.u12);
    }
}

TEST(RoundTrip, MismatchCarriesTheResidual) {
    // Not a constant-gram pair: prod gives 0 and the rebuilt pair is (1, 0).
    const Pair bad{P(0, {Q(1), Q(1)}), P()};
    try {
        pair_roundtrip_check(bad, 1);
        FAIL() << "expected RoundTripMismatch";
    } catch (const RoundTripMismatch& e) {
        EXPECT_DOUBLE_EQ(e.residual(), 1.0);
    }
}

TEST(Continuity, SolveMovesBoundedlyUnderSmallPerturbations) {
    oracle::Rng rng(27);
    const double eps = 1e-7;
    for (int i = 0; i < 100; ++i) {
        const int n = static_cast<int>(rng.integer(1, 8));
        std::vector<double> g;
        for (int k = 0; k < n; ++k) g.push_back(rng.uniform(-1, 1));
        const PhiParam<double> phi(n, g);
        auto moved = g;
        moved[static_cast<std::size_t>(rng.integer(0, n - 1))] += eps;
        const auto x0 = solve_system(build_theta(phi)).x;
        const auto x1 = solve_system(build_theta(PhiParam<double>(n, moved))).x;
        for (std::size_t k = 0; k < x0.size(); ++k) EXPECT_LE(std::fabs(x0[k] - x1[k]), 3 * eps);
    }
}
