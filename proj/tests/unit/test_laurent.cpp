#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ratwave/laurent.hpp"

using ratwave::BigRational;
using Q = BigRational;
using P = ratwave::LaurentPoly<BigRational>;
using ratwave::neg_part;
using ratwave::tilde;

namespace {

Q q(const char* s) { return Q::parse(s); }

P random_poly(oracle::Rng& rng, int lo, int hi) {
    const int a = static_cast<int>(rng.integer(lo, hi));
    const int len = static_cast<int>(rng.integer(0, 6));
    std::vector<Q> c;
    for (int i = 0; i < len; ++i) c.push_back(rng.rational(30, 12));
    return P(a, c);
}

} // namespace

TEST(LaurentPoly, TrimsToCanonicalForm) {
    const P p(-2, {Q(0), Q(0), Q(3), Q(0)});
    EXPECT_EQ(p.min_exp(), 0);
    EXPECT_EQ(p.max_exp(), 0);
    EXPECT_EQ(p, P(Q(3)));
    const P zero(5, {Q(0), Q(0)});
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(zero, P());
    EXPECT_LT(zero.max_exp(), zero.min_exp());
    EXPECT_EQ(P(q("1/2")) - P(q("1/2")), P());
}

TEST(LaurentPoly, TildeExamples) {
    EXPECT_EQ(tilde(P(Q(1))), P(Q(1)));
    EXPECT_EQ(tilde(P::monomial(Q(1), 1)), P::monomial(Q(1), -1));
    const P p(0, {q("16/17"), q("1/17")});
    EXPECT_EQ(tilde(p), P(-1, {q("1/17"), q("16/17")}));
}

TEST(LaurentPoly, TildeIsAdditiveInvolutionAndMultiplicative) {
    oracle::Rng rng(1);
    for (int i = 0; i < 300; ++i) {
        const P a = random_poly(rng, -4, 4);
        const P b = random_poly(rng, -4, 4);
        EXPECT_EQ(tilde(tilde(a)), a);
        EXPECT_EQ(tilde(a + b), tilde(a) + tilde(b));
        EXPECT_EQ(tilde(a * b), tilde(b) * tilde(a));
    }
}

TEST(LaurentPoly, NegPartExamples) {
    const P p(-1, {Q(1), Q(1), Q(1)});
    EXPECT_EQ(neg_part(p), P::monomial(Q(1), -1));
    EXPECT_EQ(neg_part(P(Q(5))), P());
    // 1/4 + 1/64 - z/64 - z^-1/4
    const P v(-1, {q("-1/4"), q("1/4") + q("1/64"), q("-1/64")});
    EXPECT_EQ(neg_part(v), P::monomial(q("-1/4"), -1));
}

TEST(LaurentPoly, SplitsIntoNegativeAndCausalParts) {
    oracle::Rng rng(2);
    for (int i = 0; i < 300; ++i) {
        const P p = random_poly(rng, -6, 3);
        const P rest = p - neg_part(p);
        EXPECT_EQ(neg_part(p) + rest, p);
        EXPECT_EQ(neg_part(rest), P());
        EXPECT_EQ(ratwave::pos_part(p), rest);
        EXPECT_TRUE(neg_part(p).is_zero() || neg_part(p).max_exp() < 0);
    }
}

TEST(LaurentPoly, RingOperations) {
    const P one_plus_z(0, {Q(1), Q(1)});
    const P one_minus_z(0, {Q(1), Q(-1)});
    EXPECT_EQ(one_plus_z * one_minus_z, P(0, {Q(1), Q(0), Q(-1)}));
    EXPECT_EQ(ratwave::substitute_neg_z(one_plus_z), one_minus_z);
    const P h0(0, {q("12/17"), q("20/17"), q("5/17"), q("-3/17")});
    EXPECT_EQ(h0.evaluate_at_one(), Q(2));
    EXPECT_EQ(one_plus_z.shifted(-3), P(-3, {Q(1), Q(1)}));
    EXPECT_EQ(h0.scaled(Q(17)), P(0, {Q(12), Q(20), Q(5), Q(-3)}));
    EXPECT_EQ(h0 / Q(2), h0.scaled(q("1/2")));
}

TEST(LaurentPoly, ProductAgreesWithPointEvaluation) {
    // Evaluation at a nonzero point is a ring homomorphism.
    oracle::Rng rng(3);
    const std::vector<Q> points{q("2"), q("-1/3"), q("5/7"), q("-3")};
    for (int i = 0; i < 200; ++i) {
        const P a = random_poly(rng, -5, 5);
        const P b = random_poly(rng, -5, 5);
        for (const auto& z : points) {
            EXPECT_EQ((a * b).evaluate(z), a.evaluate(z) * b.evaluate(z));
            EXPECT_EQ((a - b).evaluate(z), a.evaluate(z) - b.evaluate(z));
            EXPECT_EQ(ratwave::substitute_neg_z(a).evaluate(z), a.evaluate(-z));
            EXPECT_EQ(tilde(a).evaluate(z), a.evaluate(Q(1) / z));
        }
    }
}

TEST(LaurentPoly, SeriesInverseExamples) {
    EXPECT_EQ(ratwave::series_inverse_trunc(P(Q(1)), 3), P(Q(1)));
    const P a(0, {q("16/17"), q("1/17")});
    EXPECT_EQ(ratwave::series_inverse_trunc(a, 1), P(0, {q("17/16"), q("-17/256")}));
    EXPECT_THROW(ratwave::series_inverse_trunc(P::monomial(Q(1), 1), 1), ratwave::ZeroConstantTerm);
    EXPECT_THROW(ratwave::series_inverse_trunc(P(-1, {Q(1), Q(1)}), 1), ratwave::InvalidArgument);
}

TEST(LaurentPoly, SeriesInverseTimesInputIsOneThroughDegreeN) {
    oracle::Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        P p = random_poly(rng, 0, 0);
        if (p.coeff(0).is_zero()) p = p + P(Q(1));
        const int n = static_cast<int>(rng.integer(0, 8));
        const P inv = ratwave::series_inverse_trunc(p, n);
        EXPECT_LE(inv.max_exp(), n);
        EXPECT_EQ(ratwave::pos_part(p * inv, n), P(Q(1)));
    }
}

TEST(LaurentPoly, FloatModeTrimsExactZerosOnly) {
    using F = ratwave::LaurentPoly<double>;
    const F p(0, {1.0, 1e-300, 0.0});
    EXPECT_EQ(p.max_exp(), 1);
    const F inv = ratwave::series_inverse_trunc(F(0, {2.0, 1.0}), 4);
    EXPECT_NEAR(inv.coeff(4), 1.0 / 32.0, 1e-15);
    EXPECT_DOUBLE_EQ(ratwave::max_abs_coeff(F(-2, {0.5, -3.0})), 3.0);
}
