#include <gtest/gtest.h>

#include "ffp/calculus.hpp"
#include "ffp/io.hpp"
#include "ffp/roots.hpp"
#include "test_support.hpp"

using namespace ffp;
using namespace ffp::testing;

TEST(Scalar, RationalIsExact) {
    Q x(7, 3);
    EXPECT_EQ(x * (1 / x), Q(1));
    EXPECT_EQ(format_scalar(Q(-4, 6)), "-2/3");
    EXPECT_EQ(format_scalar(Q(5)), "5/1");
    EXPECT_EQ(parse_rational("-2/3"), Q(-2, 3));
    EXPECT_EQ(parse_rational("0.125"), Q(1, 8));
    EXPECT_THROW(parse_rational("1/0"), ParameterError);
}

TEST(Scalar, PrecisionScopeIsRecorded) {
    PrecisionScope scope(128);
    EXPECT_EQ(current_precision_bits(), 128u);
    BigFloat third = BigFloat(1) / 3;
    EXPECT_NEAR(to_double(third), 1.0 / 3, 1e-15);
}

TEST(FromRoots, Examples) {
    EXPECT_EQ(roots_poly({}), PQ::constant(1));
    EXPECT_EQ(roots_poly({1, 3}).signed_coeffs(), (std::vector<Q>{1, 4, 3}));
    EXPECT_EQ(roots_poly({-1, -1, 1, 1}), mono({1, 0, -2, 0, 1}));
}

TEST(FromRoots, MatchesSchoolbookExpansion) {
    RationalSource src(11);
    for (int t = 0; t < 30; ++t) {
        auto r = src.roots(src.degree(0, 9));
        EXPECT_EQ(roots_poly(r), mono(naive_expand(r)));
    }
}

TEST(Polynomial, SignedConventionRoundTrip) {
    RationalSource src(12);
    for (int t = 0; t < 20; ++t) {
        auto p = src.monic(src.degree(1, 8));
        EXPECT_EQ(PQ::from_monomial(p.monomial_coeffs()), p);
        EXPECT_TRUE(p.is_monic());
        EXPECT_EQ(p.signed_coeffs().size(), p.degree() + 1);
    }
}

TEST(Evaluate, Examples) {
    const auto p = mono({-1, 0, 1});
    EXPECT_EQ(evaluate(p, Q(1)), Q(0));
    EXPECT_EQ(evaluate(p, Q(2)), Q(3));
    EXPECT_EQ(evaluate(PQ::constant(1), Q(17, 5)), Q(1));
}

TEST(Derivative, Examples) {
    EXPECT_EQ(derivative(mono({-1, 0, 1}), 1), mono({0, 2}));
    EXPECT_EQ(derivative(mono({0, 0, 0, 0, 1}), 2), mono({0, 0, 12}));
    EXPECT_EQ(derivative(mono({1, -2, 1}), 1), mono({-2, 2}));
    EXPECT_TRUE(derivative(mono({1, -2, 1}), 3).is_zero());
}

TEST(Derivative, DegreeBookkeeping) {
    RationalSource src(13);
    for (int t = 0; t < 20; ++t) {
        auto p = src.monic(src.degree(1, 10));
        for (std::size_t n = 0; n <= p.degree(); ++n) {
            EXPECT_EQ(derivative(p, n).degree(), p.degree() - n);
            EXPECT_EQ(apply_M(p, n).degree(), p.degree() - n);
        }
    }
}

TEST(ApplyM, Examples) {
    EXPECT_EQ(apply_M(mono({0, 1}), 1), PQ::constant(2));
    EXPECT_EQ(apply_M(mono({1, -2, 1}), 1), mono({-4, 12}));
    EXPECT_EQ(apply_M(roots_poly({1, 1, 1}), 2), mono({-72, 360}));
    EXPECT_THROW(apply_M(mono({0, 1}), 1, Q(-1), Q(4)), ParameterError);
    EXPECT_THROW(apply_M(mono({0, 1}), 1, Q(0), Q(0)), ParameterError);
}

TEST(ApplyM, EqualsTermByTermOperator) {
    // M p = 4((1/2) p' + z p'')
    RationalSource src(14);
    const PQ z = mono({0, 1});
    for (int t = 0; t < 40; ++t) {
        std::vector<Q> c;
        for (std::size_t k = 0, n = src.degree(0, 12); k <= n; ++k) c.push_back(src.next());
        const auto p = mono(c);
        const auto rhs = (derivative(p, 1) * Q(1, 2) + z * derivative(p, 2)) * Q(4);
        EXPECT_EQ(apply_M(p, 1), rhs);
    }
}

TEST(Dilate, Examples) {
    EXPECT_EQ(dilate(mono({-1, 1}), Q(2)), mono({-2, 1}));
    const auto p = mono({1, 0, -2, 0, 1});
    EXPECT_EQ(dilate(p, Q(1)), p);
    EXPECT_EQ(dilate_by_sqrt(p, Q(4)), roots_poly({-2, -2, 2, 2}));
    EXPECT_THROW(dilate(p, Q(0)), ParameterError);
}

TEST(Dilate, Homomorphism) {
    RationalSource src(15);
    for (int t = 0; t < 20; ++t) {
        auto p = src.monic(src.degree(1, 8));
        Q j = src.next(), k = src.next();
        if (j == 0 || k == 0) continue;
        EXPECT_EQ(dilate(dilate(p, k), j), dilate(p, Q(j * k)));
    }
}

TEST(Dilate, SqrtOfNonSquareNeedsEvenPolynomial) {
    EXPECT_THROW(dilate_by_sqrt(mono({-1, 1}), Q(2)), ParameterError);
    EXPECT_EQ(dilate_by_sqrt(mono({-1, 0, 1}), Q(2)), mono({-2, 0, 1}));
}

TEST(Shift, Examples) {
    EXPECT_EQ(shift_argument(mono({0, 0, 1}), Q(1)), mono({1, 2, 1}));
    const auto p = mono({3, -1, 4, 1});
    EXPECT_EQ(shift_argument(p, Q(0)), p);
    EXPECT_EQ(shift_argument(mono({-2, 1}), Q(2)), mono({0, 1}));
}

TEST(MonicNormalize, Examples) {
    auto [a, la] = monic_normalize(mono({-4, 12}));
    EXPECT_EQ(a, mono({Q(-1, 3), 1}));
    EXPECT_EQ(la, Q(12));
    auto [b, lb] = monic_normalize(mono({0, 0, 1}));
    EXPECT_EQ(b, mono({0, 0, 1}));
    EXPECT_EQ(lb, Q(1));
    auto [c, lc] = monic_normalize(mono({2, -2}));
    EXPECT_EQ(c, mono({-1, 1}));
    EXPECT_EQ(lc, Q(-2));
    EXPECT_THROW(monic_normalize(PQ{}), DegenerateInput);
}

TEST(Exactness, FromRootsDerivativeEvaluate) {
    // (z-1)(z-3): D gives 2z - 4, which vanishes at 2
    const auto d = derivative(roots_poly({1, 3}), 1);
    EXPECT_EQ(d, mono({-4, 2}));
    EXPECT_EQ(evaluate(d, Q(2)), Q(0));
}

TEST(RootList, NewtonConsistency) {
    RationalSource src(16);
    for (int t = 0; t < 20; ++t) {
        auto r = src.roots(src.degree(1, 10));
        RootList<Q> rl{r};
        const auto m = moments_from_coeffs(roots_poly(r), 6);
        for (std::size_t j = 1; j <= 6; ++j) {
            EXPECT_EQ(rl.moment(j), power_mean(r, j));
            EXPECT_EQ(m[j], rl.moment(j));
        }
    }
}

TEST(FindRoots, Examples) {
    PrecisionScope scope(256);
    auto check = [](const Polynomial<BigFloat>& p, std::vector<double> want, double tol) {
        auto res = find_roots(p);
        auto got = res.real.roots;
        std::sort(got.begin(), got.end());
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(to_double(got[i]), want[i], tol);
    };
    check(Polynomial<BigFloat>::from_monomial({BigFloat(-1), BigFloat(0), BigFloat(1)}), {-1, 1}, 1e-25);
    std::vector<BigFloat> two(3, BigFloat(2));
    check(from_roots(std::span<const BigFloat>(two)), {2, 2, 2}, 1e-9);  // triple root: cluster tolerance
    check(Polynomial<BigFloat>::from_signed({BigFloat(1), BigFloat(4), BigFloat(3)}), {1, 3}, 1e-25);
}

TEST(PolynomialJson, RoundTrip) {
    const auto p = roots_poly({Q(1, 2), 3, -2});
    const auto j = polynomial_to_json(p);
    EXPECT_EQ(j["degree"], 3);
    EXPECT_EQ(j["convention"], "signed");
    EXPECT_EQ(j["scalar_mode"], "rational");
    EXPECT_EQ(polynomial_from_json<Q>(j), p);
    EXPECT_THROW(polynomial_from_json<Q>(Json{{"degree", 5}, {"coeffs", {"1", "2"}}}), ParameterError);
}
