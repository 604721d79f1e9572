#include <gtest/gtest.h>

#include "modtensor/modtensor.hpp"
#include "support/oracles.hpp"

using namespace modtensor;

namespace {

const RationalField Q;
const GaussianField QI;
const PrimeField F2(2), F3(3), F5(5);

template <class Field>
auto P(const Field& f, std::initializer_list<long long> coeffs) {
    using F = decltype(f.one());
    std::vector<F> c;
    for (auto k : coeffs) c.push_back(f.from_int(k));
    return Poly<F>(f, std::move(c));
}

template <class Field>
auto X(const Field& f) {
    return Poly<decltype(f.one())>::x(f);
}

} // namespace

TEST(Poly, TrimsAndReportsDegree) {
    EXPECT_EQ(P(Q, {1, 2, 0, 0}).degree(), 1);
    EXPECT_TRUE(P(Q, {0, 0}).is_zero());
    EXPECT_EQ(P(Q, {}).degree(), -1);
    EXPECT_TRUE(P(Q, {3}).is_constant());
    EXPECT_EQ(P(Q, {2, 4}).monic(), Poly<Rational>(Q, {Q.parse("1/2"), Q.one()}));
    EXPECT_THROW(Poly<PrimeResidue>(F5, {F3.one()}), TagMismatch);
}

TEST(Poly, Printing) {
    EXPECT_EQ(P(Q, {1, -3, 1}).to_string(), "x^2 - 3x + 1");
    EXPECT_EQ(P(Q, {}).to_string(), "0");
    EXPECT_EQ(P(Q, {0, -1}).to_string(), "-x");
    EXPECT_EQ((X(QI) - Poly<GaussianRational>::constant(QI.parse("1+i"))).to_string(), "x + (-1-i)");
}

TEST(Poly, DivmodExamples) {
    auto [q1, r1] = divmod(P(Q, {1, 1}), P(Q, {1, 1}));
    EXPECT_EQ(q1, P(Q, {1}));
    EXPECT_TRUE(r1.is_zero());

    auto [q2, r2] = divmod(P(Q, {}), P(Q, {3, 1}));
    EXPECT_TRUE(q2.is_zero());
    EXPECT_TRUE(r2.is_zero());

    // x^2 + 1 = (x + 1)(x - 1) + 2
    auto [q3, r3] = divmod(P(Q, {1, 0, 1}), P(Q, {-1, 1}));
    EXPECT_EQ(q3, P(Q, {1, 1}));
    EXPECT_EQ(r3, P(Q, {2}));
    EXPECT_EQ(q3 * P(Q, {-1, 1}) + r3, P(Q, {1, 0, 1}));

    EXPECT_THROW(divmod(P(Q, {1}), P(Q, {})), DivisionByZero);
}

TEST(Poly, GcdExamples) {
    EXPECT_EQ(gcd(P(Q, {2, 4}), P(Q, {})), P(Q, {2, 4}).monic());
    EXPECT_EQ(gcd(P(Q, {-1, 0, 1}), P(Q, {-1, 1})), P(Q, {-1, 1}));
    EXPECT_THROW(gcd(P(Q, {}), P(Q, {})), BothZero);

    oracle::Gen gen(3);
    const auto shared = P(Q, {2, 1});
    for (int t = 0; t < 30; ++t) {
        auto a = gen.poly(Q, 3), b = gen.poly(Q, 3);
        if (a.is_zero() || b.is_zero()) continue;
        const auto g = gcd(a * shared, b * shared);
        EXPECT_TRUE(divides(shared, g));
        EXPECT_TRUE(g.is_monic());
    }
}

TEST(Poly, EvaluateOperatorExamples) {
    oracle::Gen gen(5);
    const auto a = gen.matrix(Q, 3, 3);
    EXPECT_EQ(poly_eval_operator(X(Q), a), a);
    EXPECT_EQ(poly_eval_operator(P(Q, {1}), a), Matrix<Rational>::identity(Q, 3));
    EXPECT_TRUE(poly_eval_operator(P(Q, {}), a).is_zero());

    // diagonal operators act entrywise
    const auto pi = P(Q, {1, -2, 0, 3});
    const auto d = Matrix<Rational>::diagonal(Q, {Q.from_int(2), Q.parse("-1/3")});
    EXPECT_EQ(poly_eval_operator(pi, d), Matrix<Rational>::diagonal(Q, {pi(Q.from_int(2)), pi(Q.parse("-1/3"))}));

    // Cayley-Hamilton with the permutation-expansion characteristic polynomial
    EXPECT_TRUE(poly_eval_operator(oracle::charpoly(a), a).is_zero());

    EXPECT_THROW(poly_eval_operator(pi, gen.matrix(Q, 2, 3)), NonSquare);
    EXPECT_THROW(poly_eval_operator(P(F5, {1, 1}), Matrix<PrimeResidue>::identity(F3, 2)), TagMismatch);
}

TEST(Poly, SquarefreeExamples) {
    auto sqf = squarefree_decomposition(P(Q, {-2, 1, 1}));
    ASSERT_EQ(sqf.size(), 1u);
    EXPECT_EQ(sqf[0].multiplicity, 1u);

    // (x - 1)^2 (x + 2)
    auto g = P(Q, {-1, 1}) * P(Q, {-1, 1}) * P(Q, {2, 1});
    auto dec = squarefree_decomposition(g * Poly<Rational>::constant(Q.from_int(3)));
    ASSERT_EQ(dec.size(), 2u);
    EXPECT_EQ(dec[0].factor, P(Q, {2, 1}));
    EXPECT_EQ(dec[0].multiplicity, 1u);
    EXPECT_EQ(dec[1].factor, P(Q, {-1, 1}));
    EXPECT_EQ(dec[1].multiplicity, 2u);

    // x^3 - x over F_3: three linear factors
    auto cube = squarefree_decomposition(P(F3, {0, -1, 0, 1}));
    ASSERT_EQ(cube.size(), 1u);
    EXPECT_EQ(cube[0].multiplicity, 1u);
    EXPECT_EQ(oracle::brute_force_roots(cube[0].factor).size(), 3u);

    // p-th powers over F_p: (x + 1)^3 * x over F_3
    auto pth = squarefree_decomposition(pow(P(F3, {1, 1}), 3) * X(F3));
    ASSERT_EQ(pth.size(), 2u);
    EXPECT_EQ(pth[0].factor, X(F3));
    EXPECT_EQ(pth[1].factor, P(F3, {1, 1}));
    EXPECT_EQ(pth[1].multiplicity, 3u);

    EXPECT_THROW(squarefree_decomposition(P(Q, {})), ZeroPolynomial);
}

TEST(Factor, Examples) {
    auto r = factor_irreducible(P(Q, {-1, 0, 1}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].factor, P(Q, {-1, 1}));
    EXPECT_EQ(r[1].factor, P(Q, {1, 1}));

    auto g = factor_irreducible(P(QI, {1, 0, 1}));
    ASSERT_EQ(g.size(), 2u);
    const auto i = GaussianRational::i();
    EXPECT_EQ(expand(QI, g), P(QI, {1, 0, 1}));
    for (const auto& fp : g) {
        EXPECT_EQ(fp.factor.degree(), 1);
        EXPECT_TRUE(fp.factor(i).is_zero() || fp.factor(-i).is_zero());
    }

    const auto quartic = P(F2, {1, 1, 0, 0, 1});
    auto f2 = factor_irreducible(quartic);
    ASSERT_EQ(f2.size(), 1u);
    EXPECT_EQ(f2[0].factor, quartic);
    EXPECT_TRUE(oracle::brute_force_irreducible(quartic));

    EXPECT_THROW(factor_irreducible(P(Q, {})), ZeroPolynomial);
    EXPECT_THROW(factor_irreducible(P(Q, {4})), ConstantPolynomial);
}

TEST(Factor, RationalQuadraticAndCubicPaths) {
    // x^2 - 2 has no rational root, so it is prime in Q[x]
    auto q2 = factor_irreducible(P(Q, {-2, 0, 1}));
    ASSERT_EQ(q2.size(), 1u);
    EXPECT_EQ(q2[0].factor, P(Q, {-2, 0, 1}));
    // (2x - 1)(3x + 2) with non-integral roots
    auto r = factor_irreducible(P(Q, {-2, 1, 6}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(expand(Q, r), P(Q, {-2, 1, 6}).monic());
    // an irreducible cubic (no rational roots) is reported as prime
    auto c = factor_irreducible(P(Q, {-2, 0, 0, 1}));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].factor.degree(), 3);
    // x^4 + 2 is irreducible but undecidable by root extraction
    EXPECT_THROW(factor_irreducible(P(Q, {2, 0, 0, 0, 1})), FactorizationIncomplete);
    // x^2 + 4 splits over Q(i)
    auto gi = factor_irreducible(P(QI, {4, 0, 1}));
    EXPECT_EQ(gi.size(), 2u);
    // x^2 - 2i = (x - (1+i))(x + (1+i)) over Q(i)
    auto sq = factor_irreducible(X(QI) * X(QI) - Poly<GaussianRational>::constant(QI.parse("2i")));
    EXPECT_EQ(sq.size(), 2u);
}

TEST(Factor, PrimeFieldAgainstBruteForce) {
    oracle::Gen gen(17);
    for (const auto& field : {F2, F3, F5}) {
        for (int t = 0; t < 40; ++t) {
            auto f = gen.monic_poly(field, gen.integer(1, 6));
            auto fac = factor_irreducible(f);
            EXPECT_EQ(expand(field, fac), f);
            for (std::size_t k = 0; k < fac.size(); ++k) {
                EXPECT_TRUE(oracle::brute_force_irreducible(fac[k].factor)) << fac[k].factor.to_string();
                for (std::size_t l = k + 1; l < fac.size(); ++l) EXPECT_NE(fac[k].factor, fac[l].factor);
            }
        }
    }
}

TEST(Factor, LargePrimeField) {
    const PrimeField big(1000003);
    oracle::Gen gen(19);
    for (int t = 0; t < 10; ++t) {
        auto f = gen.monic_poly(big, 5);
        auto fac = factor_irreducible(f);
        EXPECT_EQ(expand(big, fac), f);
    }
}
