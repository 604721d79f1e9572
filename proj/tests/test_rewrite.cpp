#include <gtest/gtest.h>

#include <set>

#include "modtensor/modtensor.hpp"
#include "support/oracles.hpp"

using namespace modtensor;

namespace {

const RationalField Q;
const PrimeField F2(2), F3(3);

FormalSequence<Rational> parse_q(const char* text) { return parse_expression<Rational>(text, Q); }

template <class Field>
auto single(const Field& f, std::initializer_list<long long> x, std::initializer_list<long long> y) {
    using F = decltype(f.one());
    Vec<F> vx, vy;
    for (auto k : x) vx.push_back(f.from_int(k));
    for (auto k : y) vy.push_back(f.from_int(k));
    return FormalSequence<F>({{vx, vy}});
}

template <FieldElement F>
bool contains(const std::vector<FormalSequence<F>>& closure, const FormalSequence<F>& t) {
    return std::find(closure.begin(), closure.end(), t) != closure.end();
}

} // namespace

TEST(Parser, Examples) {
    const auto s = parse_q("([1,0],[0,1])");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.pairs()[0].x, unit_vector<Rational>(Q, 2, 0));
    EXPECT_EQ(s.pairs()[0].y, unit_vector<Rational>(Q, 2, 1));

    const auto bell = parse_q("([1,0],[1,0]);([0,1],[0,1])");
    EXPECT_EQ(bell.size(), 2u);

    const auto r = parse_q(" ( [1/2 , -3] ,\n [0,1] ) ");
    EXPECT_EQ(r.pairs()[0].x, (Vec<Rational>{Q.parse("1/2"), Q.from_int(-3)}));
    EXPECT_EQ(parse_q(to_expression(r).c_str()), r);
    EXPECT_EQ(to_expression(r), "([1/2,-3],[0,1])");

    const GaussianField qi;
    const auto g = parse_expression<GaussianRational>("([1+i,-i],[1/2])", qi);
    EXPECT_EQ(g.pairs()[0].x[0], qi.parse("1+i"));
    EXPECT_EQ(parse_expression<GaussianRational>(to_expression(g), qi), g);

    const PrimeField f5(5);
    EXPECT_EQ(parse_expression<PrimeResidue>("([1/2],[7])", f5).pairs()[0].x[0], f5.element(3));
}

TEST(Parser, ErrorsCarryPositions) {
    try {
        parse_q("([1,0],\n [0,x])");
        FAIL() << "expected a syntax error";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 5u);
    }
    try {
        parse_q("([1,0] [0,1])");
        FAIL() << "expected a syntax error";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 8u);
    }
    EXPECT_THROW(parse_q(""), SyntaxError);
    EXPECT_THROW(parse_q("([],[1])"), SyntaxError);
    EXPECT_THROW(parse_q("([1],[1]);"), SyntaxError);
    EXPECT_THROW(parse_q("([1],[1]) extra"), SyntaxError);
    EXPECT_THROW(parse_q("([1],[1/0])"), SyntaxError);
    EXPECT_THROW(parse_q("([1],[1]);([1,2],[1])"), DimensionMismatch);
}

TEST(Parser, RoundTripProperty) {
    oracle::Gen gen(201);
    for (int t = 0; t < 100; ++t) {
        const auto s = oracle::random_sequence(gen, Q, gen.index(1, 3), gen.index(1, 3), gen.index(1, 3));
        const auto text = to_expression(s);
        EXPECT_EQ(parse_q(text.c_str()), s) << text;
        EXPECT_EQ(to_expression(parse_q(text.c_str())), text);
    }
}

TEST(Sequence, Invariants) {
    EXPECT_THROW(FormalSequence<Rational>({}), DimensionMismatch);
    EXPECT_THROW(FormalSequence<Rational>({{{}, {Q.one()}}}), DimensionMismatch);
    const PrimeField f5(5);
    EXPECT_THROW(FormalSequence<PrimeResidue>({{{F3.one()}, {f5.one()}}}), TagMismatch);
}

TEST(Concatenate, Examples) {
    const auto s = parse_q("([1,0],[0,1])"), t = parse_q("([0,1],[1,1]);([2,2],[1,0])");
    const auto st = concatenate(s, t), ts = concatenate(t, s);
    EXPECT_EQ(st.size(), 3u);
    EXPECT_EQ(linearize(st), linearize(s) + linearize(t));
    EXPECT_NE(st, ts);
    EXPECT_TRUE(decide_equiv(st, ts, RuleSet<Rational>{StandardKind<Rational>{2, 2}}));
    EXPECT_THROW(concatenate(s, parse_q("([1],[1])")), DimensionMismatch);
}

TEST(Linearize, Examples) {
    EXPECT_EQ(linearize(parse_q("([1,2],[3,4])")).coords, tensor_coordinates(Vec<Rational>{Q.from_int(1), Q.from_int(2)},
                                                                              Vec<Rational>{Q.from_int(3), Q.from_int(4)})
                                                               .coords);
    EXPECT_TRUE(is_zero(linearize(parse_q("([1,2],[3,4]);([-1,-2],[3,4])")).coords));
    EXPECT_EQ(linearize(parse_q("([1,0],[1,0]);([0,1],[0,1])")).coords,
              (Vec<Rational>{Q.one(), Q.zero(), Q.zero(), Q.one()}));
}

TEST(Decide, Examples) {
    const RuleSet<Rational> standard{StandardKind<Rational>{2, 2}};
    const auto s = parse_q("([1,2],[3,4])");
    EXPECT_TRUE(decide_equiv(s, s, standard));
    EXPECT_TRUE(decide_equiv(s, parse_q("([1,0],[3,4]);([0,2],[3,4])"), standard));
    EXPECT_TRUE(decide_equiv(s, parse_q("([1,2],[1,4]);([1,2],[2,0])"), standard));
    EXPECT_FALSE(decide_equiv(s, parse_q("([3,4],[1,2])"), standard));

    // (pi(A) x) (x) y vs x (x) (pi(B) y) with A = diag(2,3), B = diag(5,7), pi = x, x = y = (1,1)
    const auto lhs = parse_q("([2,3],[1,1])"), rhs = parse_q("([1,1],[5,7])");
    const auto a = Matrix<Rational>::diagonal(Q, {Q.from_int(2), Q.from_int(3)});
    const auto b = Matrix<Rational>::diagonal(Q, {Q.from_int(5), Q.from_int(7)});
    EXPECT_TRUE(decide_equiv(lhs, rhs, RuleSet<Rational>{OperatorPairKind<Rational>{a, b}}));
    EXPECT_FALSE(decide_equiv(lhs, rhs, standard));

    EXPECT_THROW(decide_equiv(s, parse_q("([1],[1])"), standard), DimensionMismatch);
}

TEST(Decide, StandardRulesPreserveLinearization) {
    oracle::Gen gen(211);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = gen.index(1, 3), m = gen.index(1, 3);
        auto s = oracle::random_sequence(gen, Q, n, m, gen.index(1, 3));
        auto u = s;
        for (int k = 0; k < 5; ++k) {
            u = oracle::apply_standard_rule(gen, Q, u);
            EXPECT_EQ(linearize(u), linearize(s));
        }
        EXPECT_TRUE(decide_equiv(s, u, RuleSet<Rational>{StandardKind<Rational>{n, m}}));
    }
}

TEST(Decide, OperatorRulePreservesClass) {
    oracle::Gen gen(223);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = gen.index(1, 3), m = gen.index(1, 3);
        const auto a = gen.structured_matrix(Q, n), b = gen.structured_matrix(Q, m);
        const auto w = relation_subspace<Rational>(OperatorPairKind<Rational>{a, b}, Q, n, m);
        const auto s = oracle::random_sequence(gen, Q, n, m, gen.index(1, 2));
        auto u = s;
        for (int k = 0; k < 3; ++k) u = oracle::apply_operator_rule(gen, Q, u, a, b);
        EXPECT_EQ(project_to_quotient(linearize(u), w), project_to_quotient(linearize(s), w));
        EXPECT_TRUE(decide_equiv(s, u, *w));
    }
}

TEST(Decide, ZeroPairsAreAbsorbed) {
    oracle::Gen gen(227);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = gen.index(1, 3), m = gen.index(1, 3);
        const auto a = gen.structured_matrix(Q, n), b = gen.structured_matrix(Q, m);
        const RuleSet<Rational> rules{OperatorPairKind<Rational>{a, b}};
        const auto s = oracle::random_sequence(gen, Q, n, m, 2), u = oracle::random_sequence(gen, Q, n, m, 2);
        const FormalSequence<Rational> zx({{gen.vector(Q, n), zero_vector<Rational>(Q, m)}});
        const FormalSequence<Rational> zy({{zero_vector<Rational>(Q, n), gen.vector(Q, m)}});
        EXPECT_TRUE(is_zero(linearize(zx).coords));
        EXPECT_TRUE(is_zero(linearize(zy).coords));
        const bool base = decide_equiv(s, u, rules);
        EXPECT_EQ(decide_equiv(concatenate(s, zx), u, rules), base);
        EXPECT_EQ(decide_equiv(s, concatenate(zy, u), rules), base);
    }
}

TEST(Closure, ZeroBudgetIsTheStart) {
    const auto s = single(F2, {1, 0}, {1, 1});
    const auto closure = closure_oracle(s, RuleSet<PrimeResidue>{StandardKind<PrimeResidue>{2, 2}}, {0, 3, 1000});
    ASSERT_EQ(closure.size(), 1u);
    EXPECT_EQ(closure[0], s);
}

TEST(Closure, SmallStandardCase) {
    const auto s = single(F2, {1}, {1});
    const auto closure = closure_oracle(s, RuleSet<PrimeResidue>{StandardKind<PrimeResidue>{1, 1}}, {4, 1, 1000});
    EXPECT_LE(closure.size(), 4u);
    EXPECT_TRUE(contains(closure, s));
    for (const auto& t : closure) EXPECT_TRUE(decide_equiv(s, t, RuleSet<PrimeResidue>{StandardKind<PrimeResidue>{1, 1}}));
}

TEST(Closure, ZeroPairChain) {
    // (0, y) ~ (x, 0) through the scalar rule with c = 0
    const auto s = single(F3, {0}, {1});
    const auto closure = closure_oracle(s, RuleSet<PrimeResidue>{StandardKind<PrimeResidue>{1, 1}}, {2, 1, 1000});
    for (long long x = 0; x < 3; ++x) EXPECT_TRUE(contains(closure, single(F3, {x}, {0}))) << x;
    for (long long y = 0; y < 3; ++y) EXPECT_TRUE(contains(closure, single(F3, {0}, {y}))) << y;
    EXPECT_FALSE(contains(closure, single(F3, {1}, {1})));
}

TEST(Closure, LengthOneStatesMatchDecider) {
    // over F_3 with n = m = 1 the standard classes of single pairs are {x y = k}
    const RuleSet<PrimeResidue> standard{StandardKind<PrimeResidue>{1, 1}};
    const auto s = single(F3, {1}, {1});
    const auto closure = closure_oracle(s, standard, {4, 2, 100000});
    for (long long x = 0; x < 3; ++x)
        for (long long y = 0; y < 3; ++y) {
            const auto t = single(F3, {x}, {y});
            EXPECT_EQ(contains(closure, t), decide_equiv(s, t, standard)) << x << y;
        }
}

TEST(Closure, SoundAgainstDecider) {
    oracle::Gen gen(229);
    std::size_t checked = 0;
    for (int t = 0; t < 12; ++t) {
        const auto a = gen.matrix(F2, 2, 2), b = gen.matrix(F2, 2, 2);
        const std::vector<RuleSet<PrimeResidue>> rulesets{RuleSet<PrimeResidue>{StandardKind<PrimeResidue>{2, 2}},
                                                          RuleSet<PrimeResidue>{OperatorPairKind<PrimeResidue>{a, b}}};
        const auto s = oracle::random_sequence(gen, F2, 2, 2, gen.index(1, 2));
        for (const auto& rules : rulesets) {
            const auto w = relation_subspace<PrimeResidue>(rules.kind, F2, 2, 2);
            for (const auto& u : closure_oracle(s, rules, {2, 3, 200000})) {
                EXPECT_TRUE(decide_equiv(s, u, *w)) << to_expression(s) << " -> " << to_expression(u);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 100u);
}

TEST(Closure, Errors) {
    const auto s = single(F2, {1}, {1});
    EXPECT_THROW(closure_oracle(s, RuleSet<PrimeResidue>{StandardKind<PrimeResidue>{1, 1}}, {4, 3, 2}), BudgetExceeded);
    EXPECT_THROW(closure_oracle(concatenate(s, s), RuleSet<PrimeResidue>{StandardKind<PrimeResidue>{1, 1}}, {4, 1, 100}),
                 BudgetExceeded);
    EXPECT_THROW(closure_oracle(s, RuleSet<PrimeResidue>{StandardKind<PrimeResidue>{2, 1}}, {}), DimensionMismatch);
}
