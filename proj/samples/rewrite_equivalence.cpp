// Deciding equality of formal sums of pairs, and checking the answer by brute-force rewriting over F2.

#include <iostream>

#include "modtensor/modtensor.hpp"

using namespace modtensor;

int main() {
    const RationalField Q;
    const auto lhs = parse_expression<Rational>("([2,3],[1,1])", Q);
    const auto rhs = parse_expression<Rational>("([1,1],[5,7])", Q);
    const auto A = Matrix<Rational>::diagonal(Q, {Q.from_int(2), Q.from_int(3)});
    const auto B = Matrix<Rational>::diagonal(Q, {Q.from_int(5), Q.from_int(7)});

    std::cout << std::boolalpha << to_expression(lhs) << " vs " << to_expression(rhs) << "\n"
              << "  standard rules: " << decide_equiv(lhs, rhs, RuleSet<Rational>{StandardKind<Rational>{2, 2}}) << "\n"
              << "  operator rules: " << decide_equiv(lhs, rhs, RuleSet<Rational>{OperatorPairKind<Rational>{A, B}})
              << "\n";

    const PrimeField F2(2);
    const auto s = parse_expression<PrimeResidue>("([1,0],[1,1]);([1,0],[0,1])", F2);
    const RuleSet<PrimeResidue> standard{StandardKind<PrimeResidue>{2, 2}};
    const auto reached = closure_oracle(s, standard, {3, 2, 200000});
    std::size_t agree = 0;
    for (const auto& t : reached) agree += decide_equiv(s, t, standard);
    std::cout << reached.size() << " sequences reachable from " << to_expression(s) << ", " << agree
              << " judged equivalent\n";
}
