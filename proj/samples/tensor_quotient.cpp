// Tensor product over K[x] of two diagonal operators, and the two-qubit identity it forces.

#include <iostream>

#include "modtensor/modtensor.hpp"

using namespace modtensor;

int main() {
    const RationalField Q;
    const auto A = Matrix<Rational>::diagonal(Q, {Q.from_int(1), Q.from_int(2)});
    const auto B = Matrix<Rational>::diagonal(Q, {Q.from_int(1), Q.from_int(3)});

    const auto w = relation_subspace<Rational>(OperatorPairKind<Rational>{A, B}, Q, 2, 2);
    std::cout << "relation rank " << w->rank() << ", quotient dimension " << w->quotient_dim() << "\n";

    const auto x = Poly<Rational>::x(Q);
    const auto r = example_61_report(Q.from_int(1), Q.from_int(2), Q.from_int(1), Q.from_int(3), x * x, Q.from_int(1),
                                     Q.from_int(1), Q.from_int(1), Q.from_int(1));
    std::cout << "difference lies in W: " << (r.difference_in_relations ? "yes" : "no") << "\n"
              << "equal before the quotient: " << (r.equal_in_standard ? "yes" : "no") << "\n"
              << "classes agree: " << (r.classes_equal ? "yes" : "no") << "\n";

    const auto scaled = relation_subspace<Rational>(ScaledBranchingKind<Rational>{Q.from_int(2), 1, 1}, Q, 1, 1);
    std::cout << "scaled branching with a = 2 has quotient dimension " << scaled->quotient_dim() << "\n";
    if (const auto caveat = homomorphism_caveat(scaled->kind())) std::cout << *caveat << "\n";
}
