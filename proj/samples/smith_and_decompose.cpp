// Smith form of xI - A and the resulting module decomposition for a 3x3 operator over Q.

#include <iostream>

#include "modtensor/modtensor.hpp"

using namespace modtensor;

int main() {
    const RationalField Q;
    auto A = Matrix<Rational>::diagonal(Q, {Q.from_int(2), Q.from_int(2), Q.from_int(3)});
    A(0, 1) = Q.one();

    const auto dec = decompose_operator_module(OperatorModule<Rational>(A));
    std::cout << "invariant factors:";
    for (const auto& f : dec.invariant_factors) std::cout << "  " << f.to_string();
    std::cout << "\n";

    for (const auto& c : primary_decomposition(dec).components) {
        std::cout << "prime " << c.prime.to_string() << " exponents";
        for (auto e : c.exponents) std::cout << " " << e;
        std::cout << "\n";
    }

    const auto x = Poly<Rational>::x(Q);
    const auto snf = smith_normal_form(PolyMatrix<Rational>::diagonal(Q, {x, x - Poly<Rational>::constant(Q.one())}));
    std::cout << "diag(x, x - 1) has Smith form diag(";
    for (std::size_t i = 0; i < snf.D.rows(); ++i) std::cout << (i ? ", " : "") << snf.D(i, i).to_string();
    std::cout << ")\n";
}
