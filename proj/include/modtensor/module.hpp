#pragma once

// K[x]-module structures.
//
// An operator A on E = K^n makes E a K[x]-module through pi . v = pi(A) v.
// Conversely every K[x]-module structure on E comes from the operator
// v -> x . v. Finitely generated modules are handled through presentations
// (generators modulo the column span of a polynomial matrix) and classified by
// the Smith normal form: M = R^s + R/(a_1) + ... + R/(a_r), a_i | a_{i+1}.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "modtensor/errors.hpp"
#include "modtensor/factor.hpp"
#include "modtensor/matrix.hpp"
#include "modtensor/poly.hpp"
#include "modtensor/smith.hpp"

namespace modtensor {

/// K^n with the module action induced by a square operator.
template <FieldElement F>
class OperatorModule {
public:
    explicit OperatorModule(Matrix<F> op) : op_(std::move(op)) {
        if (!op_.is_square()) throw NonSquare();
        if (op_.rows() == 0) throw DimensionMismatch("operator module needs dimension >= 1");
    }

    const field_of<F>& field() const { return op_.field(); }
    std::size_t dim() const { return op_.rows(); }
    const Matrix<F>& op() const { return op_; }

private:
    Matrix<F> op_;
};

/// R^g modulo the column span of `presentation` (g rows, one column per relation).
template <FieldElement F>
class PresentedModule {
public:
    explicit PresentedModule(PolyMatrix<F> presentation) : rel_(std::move(presentation)) {
        if (rel_.rows() == 0) throw DimensionMismatch("presented module needs at least one generator");
    }

    std::size_t generators() const { return rel_.rows(); }
    const PolyMatrix<F>& presentation() const { return rel_; }

private:
    PolyMatrix<F> rel_;
};

/// free rank s and monic nonconstant invariant factors a_1 | ... | a_r.
template <FieldElement F>
struct ModuleDecomposition {
    std::size_t free_rank = 0;
    std::vector<Poly<F>> invariant_factors;

    friend bool operator==(const ModuleDecomposition&, const ModuleDecomposition&) = default;
};

template <FieldElement F>
struct PrimaryComponent {
    Poly<F> prime;
    std::vector<std::size_t> exponents; // nondecreasing

    friend bool operator==(const PrimaryComponent&, const PrimaryComponent&) = default;
};

/// Torsion part as a sum of R/(p^alpha) over pairwise different primes p.
template <FieldElement F>
struct PrimaryDecomposition {
    std::vector<PrimaryComponent<F>> components;

    friend bool operator==(const PrimaryDecomposition&, const PrimaryDecomposition&) = default;
};

struct TorsionFlags {
    bool is_torsion = false;
    bool is_torsion_free = false;
    bool is_free = false;

    friend bool operator==(const TorsionFlags&, const TorsionFlags&) = default;
};

/// pi . x = pi(A) x
template <FieldElement F>
Vec<F> module_action(const OperatorModule<F>& m, const Poly<F>& pi, const Vec<F>& x) {
    if (x.size() != m.dim()) throw DimensionMismatch("vector length differs from module dimension");
    return poly_eval_operator(pi, m.op()) * x;
}

template <FieldElement F>
using ActionOracle = std::function<Vec<F>(const Poly<F>&, const Vec<F>&)>;

/// Recovers the operator of a K[x]-module structure on K^dim: column j is x . e_j.
/// Spot-checks 1 . e_j = e_j and x^2 . e_j = A (A e_j).
template <FieldElement F>
Matrix<F> operator_from_action(const ActionOracle<F>& act, const field_of<F>& field, std::size_t dim) {
    if (dim == 0) throw DimensionMismatch("dimension must be >= 1");
    const auto xi = Poly<F>::x(field);
    std::vector<Vec<F>> cols;
    for (std::size_t j = 0; j < dim; ++j) {
        Vec<F> image = act(xi, unit_vector<F>(field, dim, j));
        if (image.size() != dim) throw InconsistentAction("image has the wrong length");
        cols.push_back(std::move(image));
    }
    Matrix<F> a = Matrix<F>::from_columns(field, dim, cols);
    const auto one = Poly<F>::constant(field.one());
    const auto xi2 = xi * xi;
    for (std::size_t j = 0; j < dim; ++j) {
        const Vec<F> e = unit_vector<F>(field, dim, j);
        if (act(one, e) != e) throw InconsistentAction("1 does not act as the identity");
        if (act(xi2, e) != a * cols[j]) throw InconsistentAction("x^2 . e_j differs from x . (x . e_j)");
    }
    return a;
}

namespace detail {

template <FieldElement F>
ModuleDecomposition<F> decomposition_from_smith(const SmithForm<F>& snf, std::size_t generators) {
    ModuleDecomposition<F> dec;
    std::size_t nonzero = 0;
    for (const auto& d : snf.diagonal()) {
        ++nonzero;
        if (!d.is_constant()) dec.invariant_factors.push_back(d);
    }
    dec.free_rank = generators - nonzero;
    return dec;
}

} // namespace detail

/// Invariant factors of E under A: the nonconstant entries of SNF(xI - A).
template <FieldElement F>
ModuleDecomposition<F> decompose_operator_module(const OperatorModule<F>& m) {
    return detail::decomposition_from_smith(smith_normal_form(characteristic_matrix(m.op())), m.dim());
}

template <FieldElement F>
ModuleDecomposition<F> decompose_presented_module(const PresentedModule<F>& m) {
    return detail::decomposition_from_smith(smith_normal_form(m.presentation()), m.generators());
}

/// Last invariant factor of xI - A.
template <FieldElement F>
Poly<F> minimal_polynomial(const Matrix<F>& a) {
    auto dec = decompose_operator_module(OperatorModule<F>(a));
    return dec.invariant_factors.back();
}

/// Splits every invariant factor into prime powers and groups exponents by prime.
/// Throws FactorizationIncomplete when some factor cannot be split.
template <FieldElement F>
PrimaryDecomposition<F> primary_decomposition(const ModuleDecomposition<F>& dec) {
    std::map<Poly<F>, std::vector<std::size_t>> by_prime;
    for (const auto& a : dec.invariant_factors)
        for (const auto& [prime, mult] : factor_irreducible(a)) by_prime[prime].push_back(mult);
    PrimaryDecomposition<F> out;
    for (auto& [prime, exps] : by_prime) {
        // the chain a_i | a_{i+1} already makes these nondecreasing
        std::sort(exps.begin(), exps.end());
        out.components.push_back({prime, std::move(exps)});
    }
    return out;
}

/// Rebuilds the invariant-factor chain from elementary divisors: the largest
/// factor takes the highest power of every prime, the next one the second
/// highest, and so on.
template <FieldElement F>
std::vector<Poly<F>> recombine(const PrimaryDecomposition<F>& primary, const field_of<F>& field) {
    std::size_t r = 0;
    for (const auto& c : primary.components) r = std::max(r, c.exponents.size());
    std::vector<Poly<F>> chain(r, Poly<F>::constant(field.one()));
    for (const auto& c : primary.components) {
        const std::size_t offset = r - c.exponents.size();
        for (std::size_t k = 0; k < c.exponents.size(); ++k)
            chain[offset + k] = chain[offset + k] * pow(c.prime, c.exponents[k]);
    }
    return chain;
}

/// Free iff torsion-free for finitely generated modules over a PID; both flags
/// are computed from the same test.
template <FieldElement F>
TorsionFlags torsion_info(const ModuleDecomposition<F>& dec) {
    TorsionFlags f;
    f.is_torsion = dec.free_rank == 0;
    f.is_torsion_free = dec.invariant_factors.empty();
    f.is_free = f.is_torsion_free;
    return f;
}

/// s + r
template <FieldElement F>
std::size_t minimal_generator_count(const ModuleDecomposition<F>& dec) {
    return dec.free_rank + dec.invariant_factors.size();
}

/// Some operator A with A x = y: the rank-one map y e_k^T / x_k for the first nonzero x_k.
template <FieldElement F>
Matrix<F> cyclic_witness(const Vec<F>& x, const Vec<F>& y) {
    if (x.size() != y.size()) throw DimensionMismatch("x and y lengths differ");
    std::size_t k = 0;
    while (k < x.size() && x[k].is_zero()) ++k;
    if (k == x.size()) throw ZeroVector();
    const auto& field = x[k].field();
    Matrix<F> a(field, x.size(), x.size());
    const F inv = x[k].inv();
    for (std::size_t i = 0; i < y.size(); ++i) a(i, k) = y[i] * inv;
    return a;
}

} // namespace modtensor
