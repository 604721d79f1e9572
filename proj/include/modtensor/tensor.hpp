#pragma once

// Generalized tensor products of E = K^n and F = K^m as quotients of the
// ordinary tensor product K^(nm).
//
// Every variant replaces the scalar-moving rule (c x, y) ~ (x, c y) by a rule
// of the form (pi(M) x, y) ~ (x, pi(N) y) for some pair of operators (M, N):
//
//   standard         M = I,     N = I         (pi ranges over constants)
//   operator pair    M = A,     N = B
//   subring K[p]     M = p(A),  N = p(B)
//   branching f, g   M = phi(A), N = psi(B)   (f: x -> phi, g: x -> psi)
//
// Linearizing, the relations span W = span{ pi(M)x (x) y - x (x) pi(N)y }.
// For pi = x^k the difference telescopes,
//   M^k x (x) y - x (x) N^k y
//     = sum_i ( M^{i+1} x (x) N^{k-1-i} y - M^i x (x) N^{k-i} y ),
// and each summand is a degree-one relation applied to (M^i x, N^{k-1-i} y),
// so W is the image of the Sylvester operator M (x) I - I (x) N. The quotient
// (K^n (x) K^m) / W is represented by canonical coordinates: the residual
// after eliminating the pivot coordinates of W's reduced echelon basis.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "modtensor/errors.hpp"
#include "modtensor/matrix.hpp"
#include "modtensor/module.hpp"
#include "modtensor/poly.hpp"

namespace modtensor {

/// Coordinates of an element of K^n (x) K^m; index i*m + j holds the e_i (x) f_j coefficient.
template <FieldElement F>
struct TensorElement {
    std::size_t n = 0;
    std::size_t m = 0;
    Vec<F> coords;

    friend bool operator==(const TensorElement&, const TensorElement&) = default;
};

template <FieldElement F>
TensorElement<F> tensor_coordinates(const Vec<F>& x, const Vec<F>& y) {
    if (x.empty() || y.empty()) throw DimensionMismatch("tensor factors must be nonempty");
    if (x.front().field() != y.front().field()) throw TagMismatch("tensor factors over different fields");
    TensorElement<F> t{x.size(), y.size(), {}};
    t.coords.reserve(x.size() * y.size());
    for (const auto& xi : x)
        for (const auto& yj : y) t.coords.push_back(xi * yj);
    return t;
}

template <FieldElement F>
TensorElement<F> operator+(TensorElement<F> a, const TensorElement<F>& b) {
    if (a.n != b.n || a.m != b.m) throw DimensionMismatch("tensor shapes differ");
    a.coords = a.coords + b.coords;
    return a;
}

template <FieldElement F>
TensorElement<F> operator-(TensorElement<F> a, const TensorElement<F>& b) {
    if (a.n != b.n || a.m != b.m) throw DimensionMismatch("tensor shapes differ");
    a.coords = a.coords - b.coords;
    return a;
}

// ------------------------------------------------------------------ kinds

template <FieldElement F>
struct StandardKind {
    std::size_t n;
    std::size_t m;
};

template <FieldElement F>
struct OperatorPairKind {
    Matrix<F> A;
    Matrix<F> B;
};

/// Tensor product over the subring K[p] of K[x].
template <FieldElement F>
struct SubringKind {
    Matrix<F> A;
    Matrix<F> B;
    Poly<F> p;
};

/// Branching product for the K-algebra endomorphisms f: x -> phi, g: x -> psi.
template <FieldElement F>
struct BranchingKind {
    Matrix<F> A;
    Matrix<F> B;
    Poly<F> phi;
    Poly<F> psi;
};

/// The scalar branching rule (c x, y) ~ (x, a c y) taken literally. g(c) = a c
/// is not a ring homomorphism unless a = 1, so it is kept apart from BranchingKind.
template <FieldElement F>
struct ScaledBranchingKind {
    F a;
    std::size_t n = 1;
    std::size_t m = 1;
};

template <FieldElement F>
using TensorKind =
    std::variant<StandardKind<F>, OperatorPairKind<F>, SubringKind<F>, BranchingKind<F>, ScaledBranchingKind<F>>;

template <FieldElement F>
std::string kind_name(const TensorKind<F>& kind) {
    static const char* names[] = {"standard", "opair", "subring", "branching", "branching-scalar"};
    return names[kind.index()];
}

template <FieldElement F>
std::pair<std::size_t, std::size_t> kind_dimensions(const TensorKind<F>& kind) {
    return std::visit(
        [](const auto& k) -> std::pair<std::size_t, std::size_t> {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, StandardKind<F>> || std::is_same_v<K, ScaledBranchingKind<F>>)
                return {k.n, k.m};
            else {
                if (!k.A.is_square() || !k.B.is_square()) throw NonSquare();
                return {k.A.rows(), k.B.rows()};
            }
        },
        kind);
}

/// The operator pair (M, N) whose polynomial rule defines the kind. For the
/// scalar branching kind this is (I, a I), whose constant multiples give exactly
/// the literal rule.
template <FieldElement F>
std::pair<Matrix<F>, Matrix<F>> defining_operators(const TensorKind<F>& kind, const field_of<F>& field) {
    return std::visit(
        [&](const auto& k) -> std::pair<Matrix<F>, Matrix<F>> {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, StandardKind<F>>)
                return {Matrix<F>::identity(field, k.n), Matrix<F>::identity(field, k.m)};
            else if constexpr (std::is_same_v<K, OperatorPairKind<F>>)
                return {k.A, k.B};
            else if constexpr (std::is_same_v<K, SubringKind<F>>)
                return {poly_eval_operator(k.p, k.A), poly_eval_operator(k.p, k.B)};
            else if constexpr (std::is_same_v<K, BranchingKind<F>>)
                return {poly_eval_operator(k.phi, k.A), poly_eval_operator(k.psi, k.B)};
            else
                return {Matrix<F>::identity(field, k.n), Matrix<F>::scalar(k.a, k.m)};
        },
        kind);
}

/// Caveat for the scalar branching rule, empty when g(c) = a c is a unital ring map.
template <FieldElement F>
std::optional<std::string> homomorphism_caveat(const TensorKind<F>& kind) {
    const auto* k = std::get_if<ScaledBranchingKind<F>>(&kind);
    if (!k || k->a.is_one()) return std::nullopt;
    if (k->a.is_zero()) return "g(c) = 0*c is multiplicative but not unital (g(1) = 0 != 1)";
    return "g(c) = a*c with a = " + k->a.to_string() +
           " is not a ring homomorphism: g(c c') = a c c' != a^2 c c' = g(c) g(c')";
}

// ------------------------------------------------------ relation subspace

/// W inside K^(nm), stored with a reduced echelon basis (rows) so that
/// coset representatives can be made canonical.
template <FieldElement F>
class RelationSubspace {
public:
    RelationSubspace(TensorKind<F> kind, field_of<F> field, std::size_t n, std::size_t m, Matrix<F> generator)
        : kind_(std::move(kind)), field_(std::move(field)), n_(n), m_(m), generator_(std::move(generator)),
          echelon_(rref(generator_.transpose())) {
        std::vector<bool> pivot(n_ * m_, false);
        for (auto c : echelon_.pivot_columns) pivot[c] = true;
        for (std::size_t k = 0; k < n_ * m_; ++k)
            if (!pivot[k]) canonical_basis_.push_back(k);
    }

    const TensorKind<F>& kind() const { return kind_; }
    const field_of<F>& field() const { return field_; }
    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    /// Columns span W.
    const Matrix<F>& generator_matrix() const { return generator_; }
    /// Rows of echelon().reduced (first rank() of them) are a reduced basis of W.
    const EchelonResult<F>& echelon() const { return echelon_; }
    const std::vector<std::size_t>& pivot_columns() const { return echelon_.pivot_columns; }
    std::size_t rank() const { return echelon_.rank; }
    /// Flat indices of the coordinates that survive in the quotient.
    const std::vector<std::size_t>& canonical_basis() const { return canonical_basis_; }
    std::size_t quotient_dim() const { return n_ * m_ - rank(); }

    /// t minus the element of W that zeroes every pivot coordinate.
    Vec<F> residual(Vec<F> t) const {
        if (t.size() != n_ * m_) throw DimensionMismatch("tensor length differs from n*m");
        for (std::size_t k = 0; k < rank(); ++k) {
            const std::size_t p = echelon_.pivot_columns[k];
            if (t[p].is_zero()) continue;
            const F c = t[p];
            for (std::size_t j = p; j < t.size(); ++j) t[j] -= c * echelon_.reduced(k, j);
        }
        return t;
    }

    bool contains(const Vec<F>& t) const { return is_zero(residual(t)); }

private:
    TensorKind<F> kind_;
    field_of<F> field_;
    std::size_t n_;
    std::size_t m_;
    Matrix<F> generator_;
    EchelonResult<F> echelon_;
    std::vector<std::size_t> canonical_basis_;
};

template <FieldElement F>
using RelationSubspacePtr = std::shared_ptr<const RelationSubspace<F>>;

/// Builds W for the kind. `field` is needed for the standard kind, which carries no matrices.
template <FieldElement F>
RelationSubspacePtr<F> relation_subspace(const TensorKind<F>& kind, const field_of<F>& field, std::size_t n,
                                         std::size_t m) {
    auto [kn, km] = kind_dimensions(kind);
    if (kn != n || km != m) throw DimensionMismatch("kind dimensions do not match n, m");
    if (n == 0 || m == 0) throw DimensionMismatch("tensor factors must be nonempty");
    Matrix<F> gen(field, n * m, n * m);
    if (const auto* sk = std::get_if<ScaledBranchingKind<F>>(&kind)) {
        // span{ c x (x) y - a c x (x) y } = (1 - a) K^(nm)
        if (sk->a.field() != field) throw TagMismatch("scalar a over a different field");
        gen = Matrix<F>::scalar(field.one() - sk->a, n * m);
    } else if (!std::holds_alternative<StandardKind<F>>(kind)) {
        auto [M, N] = defining_operators(kind, field);
        if (M.field() != field) throw TagMismatch("kind matrices over a different field");
        gen = sylvester_operator(M, N);
    }
    return std::make_shared<const RelationSubspace<F>>(kind, field, n, m, std::move(gen));
}

template <FieldElement F>
std::size_t quotient_dim(const RelationSubspace<F>& w) {
    return w.quotient_dim();
}

// --------------------------------------------------------- quotient classes

/// A coset t + W, identified by its canonical coordinates.
template <FieldElement F>
struct QuotientClass {
    RelationSubspacePtr<F> subspace;
    Vec<F> canonical; // one entry per subspace->canonical_basis() index

    bool is_zero() const { return modtensor::is_zero(canonical); }

    friend bool operator==(const QuotientClass& a, const QuotientClass& b) {
        if (a.subspace != b.subspace) throw DimensionMismatch("classes of different quotients");
        return a.canonical == b.canonical;
    }
};

template <FieldElement F>
QuotientClass<F> project_to_quotient(const TensorElement<F>& t, const RelationSubspacePtr<F>& w) {
    if (t.n != w->n() || t.m != w->m()) throw DimensionMismatch("tensor shape differs from quotient");
    Vec<F> r = w->residual(t.coords);
    Vec<F> canon;
    canon.reserve(w->canonical_basis().size());
    for (auto k : w->canonical_basis()) canon.push_back(r[k]);
    return {w, std::move(canon)};
}

/// The representative of a class with zeros at every pivot coordinate.
template <FieldElement F>
TensorElement<F> lift(const QuotientClass<F>& c) {
    const auto& w = *c.subspace;
    TensorElement<F> t{w.n(), w.m(), zero_vector<F>(w.field(), w.n() * w.m())};
    for (std::size_t k = 0; k < c.canonical.size(); ++k) t.coords[w.canonical_basis()[k]] = c.canonical[k];
    return t;
}

namespace detail {

template <FieldElement F>
Matrix<F> induced_by(const Matrix<F>& op, const RelationSubspace<F>& w) {
    const auto& basis = w.canonical_basis();
    Matrix<F> out(w.field(), basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        Vec<F> image = op * unit_vector<F>(w.field(), w.n() * w.m(), basis[c]);
        Vec<F> r = w.residual(std::move(image));
        for (std::size_t k = 0; k < basis.size(); ++k) out(k, c) = r[basis[k]];
    }
    return out;
}

} // namespace detail

/// Matrix of the x-action on the operator-pair quotient in canonical
/// coordinates, computed through A (x) I. W is stable under A (x) I because
/// A (x) I commutes with A (x) I - I (x) B.
template <FieldElement F>
Matrix<F> induced_operator(const RelationSubspace<F>& w) {
    const auto* k = std::get_if<OperatorPairKind<F>>(&w.kind());
    if (!k) throw WrongKind("induced operator needs an operator-pair quotient");
    return detail::induced_by(kronecker(k->A, Matrix<F>::identity(w.field(), w.m())), w);
}

/// Same action computed through I (x) B; equals induced_operator() on every quotient.
template <FieldElement F>
Matrix<F> induced_operator_right(const RelationSubspace<F>& w) {
    const auto* k = std::get_if<OperatorPairKind<F>>(&w.kind());
    if (!k) throw WrongKind("induced operator needs an operator-pair quotient");
    return detail::induced_by(kronecker(Matrix<F>::identity(w.field(), w.n()), k->B), w);
}

/// True iff every generator of `small` solves inside the column span of `big`'s generators.
template <FieldElement F>
bool relations_contained(const RelationSubspace<F>& small, const RelationSubspace<F>& big) {
    const auto& g = small.generator_matrix();
    for (std::size_t j = 0; j < g.cols(); ++j) {
        try {
            solve_linear(big.generator_matrix(), g.col(j));
        } catch (const NoSolution&) {
            return false;
        }
    }
    return true;
}

/// The natural surjection K^(nm)/from -> K^(nm)/to, in canonical coordinates.
/// Requires from ⊆ to.
template <FieldElement F>
Matrix<F> quotient_map(const RelationSubspace<F>& from, const RelationSubspace<F>& to) {
    if (from.n() != to.n() || from.m() != to.m()) throw DimensionMismatch("quotients of different spaces");
    if (!relations_contained(from, to)) throw Error("quotient_map: relations of the source are not relations of the target");
    const auto& src = from.canonical_basis();
    const auto& dst = to.canonical_basis();
    Matrix<F> out(from.field(), dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        Vec<F> r = to.residual(unit_vector<F>(from.field(), from.n() * from.m(), src[c]));
        for (std::size_t k = 0; k < dst.size(); ++k) out(k, c) = r[dst[k]];
    }
    return out;
}

/// Rank of the n x m coefficient matrix: 0 for zero, 1 for nonzero simple tensors,
/// >= 2 for entangled ones.
template <FieldElement F>
std::size_t schmidt_rank(const TensorElement<F>& t) {
    if (t.coords.size() != t.n * t.m) throw DimensionMismatch("tensor length differs from n*m");
    if (t.coords.empty()) return 0;
    return rank(Matrix<F>(t.coords.front().field(), t.n, t.m, t.coords));
}

// ----------------------------------------------------- two-qubit example

/// Both sides of (pi(A) x) (x) y = x (x) (pi(B) y) for diagonal A = diag(a, b),
/// B = diag(c, d), x = (u, v), y = (w, z).
template <FieldElement F>
struct DiagonalPairReport {
    Matrix<F> A;
    Matrix<F> B;
    Poly<F> pi;
    Vec<F> x, y;
    Vec<F> pi_A_x, pi_B_y;
    TensorElement<F> lhs; // pi(A)x (x) y
    TensorElement<F> rhs; // x (x) pi(B)y
    TensorElement<F> difference;
    RelationSubspacePtr<F> relations;
    bool difference_in_relations = false;
    bool equal_in_standard = false; // lhs == rhs already in K^2 (x) K^2
    QuotientClass<F> lhs_class, rhs_class;
    bool classes_equal = false;
};

template <FieldElement F>
DiagonalPairReport<F> example_61_report(const F& a, const F& b, const F& c, const F& d, const Poly<F>& pi,
                                        const F& u, const F& v, const F& w, const F& z) {
    const auto field = a.field();
    Matrix<F> A = Matrix<F>::diagonal(field, {a, b});
    Matrix<F> B = Matrix<F>::diagonal(field, {c, d});
    Vec<F> x{u, v}, y{w, z};
    Vec<F> ax = poly_eval_operator(pi, A) * x;
    Vec<F> by = poly_eval_operator(pi, B) * y;
    auto lhs = tensor_coordinates(ax, y);
    auto rhs = tensor_coordinates(x, by);
    auto diff = lhs - rhs;
    auto w_ab = relation_subspace<F>(OperatorPairKind<F>{A, B}, field, 2, 2);
    auto lc = project_to_quotient(lhs, w_ab);
    auto rc = project_to_quotient(rhs, w_ab);
    const bool in_w = w_ab->contains(diff.coords);
    const bool standard = is_zero(diff.coords);
    const bool same = lc == rc;
    return {std::move(A), std::move(B), pi, std::move(x), std::move(y), std::move(ax), std::move(by),
            std::move(lhs), std::move(rhs), std::move(diff), w_ab, in_w, standard, std::move(lc), std::move(rc),
            same};
}

} // namespace modtensor
