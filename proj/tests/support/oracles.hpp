#pragma once

// Test-side oracles. Each one recomputes a quantity by a route that shares no
// code with the library algorithm it checks: determinants by permutation
// expansion, minimal polynomials by Krylov dependence on vectorized powers,
// irreducibility by exhaustive trial division, and so on.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "modtensor/modtensor.hpp"

namespace oracle {

using namespace modtensor;

// ---------------------------------------------------------------- generators

/// Small random data for property tests, seeded per test.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }
    std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    std::mt19937_64& engine() { return rng_; }

    Rational scalar(const RationalField& f) {
        const long long num = integer(-5, 5);
        const long long den = coin() ? 1 : integer(1, 3);
        return f.from_int(num) / f.from_int(den);
    }
    GaussianRational scalar(const GaussianField&) {
        RationalField q;
        return GaussianRational(scalar(q), coin() ? scalar(q) : q.zero());
    }
    PrimeResidue scalar(const PrimeField& f) { return f.element(static_cast<std::uint64_t>(integer(0, 1 << 20))); }

    template <class Field>
    auto nonzero_scalar(const Field& f) {
        for (;;) {
            auto s = scalar(f);
            if (!s.is_zero()) return s;
        }
    }

    template <class Field>
    auto poly(const Field& f, long max_degree) {
        using F = decltype(f.one());
        std::vector<F> c;
        const long d = integer(-1, max_degree);
        for (long k = 0; k <= d; ++k) c.push_back(scalar(f));
        return Poly<F>(f, std::move(c));
    }

    template <class Field>
    auto monic_poly(const Field& f, long degree) {
        using F = decltype(f.one());
        std::vector<F> c;
        for (long k = 0; k < degree; ++k) c.push_back(scalar(f));
        c.push_back(f.one());
        return Poly<F>(f, std::move(c));
    }

    template <class Field>
    auto vector(const Field& f, std::size_t n) {
        using F = decltype(f.one());
        Vec<F> v;
        for (std::size_t k = 0; k < n; ++k) v.push_back(scalar(f));
        return v;
    }

    template <class Field>
    auto nonzero_vector(const Field& f, std::size_t n) {
        for (;;) {
            auto v = vector(f, n);
            if (!is_zero(v)) return v;
        }
    }

    template <class Field>
    auto matrix(const Field& f, std::size_t r, std::size_t c) {
        using F = decltype(f.one());
        std::vector<F> e;
        for (std::size_t k = 0; k < r * c; ++k) e.push_back(scalar(f));
        return Matrix<F>(f, r, c, std::move(e));
    }

    /// Sparse-ish matrices hit repeated eigenvalues and nontrivial invariant-factor chains.
    template <class Field>
    auto structured_matrix(const Field& f, std::size_t n) {
        using F = decltype(f.one());
        Matrix<F> a(f, n, n);
        const long long spread = integer(0, 2);
        for (std::size_t i = 0; i < n; ++i) {
            a(i, i) = f.from_int(integer(-spread, spread));
            if (i + 1 < n && coin()) a(i, i + 1) = f.from_int(integer(0, 1));
        }
        return a;
    }

    template <class Field>
    auto invertible_matrix(const Field& f, std::size_t n) {
        for (;;) {
            auto m = matrix(f, n, n);
            if (rank(m) == n) return m;
        }
    }

    template <class Field>
    auto poly_matrix(const Field& f, std::size_t r, std::size_t c, long max_degree) {
        using F = decltype(f.one());
        std::vector<Poly<F>> e;
        for (std::size_t k = 0; k < r * c; ++k) e.push_back(poly(f, max_degree));
        return PolyMatrix<F>(f, r, c, std::move(e));
    }

private:
    std::mt19937_64 rng_;
};

// ------------------------------------------------------------- determinants

/// Sum over permutations; fine for n <= 6.
template <class R, class Mul>
R leibniz(std::size_t n, const std::function<R(std::size_t, std::size_t)>& entry, R zero, R one, Mul mul) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    R total = zero;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        R term = one;
        for (std::size_t i = 0; i < n; ++i) term = mul(term, entry(i, perm[i]));
        total = inversions % 2 ? total - term : total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

template <FieldElement F>
Poly<F> leibniz_determinant(const PolyMatrix<F>& m) {
    const auto& f = m.field();
    return leibniz<Poly<F>>(
        m.rows(), [&](std::size_t i, std::size_t j) { return m(i, j); }, Poly<F>(f), Poly<F>::constant(f.one()),
        [](const Poly<F>& a, const Poly<F>& b) { return a * b; });
}

template <FieldElement F>
F leibniz_determinant(const Matrix<F>& m) {
    const auto& f = m.field();
    return leibniz<F>(
        m.rows(), [&](std::size_t i, std::size_t j) { return m(i, j); }, f.zero(), f.one(),
        [](const F& a, const F& b) { return a * b; });
}

/// det(x I - A) by permutation expansion.
template <FieldElement F>
Poly<F> charpoly(const Matrix<F>& a) {
    const auto& f = a.field();
    PolyMatrix<F> m(f, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = Poly<F>::constant(-a(i, j)) + (i == j ? Poly<F>::x(f) : Poly<F>(f));
    return leibniz_determinant(m);
}

// ------------------------------------------------------- minimal polynomial

/// Smallest k with A^k in span(I, ..., A^(k-1)), found by Gaussian elimination on
/// the vectorized powers; returns the monic annihilator.
template <FieldElement F>
Poly<F> krylov_minimal_polynomial(const Matrix<F>& a) {
    const auto& f = a.field();
    const std::size_t n = a.rows();
    std::vector<Vec<F>> powers;
    Matrix<F> p = Matrix<F>::identity(f, n);
    for (std::size_t k = 0; k <= n; ++k) {
        Vec<F> v = p.entries();
        if (k > 0) {
            // columns I, A, ..., A^(k-1); solve sum c_i A^i = A^k
            Matrix<F> basis = Matrix<F>::from_columns(f, n * n, powers);
            // plain elimination, independent of the library's rref
            std::vector<Vec<F>> aug;
            for (std::size_t r = 0; r < n * n; ++r) {
                Vec<F> row = basis.row(r);
                row.push_back(v[r]);
                aug.push_back(std::move(row));
            }
            std::size_t lead = 0;
            std::vector<std::size_t> pivcol;
            for (std::size_t c = 0; c < k && lead < aug.size(); ++c) {
                std::size_t piv = lead;
                while (piv < aug.size() && aug[piv][c].is_zero()) ++piv;
                if (piv == aug.size()) continue;
                std::swap(aug[piv], aug[lead]);
                const F inv = aug[lead][c].inv();
                for (auto& e : aug[lead]) e = e * inv;
                for (std::size_t r = 0; r < aug.size(); ++r) {
                    if (r == lead || aug[r][c].is_zero()) continue;
                    const F factor = aug[r][c];
                    for (std::size_t cc = 0; cc <= k; ++cc) aug[r][cc] = aug[r][cc] - factor * aug[lead][cc];
                }
                pivcol.push_back(c);
                ++lead;
            }
            bool consistent = true;
            for (std::size_t r = lead; r < aug.size(); ++r)
                if (!aug[r][k].is_zero()) consistent = false;
            if (consistent && pivcol.size() == k) {
                std::vector<F> coeffs(k + 1, f.zero());
                for (std::size_t r = 0; r < lead; ++r) coeffs[pivcol[r]] = -aug[r][k];
                coeffs[k] = f.one();
                return Poly<F>(f, std::move(coeffs));
            }
        }
        powers.push_back(std::move(v));
        p = p * a;
    }
    throw Error("no annihilator of degree <= n (impossible by Cayley-Hamilton)");
}

// ------------------------------------------------------------ irreducibility

/// Trial division by every monic polynomial of degree 1..deg/2 over F_p.
inline bool brute_force_irreducible(const Poly<PrimeResidue>& f) {
    const auto field = f.field();
    const long d = f.degree();
    if (d < 1) return false;
    for (long k = 1; 2 * k <= d; ++k) {
        std::uint64_t total = 1;
        for (long i = 0; i < k; ++i) total *= field.modulus;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<PrimeResidue> c;
            std::uint64_t rest = code;
            for (long i = 0; i < k; ++i) {
                c.push_back(field.element(rest % field.modulus));
                rest /= field.modulus;
            }
            c.push_back(field.one());
            if ((f % Poly<PrimeResidue>(field, c)).is_zero()) return false;
        }
    }
    return true;
}

/// Roots of f over F_p by evaluation at every residue.
inline std::vector<std::uint64_t> brute_force_roots(const Poly<PrimeResidue>& f) {
    std::vector<std::uint64_t> roots;
    for (std::uint64_t r = 0; r < f.field().modulus; ++r)
        if (f(f.field().element(r)).is_zero()) roots.push_back(r);
    return roots;
}

// ------------------------------------------------------------------- tensors

/// Number of zero diagonal entries of the explicit diagonal Sylvester matrix
/// diag(a_i - c_j), i.e. the dimension of its kernel.
template <FieldElement F>
std::size_t diagonal_sylvester_kernel(const std::vector<F>& a, const std::vector<F>& c) {
    std::vector<F> diag;
    for (const auto& ai : a)
        for (const auto& cj : c) diag.push_back(ai - cj);
    return static_cast<std::size_t>(std::count_if(diag.begin(), diag.end(), [](const F& e) { return e.is_zero(); }));
}

// ------------------------------------------------------------------ rewrites

/// One application of a standard rule at a random position: swap neighbours,
/// split x or y additively, merge neighbours sharing y or x, or move a scalar
/// across the pair. The standard linearization is unchanged by every one of them.
template <FieldElement F, class Field>
FormalSequence<F> apply_standard_rule(Gen& gen, const Field& field, const FormalSequence<F>& s) {
    auto pairs = s.pairs();
    const std::size_t i = gen.index(0, pairs.size() - 1);
    switch (gen.integer(0, 5)) {
    case 0:
        if (i + 1 < pairs.size()) std::swap(pairs[i], pairs[i + 1]);
        break;
    case 1: {
        const auto part = gen.vector(field, s.n());
        const FormalPair<F> extra{part, pairs[i].y};
        pairs[i].x = pairs[i].x - part;
        pairs.insert(pairs.begin() + static_cast<long>(i) + 1, extra);
        break;
    }
    case 2: {
        const auto part = gen.vector(field, s.m());
        const FormalPair<F> extra{pairs[i].x, part};
        pairs[i].y = pairs[i].y - part;
        pairs.insert(pairs.begin() + static_cast<long>(i) + 1, extra);
        break;
    }
    case 3:
        if (i + 1 < pairs.size() && pairs[i].y == pairs[i + 1].y) {
            pairs[i].x = pairs[i].x + pairs[i + 1].x;
            pairs.erase(pairs.begin() + static_cast<long>(i) + 1);
        } else if (i + 1 < pairs.size() && pairs[i].x == pairs[i + 1].x) {
            pairs[i].y = pairs[i].y + pairs[i + 1].y;
            pairs.erase(pairs.begin() + static_cast<long>(i) + 1);
        }
        break;
    default: {
        // (c x', y) -> (x', c y) with x = c x'
        const auto c = gen.nonzero_scalar(field);
        pairs[i].x = c.inv() * pairs[i].x;
        pairs[i].y = c * pairs[i].y;
        break;
    }
    }
    return FormalSequence<F>(std::move(pairs));
}

/// Splits x_i = (x_i - pi(A) u) + pi(A) u, then rewrites (pi(A) u, y_i) -> (u, pi(B) y_i).
template <FieldElement F, class Field>
FormalSequence<F> apply_operator_rule(Gen& gen, const Field& field, const FormalSequence<F>& s, const Matrix<F>& a,
                                      const Matrix<F>& b) {
    auto pairs = s.pairs();
    const std::size_t i = gen.index(0, pairs.size() - 1);
    const auto pi = gen.poly(field, 2);
    const auto u = gen.vector(field, s.n());
    const auto moved = poly_eval_operator(pi, a) * u;
    const FormalPair<F> extra{u, poly_eval_operator(pi, b) * pairs[i].y};
    pairs[i].x = pairs[i].x - moved;
    pairs.insert(pairs.begin() + static_cast<long>(i) + 1, extra);
    return FormalSequence<F>(std::move(pairs));
}

template <class Field>
auto random_sequence(Gen& gen, const Field& field, std::size_t n, std::size_t m, std::size_t len) {
    using F = decltype(field.one());
    std::vector<FormalPair<F>> pairs;
    for (std::size_t k = 0; k < len; ++k) pairs.push_back({gen.vector(field, n), gen.vector(field, m)});
    return FormalSequence<F>(std::move(pairs));
}

/// Independent rank by fraction-free elimination on a copy.
template <FieldElement F>
std::size_t naive_rank(std::vector<Vec<F>> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            const F factor = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] = rows[i][k] - factor * rows[r][k];
        }
        ++r;
    }
    return r;
}

} // namespace oracle
