#pragma once

// Matrices over K[x] and their Smith normal form.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "modtensor/errors.hpp"
#include "modtensor/matrix.hpp"
#include "modtensor/poly.hpp"

namespace modtensor {

template <FieldElement F>
class PolyMatrix {
public:
    using element_type = F;
    using field_type = field_of<F>;

    PolyMatrix(field_type field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, Poly<F>(field_)) {}

    PolyMatrix(field_type field, std::size_t rows, std::size_t cols, std::vector<Poly<F>> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw DimensionMismatch("entry count does not match shape");
        for (const auto& p : data_)
            if (p.field() != field_) throw TagMismatch("polynomial entry over a different field");
    }

    static PolyMatrix identity(const field_type& field, std::size_t n) {
        PolyMatrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly<F>::constant(field.one());
        return m;
    }

    /// Constant embedding of a scalar matrix.
    static PolyMatrix from_matrix(const Matrix<F>& a) {
        PolyMatrix m(a.field(), a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Poly<F>::constant(a(i, j));
        return m;
    }

    static PolyMatrix diagonal(const field_type& field, const std::vector<Poly<F>>& d) {
        PolyMatrix m(field, d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    const field_type& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Poly<F>& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Poly<F>& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// Entrywise evaluation at a scalar.
    Matrix<F> evaluate(const F& at) const {
        Matrix<F> m(field_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j)(at);
        return m;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.field_ != b.field_) throw TagMismatch("polynomial matrices over different fields");
        if (a.cols_ != b.rows_) throw DimensionMismatch("polynomial matrix product shapes");
        PolyMatrix c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    // elementary operations
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    void scale_row(std::size_t r, const F& s) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= s;
    }
    /// row[target] -= q * row[source]
    void sub_row(std::size_t target, std::size_t source, const Poly<F>& q) {
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(source, j).is_zero()) (*this)(target, j) -= q * (*this)(source, j);
    }
    /// col[target] -= q * col[source]
    void sub_col(std::size_t target, std::size_t source, const Poly<F>& q) {
        for (std::size_t i = 0; i < rows_; ++i)
            if (!(*this)(i, source).is_zero()) (*this)(i, target) -= (*this)(i, source) * q;
    }

private:
    field_type field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Poly<F>> data_;
};

/// x I - A
template <FieldElement F>
PolyMatrix<F> characteristic_matrix(const Matrix<F>& a) {
    if (!a.is_square()) throw NonSquare();
    PolyMatrix<F> m(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(i, j) = Poly<F>::constant(-a(i, j));
            if (i == j) m(i, j) += Poly<F>::x(a.field());
        }
    return m;
}

/// Determinant by fraction-free (Bareiss) elimination; divisions are exact in K[x].
template <FieldElement F>
Poly<F> determinant(PolyMatrix<F> m) {
    if (!m.is_square()) throw NonSquare();
    const std::size_t n = m.rows();
    const auto& field = m.field();
    if (n == 0) return Poly<F>::constant(field.one());
    bool negate = false;
    Poly<F> prev = Poly<F>::constant(field.one());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k).is_zero()) ++p;
        if (p == n) return Poly<F>(field);
        if (p != k) {
            m.swap_rows(p, k);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
            m(i, k) = Poly<F>(field);
        }
        prev = m(k, k);
    }
    return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

/// Monic characteristic polynomial det(x I - A).
template <FieldElement F>
Poly<F> characteristic_polynomial(const Matrix<F>& a) {
    return determinant(characteristic_matrix(a));
}

/// U * P * V = D with U, V unimodular and D diagonal, nonzero diagonal entries
/// monic and forming a divisibility chain, followed by zeros.
template <FieldElement F>
struct SmithForm {
    PolyMatrix<F> U;
    PolyMatrix<F> D;
    PolyMatrix<F> V;

    /// The nonzero diagonal entries d_1 | d_2 | ... (units included).
    std::vector<Poly<F>> diagonal() const {
        std::vector<Poly<F>> d;
        const std::size_t t = D.rows() < D.cols() ? D.rows() : D.cols();
        for (std::size_t i = 0; i < t; ++i)
            if (!D(i, i).is_zero()) d.push_back(D(i, i));
        return d;
    }
};

namespace detail {

// Nonzero entry of minimal degree in the trailing block, ties broken by the
// smallest (row, col).
template <FieldElement F>
std::optional<std::pair<std::size_t, std::size_t>> smith_pivot(const PolyMatrix<F>& m, std::size_t k) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    long best_deg = -1;
    for (std::size_t i = k; i < m.rows(); ++i)
        for (std::size_t j = k; j < m.cols(); ++j) {
            const auto& e = m(i, j);
            if (e.is_zero()) continue;
            if (!best || e.degree() < best_deg) {
                best = {i, j};
                best_deg = e.degree();
            }
        }
    return best;
}

} // namespace detail

/// Smith normal form by pivoting on a minimal-degree entry, clearing its row and
/// column with Euclidean division (restarting whenever a remainder survives), and
/// repairing divisibility by adding an offending column into the pivot column.
/// Each restart strictly lowers the pivot degree, so the loop terminates.
template <FieldElement F>
SmithForm<F> smith_normal_form(const PolyMatrix<F>& p) {
    const auto& field = p.field();
    PolyMatrix<F> d = p;
    PolyMatrix<F> u = PolyMatrix<F>::identity(field, p.rows());
    PolyMatrix<F> v = PolyMatrix<F>::identity(field, p.cols());
    const std::size_t t = p.rows() < p.cols() ? p.rows() : p.cols();

    for (std::size_t k = 0; k < t; ++k) {
        for (;;) {
            auto pivot = detail::smith_pivot(d, k);
            if (!pivot) return {std::move(u), std::move(d), std::move(v)};
            auto [pr, pc] = *pivot;
            d.swap_rows(k, pr);
            u.swap_rows(k, pr);
            d.swap_cols(k, pc);
            v.swap_cols(k, pc);

            const F lead_inv = d(k, k).lead().inv();
            d.scale_row(k, lead_inv);
            u.scale_row(k, lead_inv);

            bool remainder_left = false;
            for (std::size_t i = k + 1; i < d.rows(); ++i) {
                if (d(i, k).is_zero()) continue;
                auto [q, r] = divmod(d(i, k), d(k, k));
                d.sub_row(i, k, q);
                u.sub_row(i, k, q);
                if (!r.is_zero()) remainder_left = true;
            }
            for (std::size_t j = k + 1; j < d.cols(); ++j) {
                if (d(k, j).is_zero()) continue;
                auto [q, r] = divmod(d(k, j), d(k, k));
                d.sub_col(j, k, q);
                v.sub_col(j, k, q);
                if (!r.is_zero()) remainder_left = true;
            }
            if (remainder_left) continue;

            // divisibility repair
            bool repaired = false;
            for (std::size_t i = k + 1; i < d.rows() && !repaired; ++i)
                for (std::size_t j = k + 1; j < d.cols() && !repaired; ++j) {
                    if (d(i, j).is_zero() || divides(d(k, k), d(i, j))) continue;
                    const auto minus_one = Poly<F>::constant(-field.one());
                    d.sub_col(k, j, minus_one);
                    v.sub_col(k, j, minus_one);
                    repaired = true;
                }
            if (!repaired) break;
        }
    }
    return {std::move(u), std::move(d), std::move(v)};
}

} // namespace modtensor
