#pragma once

// Dense exact matrices over a field, reduced echelon form and the
// Kronecker/Sylvester constructions.
//
// Basis convention for E (x) F with dim E = n, dim F = m: e_i (x) f_j has flat
// (0-based) index i*m + j. kronecker() and everything built on it use this.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "modtensor/errors.hpp"
#include "modtensor/field.hpp"
#include "modtensor/poly.hpp"

namespace modtensor {

template <FieldElement F>
using Vec = std::vector<F>;

template <FieldElement F>
Vec<F> zero_vector(const field_of<F>& field, std::size_t n) {
    return Vec<F>(n, field.zero());
}

template <FieldElement F>
Vec<F> unit_vector(const field_of<F>& field, std::size_t n, std::size_t k) {
    Vec<F> v(n, field.zero());
    v.at(k) = field.one();
    return v;
}

template <FieldElement F>
bool is_zero(const Vec<F>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

template <FieldElement F>
Vec<F> operator+(Vec<F> a, const Vec<F>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <FieldElement F>
Vec<F> operator-(Vec<F> a, const Vec<F>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

template <FieldElement F>
Vec<F> operator*(const F& s, Vec<F> v) {
    for (auto& x : v) x *= s;
    return v;
}

template <FieldElement F>
class Matrix {
public:
    using element_type = F;
    using field_type = field_of<F>;

    Matrix(field_type field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    /// Row-major entries.
    Matrix(field_type field, std::size_t rows, std::size_t cols, std::vector<F> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw DimensionMismatch("entry count does not match shape");
        for (const auto& x : data_)
            if (x.field() != field_) throw TagMismatch("matrix entry over a different field");
    }

    static Matrix from_rows(const field_type& field, const std::vector<std::vector<F>>& rows) {
        const std::size_t c = rows.empty() ? 0 : rows.front().size();
        std::vector<F> data;
        for (const auto& r : rows) {
            if (r.size() != c) throw DimensionMismatch("ragged rows");
            data.insert(data.end(), r.begin(), r.end());
        }
        return Matrix(field, rows.size(), c, std::move(data));
    }

    static Matrix identity(const field_type& field, std::size_t n) { return scalar(field.one(), n); }

    /// c * I_n
    static Matrix scalar(const F& c, std::size_t n) {
        Matrix m(c.field(), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
        return m;
    }

    static Matrix diagonal(const field_type& field, const Vec<F>& d) {
        Matrix m(field, d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    static Matrix from_columns(const field_type& field, std::size_t rows, const std::vector<Vec<F>>& cols) {
        Matrix m(field, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw DimensionMismatch("column length");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    const field_type& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const std::vector<F>& entries() const { return data_; }

    F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<F> row(std::size_t i) const { return Vec<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    Vec<F> col(std::size_t j) const {
        Vec<F> v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const F& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const F& s) { return a *= s; }
    friend Matrix operator*(const F& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.field_ != b.field_) throw TagMismatch("matrix product over different fields");
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shapes");
        Matrix c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vec<F> operator*(const Matrix& a, const Vec<F>& x) {
        if (a.cols_ != x.size()) throw DimensionMismatch("matrix-vector shapes");
        Vec<F> y(a.rows_, a.field_.zero());
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
        return y;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.field_ != b.field_) throw TagMismatch("comparing matrices over different fields");
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (field_ != o.field_) throw TagMismatch("matrices over different fields");
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
    }

    field_type field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<F> data_;
};

// ---------------------------------------------------------------- echelon

template <FieldElement F>
struct EchelonResult {
    Matrix<F> reduced;
    std::vector<std::size_t> pivot_columns;
    std::size_t rank = 0;
};

/// Reduced row echelon form: pivots are 1, pivot columns strictly increasing,
/// every other entry of a pivot column is zero.
template <FieldElement F>
EchelonResult<F> rref(Matrix<F> m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        const F inv = m(r, c).inv();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const F factor = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots), r};
}

template <FieldElement F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank;
}

/// Basis of {x : M x = 0}, one vector per free column, in column order.
template <FieldElement F>
std::vector<Vec<F>> kernel_basis(const Matrix<F>& m) {
    const auto ech = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : ech.pivot_columns) is_pivot[c] = true;
    std::vector<Vec<F>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec<F> v = unit_vector<F>(m.field(), m.cols(), free);
        for (std::size_t k = 0; k < ech.rank; ++k) v[ech.pivot_columns[k]] = -ech.reduced(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with M x = b; throws NoSolution when b is outside the column space.
template <FieldElement F>
Vec<F> solve_linear(const Matrix<F>& m, const Vec<F>& b) {
    if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length");
    Matrix<F> aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    const auto ech = rref(std::move(aug));
    if (!ech.pivot_columns.empty() && ech.pivot_columns.back() == m.cols()) throw NoSolution();
    Vec<F> x = zero_vector<F>(m.field(), m.cols());
    for (std::size_t k = 0; k < ech.rank; ++k) x[ech.pivot_columns[k]] = ech.reduced(k, m.cols());
    return x;
}

template <FieldElement F>
Matrix<F> inverse(const Matrix<F>& m) {
    if (!m.is_square()) throw NonSquare();
    const std::size_t n = m.rows();
    Matrix<F> aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = m.field().one();
    }
    const auto ech = rref(std::move(aug));
    if (ech.rank < n || ech.pivot_columns[n - 1] != n - 1) throw DivisionByZero();
    Matrix<F> inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
    return inv;
}

// ------------------------------------------------------ tensor constructions

/// Kronecker product; entry ((i*p + k), (j*q + l)) = A(i,j) * B(k,l).
template <FieldElement F>
Matrix<F> kronecker(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.field() != b.field()) throw TagMismatch("kronecker operands over different fields");
    Matrix<F> k(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
        }
    return k;
}

/// A (x) I_m - I_n (x) B: the linear map x (x) y -> Ax (x) y - x (x) By.
template <FieldElement F>
Matrix<F> sylvester_operator(const Matrix<F>& a, const Matrix<F>& b) {
    if (!a.is_square() || !b.is_square()) throw NonSquare();
    if (a.field() != b.field()) throw TagMismatch("sylvester operands over different fields");
    return kronecker(a, Matrix<F>::identity(a.field(), b.rows())) -
           kronecker(Matrix<F>::identity(a.field(), a.rows()), b);
}

/// Companion matrix of a monic p of degree k: ones on the subdiagonal and
/// -p_0, ..., -p_{k-1} in the last column.
template <FieldElement F>
Matrix<F> companion_matrix(const Poly<F>& p) {
    if (p.is_zero() || p.is_constant()) throw ConstantPolynomial();
    if (!p.is_monic()) throw NotMonic();
    const auto k = static_cast<std::size_t>(p.degree());
    Matrix<F> c(p.field(), k, k);
    for (std::size_t i = 1; i < k; ++i) c(i, i - 1) = p.field().one();
    for (std::size_t i = 0; i < k; ++i) c(i, k - 1) = -p.coeff(i);
    return c;
}

/// pi(A) by Horner's rule.
template <FieldElement F>
Matrix<F> poly_eval_operator(const Poly<F>& pi, const Matrix<F>& a) {
    if (!a.is_square()) throw NonSquare();
    if (pi.field() != a.field()) throw TagMismatch("polynomial and matrix over different fields");
    const std::size_t n = a.rows();
    Matrix<F> acc(a.field(), n, n);
    const auto& c = pi.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * a;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

} // namespace modtensor
