#pragma once

// Dense univariate polynomials over an exact field: the ring K[x].

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "modtensor/errors.hpp"
#include "modtensor/field.hpp"

namespace modtensor {

/// Polynomial sum_i c_i x^i stored densely with index = degree.
/// Invariant: no trailing zero coefficients; the zero polynomial has none.
template <FieldElement F>
class Poly {
public:
    using element_type = F;
    using field_type = field_of<F>;

    explicit Poly(field_type field) : field_(std::move(field)) {}

    Poly(field_type field, std::vector<F> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        for (const auto& c : c_)
            if (c.field() != field_) throw TagMismatch("coefficient field differs from polynomial field");
        trim();
    }

    static Poly constant(const F& c) { return Poly(c.field(), {c}); }
    static Poly x(const field_type& field) { return Poly(field, {field.zero(), field.one()}); }

    /// c * x^degree
    static Poly monomial(const F& c, std::size_t degree) {
        std::vector<F> coeffs(degree + 1, c.field().zero());
        coeffs[degree] = c;
        return Poly(c.field(), std::move(coeffs));
    }

    /// x - root
    static Poly linear(const F& root) { return Poly(root.field(), {-root, root.field().one()}); }

    const field_type& field() const { return field_; }
    const std::vector<F>& coeffs() const { return c_; }

    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == field_.one(); }
    bool is_monic() const { return !c_.empty() && c_.back() == field_.one(); }

    F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
    const F& lead() const {
        if (c_.empty()) throw ZeroPolynomial();
        return c_.back();
    }

    /// Scales to leading coefficient 1; zero stays zero.
    Poly monic() const {
        if (is_zero() || is_monic()) return *this;
        return *this * lead().inv();
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(field_);
        std::vector<F> d;
        d.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d.push_back(c_[i] * field_.from_int(static_cast<long long>(i)));
        return Poly(field_, std::move(d));
    }

    /// Horner evaluation at a scalar.
    F operator()(const F& at) const {
        F acc = field_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    /// p(q(x)).
    Poly compose(const Poly& inner) const {
        check(inner);
        Poly acc(field_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
        return acc;
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const F& s) {
        for (auto& c : c_) c *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const F& s) { return a *= s; }
    friend Poly operator*(const F& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        std::vector<F> out(a.c_.size() + b.c_.size() - 1, a.field_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(a.field_, std::move(out));
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        a.check(b);
        return a.c_ == b.c_;
    }

    /// Canonical total order: by degree, then coefficients from the top down.
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (std::size_t k = a.c_.size(); k-- > 0;)
            if (!(a.c_[k] == b.c_[k])) return a.c_[k] < b.c_[k];
        return false;
    }

    /// Human-readable form such as "x^2 - 3/4x + 1".
    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (c_[k].is_zero()) continue;
            std::string s = c_[k].to_string();
            bool compound = s.find_first_of("+-", 1) != std::string::npos;
            if (compound) s = "(" + s + ")";
            bool negative = !compound && s.front() == '-';
            if (negative) s.erase(0, 1);
            if (out.empty()) out = negative ? "-" : "";
            else out += negative ? " - " : " + ";
            if (k == 0) {
                out += s;
                continue;
            }
            if (s != "1") out += s;
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void check(const Poly& o) const {
        if (field_ != o.field_) throw TagMismatch("polynomials over different fields");
    }

    field_type field_;
    std::vector<F> c_;
};

/// Euclidean division: f = q*g + r with deg r < deg g.
template <FieldElement F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& f, const Poly<F>& g) {
    if (g.is_zero()) throw DivisionByZero();
    if (f.field() != g.field()) throw TagMismatch("divmod operands over different fields");
    const auto& field = f.field();
    std::vector<F> rem = f.coeffs();
    const long dg = g.degree();
    if (f.degree() < dg) return {Poly<F>(field), f};
    std::vector<F> quot(static_cast<std::size_t>(f.degree() - dg + 1), field.zero());
    const F lead_inv = g.lead().inv();
    const auto& gc = g.coeffs();
    for (long k = f.degree(); k >= dg; --k) {
        const F c = rem[static_cast<std::size_t>(k)] * lead_inv;
        if (c.is_zero()) continue;
        quot[static_cast<std::size_t>(k - dg)] = c;
        for (long j = 0; j <= dg; ++j)
            rem[static_cast<std::size_t>(k - dg + j)] -= c * gc[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dg), field.zero());
    return {Poly<F>(field, std::move(quot)), Poly<F>(field, std::move(rem))};
}

template <FieldElement F>
Poly<F> operator%(const Poly<F>& f, const Poly<F>& g) { return divmod(f, g).second; }

/// Quotient f / g; throws Error when g does not divide f.
template <FieldElement F>
Poly<F> exact_div(const Poly<F>& f, const Poly<F>& g) {
    auto [q, r] = divmod(f, g);
    if (!r.is_zero()) throw Error("exact_div: " + g.to_string() + " does not divide " + f.to_string());
    return q;
}

template <FieldElement F>
bool divides(const Poly<F>& d, const Poly<F>& f) {
    if (d.is_zero()) return f.is_zero();
    return divmod(f, d).second.is_zero();
}

/// Monic greatest common divisor.
template <FieldElement F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    if (a.is_zero() && b.is_zero()) throw BothZero();
    while (!b.is_zero()) {
        Poly<F> r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Monic least common multiple; lcm(0, f) = 0.
template <FieldElement F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<F>(a.field());
    return exact_div(a * b, gcd(a, b)).monic();
}

template <FieldElement F>
Poly<F> pow(Poly<F> base, std::size_t e) {
    Poly<F> acc = Poly<F>::constant(base.field().one());
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

/// base^e mod m for an exponent given as a GMP integer.
template <FieldElement F>
Poly<F> pow_mod(Poly<F> base, mpz_class e, const Poly<F>& m) {
    Poly<F> acc = Poly<F>::constant(base.field().one()) % m;
    base = base % m;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = (acc * base) % m;
        e >>= 1;
        if (e > 0) base = (base * base) % m;
    }
    return acc;
}

// ---------------------------------------------------- squarefree decomposition

template <FieldElement F>
struct FactorPower {
    Poly<F> factor;
    std::size_t multiplicity;

    friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

namespace detail {

// f(x) = g(x^p) over F_p  ->  g(x); requires every exponent of f to be a multiple of p.
template <FieldElement F>
Poly<F> pth_root(const Poly<F>& f, std::uint64_t p) {
    std::vector<F> out;
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        if (k % p == 0) out.push_back(f.coeffs()[k]);
        else if (!f.coeffs()[k].is_zero()) throw Error("pth_root: exponent not divisible by p");
    }
    // the Frobenius is the identity on F_p, so coefficients are unchanged
    return Poly<F>(f.field(), std::move(out));
}

template <FieldElement F>
void squarefree_char_p(const Poly<F>& f, std::uint64_t p, std::size_t scale, std::vector<FactorPower<F>>& out) {
    const auto one = Poly<F>::constant(f.field().one());
    Poly<F> g = f.derivative();
    if (g.is_zero()) {
        squarefree_char_p(pth_root(f, p), p, scale * p, out);
        return;
    }
    Poly<F> c = gcd(f, g);
    Poly<F> w = exact_div(f, c);
    std::size_t i = 1;
    while (!w.is_one()) {
        Poly<F> y = gcd(w, c);
        Poly<F> fac = exact_div(w, y);
        if (!fac.is_constant()) out.push_back({fac.monic(), i * scale});
        w = std::move(y);
        c = exact_div(c, w);
        ++i;
    }
    if (!c.is_constant()) squarefree_char_p(pth_root(c.monic(), p), p, scale * p, out);
}

} // namespace detail

/// Writes monic(f) = prod factor^multiplicity with pairwise coprime squarefree factors,
/// sorted by multiplicity then canonical order.
template <FieldElement F>
std::vector<FactorPower<F>> squarefree_decomposition(const Poly<F>& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    std::vector<FactorPower<F>> out;
    if (f.is_constant()) return out;
    const Poly<F> m = f.monic();
    const std::uint64_t p = f.field().characteristic();
    if (p != 0) {
        detail::squarefree_char_p(m, p, 1, out);
    } else {
        // Yun's algorithm
        Poly<F> a = gcd(m, m.derivative());
        Poly<F> b = exact_div(m, a);
        Poly<F> c = exact_div(m.derivative(), a);
        Poly<F> d = c - b.derivative();
        std::size_t i = 1;
        while (!b.is_constant()) {
            Poly<F> ai = gcd(b, d);
            b = exact_div(b, ai);
            c = exact_div(d, ai);
            d = c - b.derivative();
            if (!ai.is_constant()) out.push_back({ai, i});
            ++i;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        if (l.multiplicity != r.multiplicity) return l.multiplicity < r.multiplicity;
        return l.factor < r.factor;
    });
    return out;
}

} // namespace modtensor
