#pragma once

// Factorization into monic irreducibles.
//
// Over F_p the factorization is always complete: squarefree decomposition,
// distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting
// driven by a fixed-seed generator (so results are reproducible).
//
// Over Q and Q(i) the squarefree parts are split by exact root extraction:
// after the substitution x -> x/D that makes the polynomial monic and
// integral, every root in the field is a (Gaussian) integer dividing the
// constant term, so enumerating those divisors finds all of them. Leftover
// parts of degree 2 or 3 without roots are irreducible; a leftover of degree
// >= 4 is undecided and raises FactorizationIncomplete.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <type_traits>
#include <utility>
#include <vector>

#include "modtensor/errors.hpp"
#include "modtensor/field.hpp"
#include "modtensor/poly.hpp"

namespace modtensor {

namespace detail {

// ------------------------------------------------------------ prime fields

inline Poly<PrimeResidue> random_poly_below(const PrimeField& field, long degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, field.modulus - 1);
    std::vector<PrimeResidue> c;
    for (long k = 0; k < degree; ++k) c.push_back(field.element(dist(rng)));
    return Poly<PrimeResidue>(field, std::move(c));
}

// f monic squarefree; returns (product of all irreducible factors of degree d, d)
inline std::vector<std::pair<Poly<PrimeResidue>, long>> distinct_degree(Poly<PrimeResidue> f) {
    const auto& field = f.field();
    const auto x = Poly<PrimeResidue>::x(field);
    std::vector<std::pair<Poly<PrimeResidue>, long>> out;
    Poly<PrimeResidue> h = x % f;
    for (long d = 1; f.degree() >= 2 * d; ++d) {
        h = pow_mod(h, mpz_class(static_cast<unsigned long>(field.modulus)), f);
        Poly<PrimeResidue> g = gcd(f, h - x);
        if (!g.is_one()) {
            out.emplace_back(g, d);
            f = exact_div(f, g);
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

inline void equal_degree(const Poly<PrimeResidue>& f, long d, std::mt19937_64& rng,
                         std::vector<Poly<PrimeResidue>>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const auto& field = f.field();
    const std::uint64_t p = field.modulus;
    for (;;) {
        Poly<PrimeResidue> a = random_poly_below(field, f.degree(), rng);
        if (a.is_constant()) continue;
        Poly<PrimeResidue> b(field);
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1))
            Poly<PrimeResidue> t = a % f;
            b = t;
            for (long k = 1; k < d; ++k) {
                t = (t * t) % f;
                b += t;
            }
        } else {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            b = pow_mod(a, e, f) - Poly<PrimeResidue>::constant(field.one());
        }
        if (b.is_zero()) continue;
        Poly<PrimeResidue> g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(exact_div(f, g).monic(), d, rng, out);
            return;
        }
    }
}

inline std::vector<Poly<PrimeResidue>> split_squarefree(const Poly<PrimeResidue>& f) {
    std::mt19937_64 rng(0x5eed'f00dULL);
    std::vector<Poly<PrimeResidue>> out;
    for (auto& [part, d] : distinct_degree(f.monic())) equal_degree(part, d, rng, out);
    return out;
}

// ------------------------------------------------------ integer factoring

struct PrimePower {
    mpz_class prime;
    unsigned long exponent;
};

// Trial division up to 2^20; a larger cofactor is accepted only if it is a
// (probable) prime, otherwise the factorization is declared incomplete.
inline std::vector<PrimePower> factor_integer(mpz_class n) {
    if (n < 0) n = -n;
    if (n == 0) throw Error("factor_integer: zero");
    std::vector<PrimePower> out;
    auto strip = [&](unsigned long d) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            unsigned long e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
                ++e;
            }
            out.push_back({mpz_class(d), e});
        }
    };
    strip(2);
    constexpr unsigned long limit = 1UL << 20;
    for (unsigned long d = 3; d <= limit && n > 1; d += 2) {
        if (mpz_class(d) * d > n) break;
        strip(d);
    }
    if (n > 1) {
        if (mpz_class(limit) * limit > n || mpz_probab_prime_p(n.get_mpz_t(), 40) > 0)
            out.push_back({n, 1});
        else
            throw FactorizationIncomplete("constant term has a composite cofactor beyond trial division");
    }
    return out;
}

inline std::vector<mpz_class> divisors(const std::vector<PrimePower>& fac) {
    std::vector<mpz_class> out{1};
    for (const auto& [q, e] : fac) {
        const std::size_t base = out.size();
        mpz_class power = 1;
        for (unsigned long k = 1; k <= e; ++k) {
            power *= q;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * power);
        }
    }
    return out;
}

inline mpz_class lcm_denominators(const std::vector<const mpq_class*>& values) {
    mpz_class d = 1;
    for (const auto* v : values) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v->get_den_mpz_t());
    return d;
}

// ------------------------------------------------------ rational roots

// All roots in Q of a monic polynomial with nonzero constant term.
inline std::vector<Rational> rational_roots(const Poly<Rational>& f) {
    const auto& c = f.coeffs();
    const std::size_t n = c.size() - 1;
    std::vector<const mpq_class*> vals;
    for (const auto& x : c) vals.push_back(&x.value());
    const mpz_class D = lcm_denominators(vals);
    // g(x) = D^n f(x / D) is monic with integer coefficients
    std::vector<mpz_class> g(n + 1);
    mpz_class scale = 1;
    for (std::size_t i = n + 1; i-- > 0;) {
        mpq_class v = c[i].value() * scale;
        g[i] = v.get_num();
        scale *= D;
    }
    auto eval = [&](const mpz_class& at) {
        mpz_class acc = 0;
        for (std::size_t i = n + 1; i-- > 0;) acc = acc * at + g[i];
        return acc;
    };
    std::vector<Rational> roots;
    for (const auto& d : divisors(factor_integer(g[0]))) {
        for (int sign : {1, -1}) {
            mpz_class cand = sign * d;
            if (eval(cand) == 0) roots.emplace_back(mpq_class(cand, D));
        }
    }
    return roots;
}

// ------------------------------------------------------ Gaussian roots

struct GaussInt {
    mpz_class re, im;

    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
    mpz_class norm() const { return re * re + im * im; }
    bool is_zero() const { return re == 0 && im == 0; }
};

// Exact quotient a / b in Z[i] if it exists.
inline bool gauss_divide(const GaussInt& a, const GaussInt& b, GaussInt& q) {
    const mpz_class n = b.norm();
    const GaussInt t = a * GaussInt{b.re, -b.im};
    if (!mpz_divisible_p(t.re.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(t.im.get_mpz_t(), n.get_mpz_t()))
        return false;
    q = {t.re / n, t.im / n};
    return true;
}

// a^2 + b^2 = q for a prime q = 1 mod 4 (Hermite-Serret).
inline GaussInt two_squares(const mpz_class& q) {
    mpz_class c = 2, root;
    const mpz_class half = (q - 1) / 2, quarter = (q - 1) / 4;
    for (;; ++c) {
        mpz_class t;
        mpz_powm(t.get_mpz_t(), c.get_mpz_t(), half.get_mpz_t(), q.get_mpz_t());
        if (t == q - 1) {
            mpz_powm(root.get_mpz_t(), c.get_mpz_t(), quarter.get_mpz_t(), q.get_mpz_t());
            break;
        }
    }
    mpz_class r0 = q, r1 = root;
    while (r1 * r1 > q) {
        mpz_class r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    mpz_class rest = q - r1 * r1, b;
    mpz_sqrt(b.get_mpz_t(), rest.get_mpz_t());
    if (b * b != rest) throw Error("two_squares: not a sum of two squares");
    return {r1, b};
}

// All roots in Q(i) of a monic polynomial with nonzero constant term.
inline std::vector<GaussianRational> gaussian_roots(const Poly<GaussianRational>& f) {
    const auto& c = f.coeffs();
    const std::size_t n = c.size() - 1;
    std::vector<const mpq_class*> vals;
    for (const auto& x : c) {
        vals.push_back(&x.re());
        vals.push_back(&x.im());
    }
    const mpz_class D = lcm_denominators(vals);
    std::vector<GaussInt> g(n + 1);
    mpz_class scale = 1;
    for (std::size_t i = n + 1; i-- > 0;) {
        mpq_class re = c[i].re() * scale, im = c[i].im() * scale;
        g[i] = {re.get_num(), im.get_num()};
        scale *= D;
    }
    auto is_root = [&](const GaussInt& at) {
        GaussInt acc{0, 0};
        for (std::size_t i = n + 1; i-- > 0;) acc = acc * at + g[i];
        return acc.is_zero();
    };

    // Gaussian prime factorization of g0
    std::vector<std::pair<GaussInt, unsigned long>> primes;
    GaussInt rest = g[0];
    for (const auto& [q, e] : factor_integer(g[0].norm())) {
        std::vector<GaussInt> cands;
        if (q == 2) cands = {{1, 1}};
        else if (q % 4 == 3) cands = {{q, 0}};
        else {
            GaussInt pi = two_squares(q);
            cands = {pi, {pi.re, -pi.im}};
        }
        for (const auto& pi : cands) {
            unsigned long k = 0;
            GaussInt quot;
            while (gauss_divide(rest, pi, quot)) {
                rest = quot;
                ++k;
            }
            if (k) primes.emplace_back(pi, k);
        }
    }
    std::vector<GaussInt> divs{{1, 0}};
    for (const auto& [pi, e] : primes) {
        const std::size_t base = divs.size();
        GaussInt power{1, 0};
        for (unsigned long k = 1; k <= e; ++k) {
            power = power * pi;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * power);
        }
    }
    std::vector<GaussianRational> roots;
    const GaussInt units[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const auto& d : divs) {
        for (const auto& u : units) {
            GaussInt cand = d * u;
            if (is_root(cand)) roots.emplace_back(mpq_class(cand.re, D), mpq_class(cand.im, D));
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// ------------------------------------------------------ exact square roots

inline bool sqrt_rational(const mpq_class& v, mpq_class& out) {
    if (v < 0) return false;
    if (!mpz_perfect_square_p(v.get_num_mpz_t()) || !mpz_perfect_square_p(v.get_den_mpz_t())) return false;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), v.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), v.get_den_mpz_t());
    out = mpq_class(n, d);
    out.canonicalize();
    return true;
}

inline bool sqrt_in_field(const Rational& v, Rational& out) {
    mpq_class r;
    if (!sqrt_rational(v.value(), r)) return false;
    out = Rational(r);
    return true;
}

// sqrt(x + iy) = a + bi with a^2 = (|z| + x)/2 and b = y / (2a).
inline bool sqrt_in_field(const GaussianRational& z, GaussianRational& out) {
    const mpq_class& x = z.re();
    const mpq_class& y = z.im();
    if (sgn(y) == 0) {
        mpq_class r;
        if (x >= 0) {
            if (!sqrt_rational(x, r)) return false;
            out = GaussianRational(r, mpq_class(0));
        } else {
            if (!sqrt_rational(mpq_class(-x), r)) return false;
            out = GaussianRational(mpq_class(0), r);
        }
        return true;
    }
    mpq_class modulus, a;
    if (!sqrt_rational(mpq_class(x * x + y * y), modulus)) return false;
    if (!sqrt_rational(mpq_class((modulus + x) / 2), a) || sgn(a) == 0) return false;
    out = GaussianRational(a, mpq_class(y / (2 * a)));
    return out * out == z;
}

template <class F>
std::vector<F> roots_in_field(const Poly<F>& f) {
    if constexpr (std::is_same_v<F, Rational>) return rational_roots(f);
    else return gaussian_roots(f);
}

// Splits a monic squarefree polynomial over Q or Q(i) into irreducibles.
template <class F>
void split_char0(Poly<F> f, std::vector<Poly<F>>& out) {
    const auto& field = f.field();
    if (f.degree() >= 1 && f.coeff(0).is_zero()) {
        out.push_back(Poly<F>::x(field));
        f = exact_div(f, Poly<F>::x(field));
    }
    if (f.degree() <= 0) return;
    if (f.degree() >= 3) {
        for (const F& r : roots_in_field(f)) {
            out.push_back(Poly<F>::linear(r));
            f = exact_div(f, Poly<F>::linear(r));
        }
    }
    if (f.degree() <= 0) return;
    if (f.degree() == 2) {
        // quadratic formula with an exact square root of the discriminant
        const F b = f.coeff(1), c = f.coeff(0);
        const F disc = b * b - field.from_int(4) * c;
        F s = field.zero();
        if (sqrt_in_field(disc, s)) {
            const F half = field.from_int(2).inv();
            out.push_back(Poly<F>::linear((-b + s) * half));
            out.push_back(Poly<F>::linear((-b - s) * half));
            return;
        }
        out.push_back(f);
        return;
    }
    if (f.degree() <= 3) {
        // no root, degree <= 3: irreducible
        out.push_back(f);
        return;
    }
    throw FactorizationIncomplete("no roots found in irreducibility-undecided factor " + f.to_string() +
                                  " of degree " + std::to_string(f.degree()));
}

} // namespace detail

/// Complete factorization of f into monic irreducible primes with multiplicities,
/// sorted canonically. Always complete over F_p; over Q and Q(i) may throw
/// FactorizationIncomplete.
template <FieldElement F>
std::vector<FactorPower<F>> factor_irreducible(const Poly<F>& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    if (f.is_constant()) throw ConstantPolynomial();
    std::vector<FactorPower<F>> out;
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
        std::vector<Poly<F>> primes;
        if constexpr (std::is_same_v<F, PrimeResidue>) primes = detail::split_squarefree(part);
        else detail::split_char0(part, primes);
        for (auto& p : primes) out.push_back({p.monic(), mult});
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.factor < r.factor; });
    return out;
}

/// Product of factor^multiplicity.
template <FieldElement F>
Poly<F> expand(const typename F::field_type& field, const std::vector<FactorPower<F>>& factors) {
    Poly<F> acc = Poly<F>::constant(field.one());
    for (const auto& fp : factors) acc = acc * pow(fp.factor, fp.multiplicity);
    return acc;
}

} // namespace modtensor
