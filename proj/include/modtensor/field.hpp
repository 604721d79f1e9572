#pragma once

// Exact scalar fields: rationals, Gaussian rationals Q(i) and prime fields F_p.
//
// Each element type names its field through `field_type`; the field object is
// the context generic code needs to create zeros and ones (for F_p it carries
// the modulus). Field objects compare equal iff they describe the same field.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "modtensor/errors.hpp"

namespace modtensor {

enum class FieldKind { rational, gaussian_rational, prime_field };

/// Runtime description of a field; `modulus` is meaningful only for prime fields.
struct FieldTag {
    FieldKind kind = FieldKind::rational;
    std::uint64_t modulus = 0;

    static FieldTag rational() { return {FieldKind::rational, 0}; }
    static FieldTag gaussian_rational() { return {FieldKind::gaussian_rational, 0}; }
    static FieldTag prime_field(std::uint64_t p);

    /// Parses the command-line spelling: "q", "qi" or "fp:<p>".
    static FieldTag parse(std::string_view text);

    /// Inverse of parse().
    std::string name() const;

    bool operator==(const FieldTag&) const = default;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline FieldTag FieldTag::prime_field(std::uint64_t p) {
    // products of two residues must fit in 64 bits
    if (p >= (std::uint64_t{1} << 32))
        throw InvalidModulus("prime modulus must be below 2^32, got " + std::to_string(p));
    if (!is_prime(p))
        throw InvalidModulus("modulus " + std::to_string(p) + " is not prime");
    return {FieldKind::prime_field, p};
}

inline std::string FieldTag::name() const {
    switch (kind) {
    case FieldKind::rational: return "q";
    case FieldKind::gaussian_rational: return "qi";
    case FieldKind::prime_field: return "fp:" + std::to_string(modulus);
    }
    return "?";
}

inline FieldTag FieldTag::parse(std::string_view text) {
    if (text == "q") return rational();
    if (text == "qi") return gaussian_rational();
    if (text.starts_with("fp:")) {
        auto digits = text.substr(3);
        if (digits.empty() || digits.size() > 19) throw InvalidModulus("unknown field '" + std::string(text) + "'");
        std::uint64_t p = 0;
        for (char ch : digits) {
            if (ch < '0' || ch > '9') throw InvalidModulus("unknown field '" + std::string(text) + "'");
            p = p * 10 + static_cast<std::uint64_t>(ch - '0');
        }
        return prime_field(p);
    }
    throw InvalidModulus("unknown field '" + std::string(text) + "' (expected q, qi or fp:<p>)");
}

namespace detail {

// Replaces U+2212 (minus sign) with ASCII '-'.
inline std::string normalize_minus(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

/// Parses "[+-]digits[/digits]" exactly; throws Error on anything else.
inline mpq_class parse_rational(std::string_view raw) {
    std::string text = normalize_minus(raw);
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw Error("malformed rational '" + std::string(raw) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw DivisionByZero();
    mpq_class q(negative ? mpz_class(-n) : n, d);
    q.canonicalize();
    return q;
}

} // namespace detail

// ---------------------------------------------------------------- rationals

class Rational;

struct RationalField {
    using element_type = Rational;
    FieldTag tag() const { return FieldTag::rational(); }
    std::uint64_t characteristic() const { return 0; }
    Rational zero() const;
    Rational one() const;
    Rational from_int(long long n) const;
    Rational parse(std::string_view text) const;
    bool operator==(const RationalField&) const = default;
};

class Rational {
public:
    using field_type = RationalField;

    Rational() = default;
    Rational(long long n) : v_(static_cast<long>(n)) {} // NOLINT(google-explicit-constructor)
    Rational(long long num, long long den) {
        if (den == 0) throw DivisionByZero();
        v_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    RationalField field() const { return {}; }
    const mpq_class& value() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Rational inv() const {
        if (is_zero()) throw DivisionByZero();
        return Rational(mpq_class(1) / v_);
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero();
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    /// Canonical total order (here the usual order of Q).
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    std::string to_string() const { return v_.get_str(); }

private:
    mpq_class v_;
};

inline Rational RationalField::zero() const { return Rational(0); }
inline Rational RationalField::one() const { return Rational(1); }
inline Rational RationalField::from_int(long long n) const { return Rational(n); }
inline Rational RationalField::parse(std::string_view text) const { return Rational(detail::parse_rational(text)); }

// -------------------------------------------------------- Gaussian rationals

class GaussianRational;

struct GaussianField {
    using element_type = GaussianRational;
    FieldTag tag() const { return FieldTag::gaussian_rational(); }
    std::uint64_t characteristic() const { return 0; }
    GaussianRational zero() const;
    GaussianRational one() const;
    GaussianRational from_int(long long n) const;
    /// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" with rational a, b.
    GaussianRational parse(std::string_view text) const;
    bool operator==(const GaussianField&) const = default;
};

/// Element re + im*i of Q(i).
class GaussianRational {
public:
    using field_type = GaussianField;

    GaussianRational() = default;
    GaussianRational(long long re) : re_(static_cast<long>(re)) {} // NOLINT(google-explicit-constructor)
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }
    GaussianRational(const Rational& re, const Rational& im) : re_(re.value()), im_(im.value()) {}

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    GaussianField field() const { return {}; }
    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, mpq_class(-im_)}; }
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inv() const {
        if (is_zero()) throw DivisionByZero();
        mpq_class n = norm();
        return {mpq_class(re_ / n), mpq_class(-im_ / n)};
    }

    GaussianRational operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }
    GaussianRational& operator+=(const GaussianRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(m);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inv(); }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    /// Canonical total order: lexicographic on (re, im). Not a field order.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    std::string to_string() const {
        if (sgn(im_) == 0) return re_.get_str();
        std::string imag;
        if (im_ == 1) imag = "i";
        else if (im_ == -1) imag = "-i";
        else imag = im_.get_str() + "i";
        if (sgn(re_) == 0) return imag;
        return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag;
    }

private:
    mpq_class re_;
    mpq_class im_;
};

inline GaussianRational GaussianField::zero() const { return GaussianRational(0); }
inline GaussianRational GaussianField::one() const { return GaussianRational(1); }
inline GaussianRational GaussianField::from_int(long long n) const { return GaussianRational(n); }

inline GaussianRational GaussianField::parse(std::string_view raw) const {
    std::string text = detail::normalize_minus(raw);
    if (text.empty()) throw Error("empty Gaussian rational");
    // split into signed terms at '+'/'-' that are not leading
    mpq_class re, im;
    bool seen_re = false, seen_im = false;
    std::size_t start = 0;
    auto consume = [&](std::string_view term) {
        if (term.empty() || term == "+" || term == "-") throw Error("malformed Gaussian rational '" + std::string(raw) + "'");
        if (term.back() == 'i') {
            if (seen_im) throw Error("malformed Gaussian rational '" + std::string(raw) + "'");
            seen_im = true;
            std::string_view coeff = term.substr(0, term.size() - 1);
            if (coeff.empty() || coeff == "+") im = 1;
            else if (coeff == "-") im = -1;
            else im = detail::parse_rational(coeff);
        } else {
            if (seen_re) throw Error("malformed Gaussian rational '" + std::string(raw) + "'");
            seen_re = true;
            re = detail::parse_rational(term);
        }
    };
    for (std::size_t k = 1; k < text.size(); ++k) {
        if (text[k] == '+' || text[k] == '-') {
            consume(std::string_view(text).substr(start, k - start));
            start = k;
        }
    }
    consume(std::string_view(text).substr(start));
    return {re, im};
}

// ------------------------------------------------------------- prime fields

class PrimeResidue;

struct PrimeField {
    using element_type = PrimeResidue;

    PrimeField() = default;
    explicit PrimeField(std::uint64_t p) : modulus(FieldTag::prime_field(p).modulus) {}

    std::uint64_t modulus = 2;

    FieldTag tag() const { return {FieldKind::prime_field, modulus}; }
    std::uint64_t characteristic() const { return modulus; }
    std::uint64_t size() const { return modulus; }
    PrimeResidue zero() const;
    PrimeResidue one() const;
    PrimeResidue from_int(long long n) const;
    /// k-th element in enumeration order 0, 1, ..., p-1.
    PrimeResidue element(std::uint64_t k) const;
    /// Accepts an integer or a fraction a/b (read as a * b^-1).
    PrimeResidue parse(std::string_view text) const;
    bool operator==(const PrimeField&) const = default;
};

/// Canonical residue in [0, p).
class PrimeResidue {
public:
    using field_type = PrimeField;

    PrimeResidue(std::uint64_t value, std::uint64_t modulus) : v_(value % modulus), p_(modulus) {}

    PrimeField field() const {
        PrimeField f;
        f.modulus = p_;
        return f;
    }
    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    PrimeResidue pow(std::uint64_t e) const {
        std::uint64_t base = v_, acc = 1 % p_;
        while (e) {
            if (e & 1) acc = acc * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return {acc, p_};
    }

    PrimeResidue inv() const {
        if (is_zero()) throw DivisionByZero();
        return pow(p_ - 2);
    }

    PrimeResidue operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_}; }
    PrimeResidue& operator+=(const PrimeResidue& o) {
        check(o);
        v_ = (v_ + o.v_) % p_;
        return *this;
    }
    PrimeResidue& operator-=(const PrimeResidue& o) {
        check(o);
        v_ = (v_ + p_ - o.v_) % p_;
        return *this;
    }
    PrimeResidue& operator*=(const PrimeResidue& o) {
        check(o);
        v_ = v_ * o.v_ % p_;
        return *this;
    }
    PrimeResidue& operator/=(const PrimeResidue& o) {
        check(o);
        return *this *= o.inv();
    }
    friend PrimeResidue operator+(PrimeResidue a, const PrimeResidue& b) { return a += b; }
    friend PrimeResidue operator-(PrimeResidue a, const PrimeResidue& b) { return a -= b; }
    friend PrimeResidue operator*(PrimeResidue a, const PrimeResidue& b) { return a *= b; }
    friend PrimeResidue operator/(PrimeResidue a, const PrimeResidue& b) { return a /= b; }

    friend bool operator==(const PrimeResidue& a, const PrimeResidue& b) {
        a.check(b);
        return a.v_ == b.v_;
    }
    /// Canonical total order on residues. Not a field order.
    friend bool operator<(const PrimeResidue& a, const PrimeResidue& b) {
        a.check(b);
        return a.v_ < b.v_;
    }

    std::string to_string() const { return std::to_string(v_); }

private:
    void check(const PrimeResidue& o) const {
        if (p_ != o.p_)
            throw TagMismatch("fp:" + std::to_string(p_) + " vs fp:" + std::to_string(o.p_));
    }

    std::uint64_t v_;
    std::uint64_t p_;
};

inline PrimeResidue PrimeField::zero() const { return {0, modulus}; }
inline PrimeResidue PrimeField::one() const { return {1, modulus}; }
inline PrimeResidue PrimeField::element(std::uint64_t k) const { return {k, modulus}; }

inline PrimeResidue PrimeField::from_int(long long n) const {
    auto p = static_cast<long long>(modulus);
    long long r = n % p;
    if (r < 0) r += p;
    return {static_cast<std::uint64_t>(r), modulus};
}

inline PrimeResidue PrimeField::parse(std::string_view text) const {
    mpq_class q = detail::parse_rational(text);
    mpz_class num = q.get_num() % mpz_class(static_cast<unsigned long>(modulus));
    mpz_class den = q.get_den() % mpz_class(static_cast<unsigned long>(modulus));
    if (num < 0) num += static_cast<unsigned long>(modulus);
    if (den == 0) throw DivisionByZero();
    PrimeResidue n{num.get_ui(), modulus};
    PrimeResidue d{den.get_ui(), modulus};
    return n / d;
}

// ---------------------------------------------------------------- concepts

template <class F>
concept FieldElement = requires(const F a, const F b) {
    typename F::field_type;
    { a + b } -> std::same_as<F>;
    { a - b } -> std::same_as<F>;
    { a * b } -> std::same_as<F>;
    { a / b } -> std::same_as<F>;
    { -a } -> std::same_as<F>;
    { a.inv() } -> std::same_as<F>;
    { a.is_zero() } -> std::same_as<bool>;
    { a == b } -> std::same_as<bool>;
    { a < b } -> std::same_as<bool>;
    { a.field() } -> std::same_as<typename F::field_type>;
    { a.to_string() } -> std::same_as<std::string>;
};

template <class F>
using field_of = typename F::field_type;

/// Calls `fn(field)` with the concrete field object described by `tag`.
template <class Fn>
decltype(auto) visit_field(const FieldTag& tag, Fn&& fn) {
    switch (tag.kind) {
    case FieldKind::rational: return fn(RationalField{});
    case FieldKind::gaussian_rational: return fn(GaussianField{});
    case FieldKind::prime_field: return fn(PrimeField{tag.modulus});
    }
    throw Error("unknown field kind");
}

} // namespace modtensor
