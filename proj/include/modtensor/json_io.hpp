#pragma once

// JSON encodings of scalars, polynomials, matrices and computed reports.
//
//   field declaration   {"field": "q" | "qi" | "fp", "p": 5}
//   rational            "-3/4" or 7
//   gaussian rational   {"re": "1/2", "im": "-3"}  (a bare rational is accepted)
//   prime residue       "4" or 4, reduced modulo p
//   polynomial          array of scalars, index = degree
//   matrix              {"rows": r, "cols": c, "entries": [[...], ...]}
//
// Readers take a JSON-pointer style path so that errors name the bad node.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "modtensor/errors.hpp"
#include "modtensor/field.hpp"
#include "modtensor/matrix.hpp"
#include "modtensor/module.hpp"
#include "modtensor/poly.hpp"
#include "modtensor/smith.hpp"
#include "modtensor/tensor.hpp"

namespace modtensor {

using Json = nlohmann::ordered_json;

/// Malformed or schema-violating input; `path` locates the offending node.
class InputError : public Error {
public:
    InputError(const std::string& path, const std::string& what)
        : Error((path.empty() ? std::string("/") : path) + ": " + what), path_(path.empty() ? "/" : path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

namespace json_detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

inline const Json& member(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(child(path, key), "missing member");
    return *it;
}

inline std::size_t positive_size(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) throw InputError(path, "expected a positive integer");
    return j.get<std::size_t>();
}

inline std::size_t nonnegative_size(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned()) throw InputError(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

inline std::string scalar_text(const Json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return j.dump();
    throw InputError(path, "expected a scalar (string or integer)");
}

} // namespace json_detail

inline std::size_t read_size(const Json& j, const std::string& path) { return json_detail::positive_size(j, path); }

/// Field named by a declaration object {"field": ..., "p": ...}.
inline FieldTag read_field_declaration(const Json& j, const std::string& path = "") {
    const Json& f = json_detail::member(j, "field", path);
    const std::string fpath = json_detail::child(path, "field");
    if (!f.is_string()) throw InputError(fpath, "expected \"q\", \"qi\" or \"fp\"");
    const auto name = f.get<std::string>();
    try {
        if (name == "q") return FieldTag::rational();
        if (name == "qi") return FieldTag::gaussian_rational();
        if (name == "fp") {
            const Json& p = json_detail::member(j, "p", path);
            if (!p.is_number_unsigned()) throw InputError(json_detail::child(path, "p"), "expected a prime");
            return FieldTag::prime_field(p.get<std::uint64_t>());
        }
        if (name.starts_with("fp:")) return FieldTag::parse(name);
    } catch (const InvalidModulus& e) {
        throw InputError(json_detail::child(path, "p"), e.what());
    }
    throw InputError(fpath, "unknown field '" + name + "'");
}

inline Json field_declaration(const FieldTag& tag) {
    Json j;
    switch (tag.kind) {
    case FieldKind::rational: j["field"] = "q"; break;
    case FieldKind::gaussian_rational: j["field"] = "qi"; break;
    case FieldKind::prime_field:
        j["field"] = "fp";
        j["p"] = tag.modulus;
        break;
    }
    return j;
}

// ----------------------------------------------------------------- scalars

inline Json to_json(const Rational& a) { return a.to_string(); }
inline Json to_json(const PrimeResidue& a) { return std::to_string(a.value()); }
inline Json to_json(const GaussianRational& a) {
    return Json{{"re", a.re().get_str()}, {"im", a.im().get_str()}};
}

template <FieldElement F>
F scalar_from_json(const Json& j, const field_of<F>& field, const std::string& path) {
    try {
        if constexpr (std::is_same_v<F, GaussianRational>) {
            if (j.is_object()) {
                auto re = detail::parse_rational(json_detail::scalar_text(json_detail::member(j, "re", path),
                                                                          json_detail::child(path, "re")));
                mpq_class im = 0;
                if (j.contains("im"))
                    im = detail::parse_rational(json_detail::scalar_text(j["im"], json_detail::child(path, "im")));
                for (const auto& [key, value] : j.items())
                    if (key != "re" && key != "im") throw InputError(json_detail::child(path, key), "unexpected member");
                return GaussianRational(re, im);
            }
        }
        return field.parse(json_detail::scalar_text(j, path));
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(path, e.what());
    }
}

template <FieldElement F>
Json to_json(const Poly<F>& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
    return arr;
}

template <FieldElement F>
Poly<F> poly_from_json(const Json& j, const field_of<F>& field, const std::string& path) {
    if (!j.is_array()) throw InputError(path, "expected a polynomial (array of coefficients, index = degree)");
    std::vector<F> coeffs;
    for (std::size_t k = 0; k < j.size(); ++k)
        coeffs.push_back(scalar_from_json<F>(j[k], field, json_detail::child(path, k)));
    return Poly<F>(field, std::move(coeffs));
}

template <FieldElement F>
Json to_json(const Vec<F>& v) {
    Json arr = Json::array();
    for (const auto& c : v) arr.push_back(to_json(c));
    return arr;
}

template <FieldElement F>
Vec<F> vector_from_json(const Json& j, const field_of<F>& field, const std::string& path) {
    if (!j.is_array() || j.empty()) throw InputError(path, "expected a nonempty array of scalars");
    Vec<F> v;
    for (std::size_t k = 0; k < j.size(); ++k) v.push_back(scalar_from_json<F>(j[k], field, json_detail::child(path, k)));
    return v;
}

// ---------------------------------------------------------------- matrices

namespace json_detail {

// Checks an embedded field declaration, if any, against the ambient field.
inline void check_embedded_field(const Json& j, const FieldTag& tag, const std::string& path) {
    if (!j.contains("field")) return;
    if (read_field_declaration(j, path) != tag)
        throw InputError(child(path, "field"), "field differs from the declared field " + tag.name());
}

template <class Entry, class ReadEntry>
std::vector<Entry> read_entries(const Json& j, const FieldTag& tag, const std::string& path, std::size_t& rows,
                                std::size_t& cols, bool allow_no_cols, ReadEntry read) {
    if (!j.is_object()) throw InputError(path, "expected a matrix object {rows, cols, entries}");
    check_embedded_field(j, tag, path);
    rows = positive_size(member(j, "rows", path), child(path, "rows"));
    cols = allow_no_cols ? nonnegative_size(member(j, "cols", path), child(path, "cols"))
                         : positive_size(member(j, "cols", path), child(path, "cols"));
    const Json& e = member(j, "entries", path);
    const std::string epath = child(path, "entries");
    if (!e.is_array() || e.size() != rows) throw InputError(epath, "expected " + std::to_string(rows) + " rows");
    std::vector<Entry> out;
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string rpath = child(epath, i);
        if (!e[i].is_array() || e[i].size() != cols)
            throw InputError(rpath, "expected a row of " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) out.push_back(read(e[i][k], child(rpath, k)));
    }
    return out;
}

} // namespace json_detail

template <FieldElement F>
Matrix<F> matrix_from_json(const Json& j, const field_of<F>& field, const std::string& path) {
    std::size_t rows = 0, cols = 0;
    auto entries = json_detail::read_entries<F>(j, field.tag(), path, rows, cols, false, [&](const Json& e, const std::string& p) {
        return scalar_from_json<F>(e, field, p);
    });
    return Matrix<F>(field, rows, cols, std::move(entries));
}

/// Zero columns are allowed: a presentation without relations.
template <FieldElement F>
PolyMatrix<F> poly_matrix_from_json(const Json& j, const field_of<F>& field, const std::string& path) {
    std::size_t rows = 0, cols = 0;
    auto entries = json_detail::read_entries<Poly<F>>(j, field.tag(), path, rows, cols, true,
                                                      [&](const Json& e, const std::string& p) {
                                                          return poly_from_json<F>(e, field, p);
                                                      });
    return PolyMatrix<F>(field, rows, cols, std::move(entries));
}

template <FieldElement F>
Json to_json(const Matrix<F>& m) {
    Json j = field_declaration(m.field().tag());
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
    j["entries"] = std::move(rows);
    return j;
}

template <FieldElement F>
Json to_json(const PolyMatrix<F>& m) {
    Json j = field_declaration(m.field().tag());
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

// ----------------------------------------------------------------- reports

template <FieldElement F>
Json to_json(const SmithForm<F>& snf) {
    Json j;
    j["U"] = to_json(snf.U);
    j["D"] = to_json(snf.D);
    j["V"] = to_json(snf.V);
    Json diag = Json::array();
    for (const auto& d : snf.diagonal()) diag.push_back(to_json(d));
    j["diagonal"] = std::move(diag);
    return j;
}

inline Json to_json(const TorsionFlags& f) {
    return Json{{"is_torsion", f.is_torsion}, {"is_torsion_free", f.is_torsion_free}, {"is_free", f.is_free}};
}

template <FieldElement F>
Json to_json(const PrimaryDecomposition<F>& p) {
    Json arr = Json::array();
    for (const auto& c : p.components) arr.push_back(Json{{"prime", to_json(c.prime)}, {"exponents", c.exponents}});
    return arr;
}

/// {"free_rank", "invariant_factors", "flags", "minimal_generators"}; the caller
/// adds "primary" when it was requested and could be computed.
template <FieldElement F>
Json to_json(const ModuleDecomposition<F>& dec) {
    Json j;
    j["free_rank"] = dec.free_rank;
    Json factors = Json::array();
    for (const auto& a : dec.invariant_factors) factors.push_back(to_json(a));
    j["invariant_factors"] = std::move(factors);
    j["flags"] = to_json(torsion_info(dec));
    j["minimal_generators"] = minimal_generator_count(dec);
    return j;
}

template <FieldElement F>
Json to_json(const RelationSubspace<F>& w) {
    Json j;
    j["kind"] = kind_name(w.kind());
    j["n"] = w.n();
    j["m"] = w.m();
    j["relation_rank"] = w.rank();
    j["quotient_dim"] = w.quotient_dim();
    j["canonical_basis"] = w.canonical_basis();
    if (std::holds_alternative<OperatorPairKind<F>>(w.kind())) j["induced_operator"] = to_json(induced_operator(w));
    if (auto caveat = homomorphism_caveat(w.kind())) j["caveat"] = *caveat;
    return j;
}

template <FieldElement F>
Json to_json(const TensorElement<F>& t) {
    return Json{{"n", t.n}, {"m", t.m}, {"coords", to_json(t.coords)}};
}

template <FieldElement F>
Json to_json(const QuotientClass<F>& c) {
    return to_json(c.canonical);
}

} // namespace modtensor
