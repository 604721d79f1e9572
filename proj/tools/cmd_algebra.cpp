#include <ostream>
#include <string>

#include "cli.hpp"

namespace modtensor::cli {

namespace {

template <FieldElement F>
bool is_unit(const Poly<F>& p) {
    return p.degree() == 0;
}

// Verifies U P V = D, unimodularity and the diagonal shape; returns the check names.
template <FieldElement F>
Json check_smith(const PolyMatrix<F>& p, const SmithForm<F>& snf) {
    require(snf.U * p * snf.V == snf.D, "U P V differs from D");
    require(is_unit(determinant(snf.U)), "det U is not a nonzero constant");
    require(is_unit(determinant(snf.V)), "det V is not a nonzero constant");
    const auto& d = snf.D;
    bool seen_zero = false;
    const Poly<F>* prev = nullptr;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (i != j) {
                require(d(i, j).is_zero(), "D is not diagonal");
                continue;
            }
            if (d(i, i).is_zero()) {
                seen_zero = true;
                continue;
            }
            require(!seen_zero, "nonzero diagonal entry after a zero one");
            require(d(i, i).is_monic(), "diagonal entry is not monic");
            if (prev) require(divides(*prev, d(i, i)), "diagonal entries do not form a divisibility chain");
            prev = &d(i, i);
        }
    return Json{{"UPV_equals_D", true}, {"unimodular", true}, {"divisibility_chain", true}};
}

template <FieldElement F>
void corrupt(SmithForm<F>& snf) {
    if (snf.D.rows() && snf.D.cols())
        snf.D(0, 0) += Poly<F>::constant(snf.D.field().one());
}

template <class Field>
int run_snf(const Field& field, const Options& opt, const Json& doc, std::ostream& out) {
    using F = decltype(field.one());
    const bool nested = doc.contains("matrix");
    const auto p = poly_matrix_from_json<F>(nested ? doc["matrix"] : doc, field, nested ? "/matrix" : "");
    auto snf = smith_normal_form(p);
    if (fault_injected()) corrupt(snf);
    Json checks = check_smith(p, snf);

    std::vector<Poly<F>> factors;
    for (const auto& d : snf.diagonal())
        if (!d.is_constant()) factors.push_back(d);

    if (opt.json) {
        Json j = field_declaration(field.tag());
        j["input"] = to_json(p);
        j.update(to_json(snf));
        Json inv = Json::array();
        for (const auto& f : factors) inv.push_back(to_json(f));
        j["invariant_factors"] = std::move(inv);
        j["self_check"] = std::move(checks);
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "field: " << field.tag().name() << "\n";
    out << "P (" << p.rows() << "x" << p.cols() << "):\n";
    print_matrix(out, p);
    out << "Smith normal form D = U P V:\n";
    print_matrix(out, snf.D);
    out << "U:\n";
    print_matrix(out, snf.U);
    out << "V:\n";
    print_matrix(out, snf.V);
    out << "invariant factors: " << (factors.empty() ? "none" : join_polys(factors)) << "\n";
    out << "self-check: U P V = D, U and V unimodular, d_i | d_(i+1): passed\n";
    return exit_ok;
}

template <FieldElement F>
std::string structure_string(const ModuleDecomposition<F>& dec) {
    std::string out;
    if (dec.free_rank > 0) out = dec.free_rank == 1 ? "R" : "R^" + std::to_string(dec.free_rank);
    for (const auto& a : dec.invariant_factors) out += (out.empty() ? "" : " + ") + ("R/(" + a.to_string() + ")");
    return out.empty() ? "0" : out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

template <class Field>
int run_decompose(const Field& field, const Options& opt, const Json& doc, std::ostream& out) {
    using F = decltype(field.one());
    const bool has_op = doc.contains("operator"), has_pres = doc.contains("presentation");
    if (has_op == has_pres) throw InputError("", "expected exactly one of \"operator\" or \"presentation\"");

    std::optional<Matrix<F>> op;
    PolyMatrix<F> presentation(field, 0, 0);
    std::size_t generators = 0;
    if (has_op) {
        op = matrix_from_json<F>(doc["operator"], field, "/operator");
        if (!op->is_square()) throw InputError("/operator", "operator must be square");
        presentation = characteristic_matrix(*op);
        generators = op->rows();
    } else {
        presentation = poly_matrix_from_json<F>(doc["presentation"], field, "/presentation");
        generators = presentation.rows();
    }

    auto snf = smith_normal_form(presentation);
    if (fault_injected()) corrupt(snf);
    Json checks = check_smith(presentation, snf);
    const auto dec = detail::decomposition_from_smith(snf, generators);
    if (op) {
        Poly<F> product = Poly<F>::constant(field.one());
        for (const auto& a : dec.invariant_factors) product = product * a;
        require(product == characteristic_polynomial(*op), "product of invariant factors differs from det(xI - A)");
        require(poly_eval_operator(dec.invariant_factors.back(), *op).is_zero(), "last invariant factor does not annihilate A");
        checks["product_is_charpoly"] = true;
        checks["last_factor_annihilates"] = true;
    }

    std::optional<PrimaryDecomposition<F>> primary;
    std::optional<std::string> warning;
    if (opt.primary) {
        try {
            primary = primary_decomposition(dec);
            require(recombine(*primary, field) == dec.invariant_factors,
                    "elementary divisors do not recombine to the invariant factors");
            checks["primary_recombines"] = true;
        } catch (const FactorizationIncomplete& e) {
            warning = e.what();
        }
    }
    const auto flags = torsion_info(dec);

    if (opt.json) {
        Json j = field_declaration(field.tag());
        j["module"] = op ? "operator" : "presentation";
        j["generators"] = generators;
        j.update(to_json(dec));
        if (opt.primary) j["primary"] = primary ? to_json(*primary) : Json(nullptr);
        Json warnings = Json::array();
        if (warning) warnings.push_back(Json{{"code", "FactorizationIncomplete"}, {"message", *warning}});
        j["warnings"] = std::move(warnings);
        j["self_check"] = std::move(checks);
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "field: " << field.tag().name() << "\n";
    if (op) {
        out << "module: K^" << generators << " with x acting through\n";
        print_matrix(out, *op);
    } else {
        out << "module: R^" << generators << " modulo the columns of\n";
        print_matrix(out, presentation);
    }
    out << "free rank s: " << dec.free_rank << "\n";
    out << "invariant factors a_1 | ... | a_r: "
        << (dec.invariant_factors.empty() ? "none" : join_polys(dec.invariant_factors)) << "\n";
    out << "structure: M ≅ " << structure_string(dec) << "\n";
    out << "minimal number of generators s + r: " << minimal_generator_count(dec) << "\n";
    out << "torsion: " << yes_no(flags.is_torsion) << ", torsion-free: " << yes_no(flags.is_torsion_free)
        << ", free: " << yes_no(flags.is_free) << "\n";
    if (primary) {
        out << "elementary divisors:\n";
        if (primary->components.empty()) out << "  none\n";
        for (const auto& c : primary->components) {
            out << "  " << c.prime.to_string() << ":";
            for (auto e : c.exponents) out << " (" << c.prime.to_string() << ")^" << e;
            out << "\n";
        }
    }
    if (warning) out << "warning: elementary divisors unavailable, keeping invariant factors (" << *warning << ")\n";
    out << "self-check: U P V = D";
    if (op) out << ", product = det(xI - A), a_r(A) = 0";
    if (primary) out << ", elementary divisors recombine";
    out << ": passed\n";
    return exit_ok;
}

} // namespace

int cmd_snf(const Options& opt, std::ostream& out) {
    Json doc = require_input(opt, "snf");
    return visit_field(resolve_field(opt, doc), [&](const auto& field) { return run_snf(field, opt, doc, out); });
}

int cmd_decompose(const Options& opt, std::ostream& out) {
    Json doc = require_input(opt, "decompose");
    return visit_field(resolve_field(opt, doc), [&](const auto& field) { return run_decompose(field, opt, doc, out); });
}

} // namespace modtensor::cli
