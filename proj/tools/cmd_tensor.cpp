#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "cli.hpp"

namespace modtensor::cli {

namespace {

using Dims = std::pair<std::size_t, std::size_t>;

template <FieldElement F>
F parse_scalar_flag(const field_of<F>& field, const std::string& flag, const std::string& text) {
    try {
        return field.parse(text);
    } catch (const Error& e) {
        throw InputError(flag, e.what());
    }
}

std::size_t dimension(const std::optional<std::size_t>& flag, const Json& doc, const char* key,
                      std::optional<std::size_t> fallback) {
    if (flag) {
        if (*flag == 0) throw InputError(std::string("--") + key, "dimension must be positive");
        return *flag;
    }
    if (doc.is_object() && doc.contains(key)) return read_size(doc[key], std::string("/") + key);
    if (fallback) return *fallback;
    throw InputError(std::string("--") + key, "dimension required");
}

template <FieldElement F>
Matrix<F> square_member(const Json& doc, const char* key, const field_of<F>& field) {
    if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("/") + key, "missing member (needs --input)");
    auto a = matrix_from_json<F>(doc[key], field, std::string("/") + key);
    if (!a.is_square()) throw InputError(std::string("/") + key, "operator must be square");
    return a;
}

template <FieldElement F>
Poly<F> poly_member(const Json& doc, const char* key, const field_of<F>& field) {
    if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("/") + key, "missing member (needs --input)");
    return poly_from_json<F>(doc[key], field, std::string("/") + key);
}

/// Builds the tensor kind named on the command line from flags and the input document.
template <FieldElement F>
TensorKind<F> build_kind(const std::string& name, const field_of<F>& field, const Options& opt, const Json& doc,
                         std::optional<Dims> hint) {
    const auto hint_n = hint ? std::optional<std::size_t>(hint->first) : std::nullopt;
    const auto hint_m = hint ? std::optional<std::size_t>(hint->second) : std::nullopt;
    if (name == "standard")
        return StandardKind<F>{dimension(opt.n, doc, "n", hint_n), dimension(opt.m, doc, "m", hint_m)};
    if (name == "opair") return OperatorPairKind<F>{square_member<F>(doc, "A", field), square_member<F>(doc, "B", field)};
    if (name == "subring")
        return SubringKind<F>{square_member<F>(doc, "A", field), square_member<F>(doc, "B", field),
                              poly_member<F>(doc, "p", field)};
    const bool scalar = opt.scalar_a || (doc.is_object() && doc.contains("a"));
    if ((name == "branching" && scalar) || name == "branching-scalar") {
        F a = opt.scalar_a ? parse_scalar_flag<F>(field, "--scalar-a", *opt.scalar_a)
                           : scalar_from_json<F>(json_detail::member(doc, "a", ""), field, "/a");
        return ScaledBranchingKind<F>{a, dimension(opt.n, doc, "n", hint_n.value_or(1)),
                                      dimension(opt.m, doc, "m", hint_m.value_or(1))};
    }
    if (name == "branching")
        return BranchingKind<F>{square_member<F>(doc, "A", field), square_member<F>(doc, "B", field),
                                poly_member<F>(doc, "phi", field), poly_member<F>(doc, "psi", field)};
    throw InputError("--kind", "unknown kind '" + name + "' (standard, opair, subring, branching)");
}

template <FieldElement F>
std::string relation_description(const TensorKind<F>& kind) {
    switch (kind.index()) {
    case 0: return "W = {0}";
    case 1: return "W = im(A (x) I - I (x) B)";
    case 2: return "W = im(p(A) (x) I - I (x) p(B))";
    case 3: return "W = im(phi(A) (x) I - I (x) psi(B))";
    default: return "W = span{c x (x) y - x (x) a c y} = im((1 - a) I)";
    }
}

template <class Field>
int run_tensor(const Field& field, const Options& opt, const Json& doc, std::ostream& out) {
    using F = decltype(field.one());
    std::string name = opt.kind.value_or("");
    if (name.empty() && doc.is_object() && doc.contains("kind") && doc["kind"].is_string())
        name = doc["kind"].get<std::string>();
    if (name.empty()) throw InputError("--kind", "tensor kind required");
    const auto kind = build_kind<F>(name, field, opt, doc, std::nullopt);
    const auto [n, m] = kind_dimensions(kind);
    const auto w = relation_subspace<F>(kind, field, n, m);

    const std::size_t reported_rank = w->rank() + (fault_injected() ? 1 : 0);
    require(reported_rank + w->quotient_dim() == n * m, "rank(W) + quotient dimension differs from n m");
    require(w->canonical_basis().size() == w->quotient_dim(), "canonical basis size differs from quotient dimension");
    const auto& g = w->generator_matrix();
    for (std::size_t j = 0; j < g.cols(); ++j)
        require(w->contains(g.col(j)), "a generator column projects to a nonzero class");
    Json checks{{"rank_plus_dim", true}, {"generators_vanish", true}};

    std::optional<Matrix<F>> induced;
    std::optional<ModuleDecomposition<F>> dec;
    if (std::holds_alternative<OperatorPairKind<F>>(kind)) {
        induced = induced_operator(*w);
        require(*induced == induced_operator_right(*w), "A (x) I and I (x) B induce different operators");
        checks["left_equals_right_action"] = true;
        if (opt.decompose && induced->rows() > 0) dec = decompose_operator_module(OperatorModule<F>(*induced));
    } else if (opt.decompose) {
        throw InputError("--decompose", "the induced module structure is defined for the opair kind only");
    }
    const auto caveat = homomorphism_caveat(kind);

    if (opt.json) {
        Json j = field_declaration(field.tag());
        j.update(to_json(*w));
        if (dec) j["induced_decomposition"] = to_json(*dec);
        j["self_check"] = std::move(checks);
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "field: " << field.tag().name() << "\n";
    out << "kind: " << kind_name(kind) << "\n";
    if (const auto* k = std::get_if<ScaledBranchingKind<F>>(&kind))
        out << "rule: (c x, y) ~ (x, a c y) with a = " << k->a.to_string() << "\n";
    out << "E (x) F: n = " << n << ", m = " << m << ", dimension " << n * m << "\n";
    out << "relations: " << relation_description(kind) << ", rank " << w->rank() << "\n";
    out << "quotient dimension: " << w->quotient_dim() << "\n";
    out << "canonical basis (flat indices i*m + j):";
    if (w->canonical_basis().empty()) out << " none";
    for (auto idx : w->canonical_basis()) out << " " << idx;
    out << "\n";
    if (induced) {
        out << "induced operator (x acting on the quotient):\n";
        print_matrix(out, *induced);
    }
    if (opt.decompose) {
        if (dec)
            out << "quotient module invariant factors: "
                << (dec->invariant_factors.empty() ? "none" : join_polys(dec->invariant_factors)) << "\n";
        else
            out << "quotient module: zero\n";
    }
    if (caveat) out << "caveat: " << *caveat << "\n";
    out << "self-check: rank + dimension = n m, generators vanish in the quotient";
    if (induced) out << ", A (x) I and I (x) B induce the same operator";
    out << ": passed\n";
    return exit_ok;
}

template <FieldElement F>
FormalSequence<F> parse_side(const std::string& flag, const std::string& text, const field_of<F>& field) {
    try {
        return parse_expression<F>(text, field);
    } catch (const SyntaxError& e) {
        throw InputError(flag, e.what());
    }
}

template <class Field>
int run_equiv(const Field& field, const Options& opt, const Json& doc, std::ostream& out) {
    using F = decltype(field.one());
    const auto lhs = parse_side<F>("--lhs", opt.lhs, field);
    const auto rhs = parse_side<F>("--rhs", opt.rhs, field);
    if (lhs.n() != rhs.n() || lhs.m() != rhs.m())
        throw DimensionMismatch("lhs pairs are " + std::to_string(lhs.n()) + "x" + std::to_string(lhs.m()) +
                                ", rhs pairs are " + std::to_string(rhs.n()) + "x" + std::to_string(rhs.m()));
    const std::size_t n = lhs.n(), m = lhs.m();
    const auto kind = build_kind<F>(opt.rules, field, opt, doc, Dims{n, m});
    if (kind_dimensions(kind) != Dims{n, m}) throw DimensionMismatch("rule operators do not match the sequences");

    const auto w = relation_subspace<F>(kind, field, n, m);
    const auto diff = linearize(lhs) - linearize(rhs);
    const bool equivalent = decide_equiv(lhs, rhs, *w) != fault_injected();
    const bool standard = is_zero(diff.coords);
    std::vector<Vec<F>> cols;
    for (std::size_t j = 0; j < w->generator_matrix().cols(); ++j) cols.push_back(w->generator_matrix().col(j));
    cols.push_back(diff.coords);
    const bool rank_test = rank(Matrix<F>::from_columns(field, n * m, cols)) == w->rank();
    require(equivalent == rank_test, "decision disagrees with the rank test on [G | difference]");
    std::optional<Vec<F>> witness;
    if (equivalent) {
        witness = solve_linear(w->generator_matrix(), diff.coords);
        require(w->generator_matrix() * *witness == diff.coords, "witness does not reproduce the difference");
    }
    require(!standard || equivalent, "standard-equivalent sequences were separated");

    std::string note;
    if (equivalent && !standard)
        note = "equivalent under " + opt.rules +
               " rules but not under standard rules: the difference is a nonzero element of W";
    else if (!equivalent)
        note = "the difference lies outside W";

    if (opt.json) {
        Json j = field_declaration(field.tag());
        j["rules"] = opt.rules;
        j["n"] = n;
        j["m"] = m;
        j["lhs"] = to_expression(lhs);
        j["rhs"] = to_expression(rhs);
        j["difference"] = to_json(diff.coords);
        j["equivalent"] = equivalent;
        j["standard_equivalent"] = standard;
        j["witness"] = witness ? to_json(*witness) : Json(nullptr);
        if (!note.empty()) j["note"] = note;
        if (auto caveat = homomorphism_caveat(kind)) j["caveat"] = *caveat;
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "field: " << field.tag().name() << "\n";
    out << "rules: " << opt.rules << " (" << relation_description(kind) << ")\n";
    out << "lhs: " << to_expression(lhs) << "\n";
    out << "rhs: " << to_expression(rhs) << "\n";
    out << "linearized difference: " << format_vector(diff.coords) << "\n";
    out << "equivalent under " << opt.rules << " rules: " << (equivalent ? "yes" : "no") << "\n";
    if (opt.rules != "standard") out << "equivalent under standard rules: " << (standard ? "yes" : "no") << "\n";
    if (witness && !standard) out << "witness: difference = G t with t = " << format_vector(*witness) << "\n";
    if (!note.empty()) out << "note: " << note << "\n";
    if (auto caveat = homomorphism_caveat(kind)) out << "caveat: " << *caveat << "\n";
    return exit_ok;
}

template <class Field>
int run_schmidt(const Field& field, const Options& opt, const Json& doc, std::ostream& out) {
    using F = decltype(field.one());
    TensorElement<F> t;
    if (opt.expr) {
        t = linearize(parse_side<F>("--expr", *opt.expr, field));
    } else {
        if (!doc.is_object()) throw InputError("", "schmidt needs --expr or --input with n, m and coords");
        t.n = read_size(json_detail::member(doc, "n", ""), "/n");
        t.m = read_size(json_detail::member(doc, "m", ""), "/m");
        t.coords = vector_from_json<F>(json_detail::member(doc, "coords", ""), field, "/coords");
        if (t.coords.size() != t.n * t.m) throw InputError("/coords", "expected n m coordinates");
    }
    const std::size_t r = schmidt_rank(t) + (fault_injected() ? 1 : 0);
    const Matrix<F> coeffs(field, t.n, t.m, t.coords);
    require(r <= std::min(t.n, t.m), "Schmidt rank exceeds min(n, m)");
    require(r == rank(coeffs.transpose()), "row and column rank disagree");
    const std::string verdict = r == 0 ? "zero tensor" : r == 1 ? "product state (unentangled)" : "entangled";

    if (opt.json) {
        Json j = field_declaration(field.tag());
        j.update(to_json(t));
        j["schmidt_rank"] = r;
        j["entangled"] = r >= 2;
        out << j.dump(2) << "\n";
        return exit_ok;
    }
    out << "field: " << field.tag().name() << "\n";
    out << "coordinates: " << format_vector(t.coords) << "\n";
    out << "coefficient matrix (" << t.n << "x" << t.m << "):\n";
    print_matrix(out, coeffs);
    out << "Schmidt rank: " << r << " (" << verdict << ")\n";
    return exit_ok;
}

} // namespace

int cmd_tensor(const Options& opt, std::ostream& out) {
    Json doc = load_input(opt);
    return visit_field(resolve_field(opt, doc), [&](const auto& field) { return run_tensor(field, opt, doc, out); });
}

int cmd_equiv(const Options& opt, std::ostream& out) {
    Json doc = load_input(opt);
    return visit_field(resolve_field(opt, doc), [&](const auto& field) { return run_equiv(field, opt, doc, out); });
}

int cmd_schmidt(const Options& opt, std::ostream& out) {
    Json doc = load_input(opt);
    return visit_field(resolve_field(opt, doc), [&](const auto& field) { return run_schmidt(field, opt, doc, out); });
}

} // namespace modtensor::cli
