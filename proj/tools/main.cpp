#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

namespace modtensor::cli {

bool fault_injected() {
    const char* v = std::getenv("MODTENSOR_FAULT");
    return v && std::string(v) == "self-check";
}

Json load_input(const Options& opt) {
    if (!opt.input) return nullptr;
    std::ifstream in(*opt.input);
    if (!in) throw InputError("", "cannot open input file '" + *opt.input + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("", std::string("malformed JSON: ") + e.what());
    }
}

Json require_input(const Options& opt, const std::string& command) {
    Json doc = load_input(opt);
    if (doc.is_null()) throw InputError("", command + " needs --input <file>");
    if (!doc.is_object()) throw InputError("", "expected a JSON object");
    return doc;
}

FieldTag resolve_field(const Options& opt, const Json& doc) {
    std::optional<FieldTag> from_flag;
    if (opt.field) {
        try {
            from_flag = FieldTag::parse(*opt.field);
        } catch (const InvalidModulus& e) {
            throw InputError("--field", e.what());
        }
    }
    if (doc.is_object() && doc.contains("field")) {
        FieldTag from_doc = read_field_declaration(doc);
        if (from_flag && *from_flag != from_doc)
            throw InputError("/field", "document declares " + from_doc.name() + " but --field is " + from_flag->name());
        return from_doc;
    }
    return from_flag.value_or(FieldTag::rational());
}

} // namespace modtensor::cli

int main(int argc, char** argv) {
    using namespace modtensor::cli;
    Options opt;
    CLI::App app{"Exact K[x]-module decompositions and generalized tensor products."};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--field", opt.field, "q | qi | fp:<p> (default q)");
    app.add_option("--input", opt.input, "JSON input document");
    app.add_flag("--json", opt.json, "machine-readable output");

    auto* snf = app.add_subcommand("snf", "Smith normal form U P V = D of a polynomial matrix");
    auto* decompose = app.add_subcommand("decompose", "invariant factors of an operator or presented module");
    decompose->add_flag("--primary", opt.primary, "also split into elementary divisors");

    auto* tensor = app.add_subcommand("tensor", "relation subspace and quotient of E (x) F");
    tensor->add_option("--kind", opt.kind, "standard | opair | subring | branching");
    tensor->add_option("--n", opt.n, "dimension of E (standard and scalar branching kinds)");
    tensor->add_option("--m", opt.m, "dimension of F (standard and scalar branching kinds)");
    tensor->add_option("--scalar-a", opt.scalar_a, "scalar branching rule (c x, y) ~ (x, a c y)");
    tensor->add_flag("--decompose", opt.decompose, "decompose the induced quotient module");

    auto* equiv = app.add_subcommand("equiv", "decide equivalence of two formal sequences");
    equiv->add_option("--rules", opt.rules, "standard | opair | subring | branching")->required();
    equiv->add_option("--lhs", opt.lhs, "left sequence, e.g. ([1,0],[0,1]);([0,1],[1,0])")->required();
    equiv->add_option("--rhs", opt.rhs, "right sequence")->required();
    equiv->add_option("--scalar-a", opt.scalar_a, "scalar branching rule (c x, y) ~ (x, a c y)");

    auto* schmidt = app.add_subcommand("schmidt", "Schmidt rank of a bipartite tensor");
    schmidt->add_option("--expr", opt.expr, "formal sequence whose linearization is ranked");

    auto* demo = app.add_subcommand("demo", "worked examples");
    demo->add_option("name", opt.demo, "example61 | branching | register")->required();
    demo->add_flag("--random", opt.random, "add randomly drawn instances");
    demo->add_option("--seed", opt.seed, "seed for --random");
    demo->add_option("--count", opt.count, "number of random instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }

    std::ostringstream out;
    int code = exit_ok;
    try {
        if (snf->parsed()) code = cmd_snf(opt, out);
        else if (decompose->parsed()) code = cmd_decompose(opt, out);
        else if (tensor->parsed()) code = cmd_tensor(opt, out);
        else if (equiv->parsed()) code = cmd_equiv(opt, out);
        else if (schmidt->parsed()) code = cmd_schmidt(opt, out);
        else if (demo->parsed()) code = cmd_demo(opt, out);
    } catch (const SelfCheckFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_self_check;
    } catch (const modtensor::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_self_check;
    }
    std::cout << out.str();
    return code;
}
