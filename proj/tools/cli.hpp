#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "modtensor/modtensor.hpp"

namespace modtensor::cli {

enum ExitCode : int { exit_ok = 0, exit_input = 2, exit_self_check = 3 };

struct Options {
    std::optional<std::string> field;
    std::optional<std::string> input;
    bool json = false;

    bool primary = false;

    std::optional<std::string> kind;
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    std::optional<std::string> scalar_a;
    bool decompose = false;

    std::string rules;
    std::string lhs;
    std::string rhs;

    std::optional<std::string> expr;

    std::string demo;
    bool random = false;
    std::uint64_t seed = 1;
    std::size_t count = 5;
};

/// A computed result failed its own verification.
class SelfCheckFailed : public std::runtime_error {
public:
    explicit SelfCheckFailed(const std::string& what) : std::runtime_error("self-check failed: " + what) {}
};

/// Set MODTENSOR_FAULT=self-check to corrupt results before verification,
/// exercising exit code 3.
bool fault_injected();

inline void require(bool ok, const std::string& what) {
    if (!ok) throw SelfCheckFailed(what);
}

/// Loaded --input document, or null when no file was given.
Json load_input(const Options& opt);

/// As load_input(), but the document is mandatory and must be an object.
Json require_input(const Options& opt, const std::string& command);

/// The --field flag and the document's "field" member must agree when both are
/// present; q is the default.
FieldTag resolve_field(const Options& opt, const Json& doc);

template <FieldElement F>
std::string format_vector(const Vec<F>& v) {
    std::string out = "(";
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + v[k].to_string();
    return out + ")";
}

template <FieldElement F>
void print_matrix(std::ostream& out, const Matrix<F>& a, const std::string& indent = "  ") {
    if (a.rows() == 0 || a.cols() == 0) {
        out << indent << "(empty " << a.rows() << "x" << a.cols() << ")\n";
        return;
    }
    std::vector<std::string> cells;
    std::size_t width = 0;
    for (const auto& e : a.entries()) {
        cells.push_back(e.to_string());
        width = std::max(width, cells.back().size());
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out << indent << "[";
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const auto& c = cells[i * a.cols() + j];
            out << (j ? "  " : "") << std::string(width - c.size(), ' ') << c;
        }
        out << "]\n";
    }
}

template <FieldElement F>
void print_matrix(std::ostream& out, const PolyMatrix<F>& a, const std::string& indent = "  ") {
    if (a.rows() == 0 || a.cols() == 0) {
        out << indent << "(empty " << a.rows() << "x" << a.cols() << ")\n";
        return;
    }
    std::vector<std::string> cells;
    std::size_t width = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            cells.push_back(a(i, j).to_string());
            width = std::max(width, cells.back().size());
        }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out << indent << "[";
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const auto& c = cells[i * a.cols() + j];
            out << (j ? "  " : "") << std::string(width - c.size(), ' ') << c;
        }
        out << "]\n";
    }
}

template <FieldElement F>
std::string join_polys(const std::vector<Poly<F>>& ps, const std::string& sep = ", ") {
    std::string out;
    for (std::size_t k = 0; k < ps.size(); ++k) out += (k ? sep : "") + ps[k].to_string();
    return out;
}

int cmd_snf(const Options& opt, std::ostream& out);
int cmd_decompose(const Options& opt, std::ostream& out);
int cmd_tensor(const Options& opt, std::ostream& out);
int cmd_equiv(const Options& opt, std::ostream& out);
int cmd_schmidt(const Options& opt, std::ostream& out);
int cmd_demo(const Options& opt, std::ostream& out);

} // namespace modtensor::cli
