#pragma once

// Formal sequences of pairs (x_1, y_1) ... (x_k, y_k) in E x F, their
// concatenation, and equivalence under the tensor rewriting rules:
//
//   permute       reorder the pairs
//   split-left    (x + x', y)  <->  (x, y)(x', y)
//   split-right   (x, y + y')  <->  (x, y)(x, y')
//   move          (P x, y)     <->  (x, Q y)   for every scalar action pair (P, Q)
//
// where the scalar action pairs come from the tensor kind: (c I, c I) for the
// standard product, (pi(A), pi(B)) for an operator pair, and so on.
//
// decide_equiv() linearizes both sides and tests membership of the difference
// in the relation subspace. closure_oracle() applies the rules literally by
// breadth-first search over a prime field; it exists to validate the decider.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modtensor/errors.hpp"
#include "modtensor/field.hpp"
#include "modtensor/matrix.hpp"
#include "modtensor/tensor.hpp"

namespace modtensor {

template <FieldElement F>
struct FormalPair {
    Vec<F> x;
    Vec<F> y;

    friend bool operator==(const FormalPair&, const FormalPair&) = default;
    friend bool operator<(const FormalPair& a, const FormalPair& b) {
        if (a.x != b.x) return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
        return std::lexicographical_compare(a.y.begin(), a.y.end(), b.y.begin(), b.y.end());
    }
};

/// Nonempty ordered list of pairs; kept exactly as written (no normalization),
/// so concatenation is visibly noncommutative.
template <FieldElement F>
class FormalSequence {
public:
    explicit FormalSequence(std::vector<FormalPair<F>> pairs) : pairs_(std::move(pairs)) {
        if (pairs_.empty()) throw DimensionMismatch("a formal sequence needs at least one pair");
        const auto n = pairs_.front().x.size(), m = pairs_.front().y.size();
        if (n == 0 || m == 0) throw DimensionMismatch("pair components must be nonempty");
        const auto field = pairs_.front().x.front().field();
        for (const auto& p : pairs_) {
            if (p.x.size() != n || p.y.size() != m) throw DimensionMismatch("pairs have different dimensions");
            for (const auto& v : p.x)
                if (v.field() != field) throw TagMismatch("sequence entries over different fields");
            for (const auto& v : p.y)
                if (v.field() != field) throw TagMismatch("sequence entries over different fields");
        }
    }

    const std::vector<FormalPair<F>>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    std::size_t n() const { return pairs_.front().x.size(); }
    std::size_t m() const { return pairs_.front().y.size(); }
    field_of<F> field() const { return pairs_.front().x.front().field(); }

    friend bool operator==(const FormalSequence&, const FormalSequence&) = default;
    friend bool operator<(const FormalSequence& a, const FormalSequence& b) {
        return std::lexicographical_compare(a.pairs_.begin(), a.pairs_.end(), b.pairs_.begin(), b.pairs_.end());
    }

private:
    std::vector<FormalPair<F>> pairs_;
};

/// s followed by t.
template <FieldElement F>
FormalSequence<F> concatenate(const FormalSequence<F>& s, const FormalSequence<F>& t) {
    if (s.n() != t.n() || s.m() != t.m()) throw DimensionMismatch("concatenating sequences of different shapes");
    auto pairs = s.pairs();
    pairs.insert(pairs.end(), t.pairs().begin(), t.pairs().end());
    return FormalSequence<F>(std::move(pairs));
}

/// sum_i x_i (x) y_i
template <FieldElement F>
TensorElement<F> linearize(const FormalSequence<F>& s) {
    TensorElement<F> acc = tensor_coordinates(s.pairs().front().x, s.pairs().front().y);
    for (std::size_t k = 1; k < s.size(); ++k) acc = acc + tensor_coordinates(s.pairs()[k].x, s.pairs()[k].y);
    return acc;
}

// -------------------------------------------------------------- text form

namespace detail {

template <FieldElement F>
class ExpressionParser {
public:
    ExpressionParser(std::string_view text, field_of<F> field) : text_(text), field_(std::move(field)) {}

    FormalSequence<F> parse() {
        std::vector<FormalPair<F>> pairs;
        pairs.push_back(parse_pair());
        skip_ws();
        while (peek() == ';') {
            advance();
            pairs.push_back(parse_pair());
            skip_ws();
        }
        if (pos_ < text_.size()) fail("unexpected trailing input");
        const auto n = pairs.front().x.size(), m = pairs.front().y.size();
        for (const auto& p : pairs)
            if (p.x.size() != n || p.y.size() != m)
                throw DimensionMismatch("pairs have different dimensions (" + std::to_string(n) + "x" +
                                        std::to_string(m) + " vs " + std::to_string(p.x.size()) + "x" +
                                        std::to_string(p.y.size()) + ")");
        return FormalSequence<F>(std::move(pairs));
    }

private:
    FormalPair<F> parse_pair() {
        expect('(');
        Vec<F> x = parse_vector();
        expect(',');
        Vec<F> y = parse_vector();
        expect(')');
        return {std::move(x), std::move(y)};
    }

    Vec<F> parse_vector() {
        expect('[');
        Vec<F> v;
        v.push_back(parse_scalar());
        skip_ws();
        while (peek() == ',') {
            advance();
            v.push_back(parse_scalar());
            skip_ws();
        }
        expect(']');
        return v;
    }

    F parse_scalar() {
        skip_ws();
        const std::size_t line = line_, col = col_;
        std::string token;
        while (pos_ < text_.size() && peek() != ',' && peek() != ']' && peek() != ';' && peek() != ')') {
            if (!std::isspace(static_cast<unsigned char>(peek()))) token.push_back(peek());
            advance();
        }
        if (token.empty()) throw SyntaxError("expected a scalar", line, col);
        try {
            return field_.parse(token);
        } catch (const SyntaxError&) {
            throw;
        } catch (const Error& e) {
            throw SyntaxError(e.what(), line, col);
        }
    }

    void expect(char ch) {
        skip_ws();
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        advance();
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
        throw SyntaxError(what + ", found " + found, line_, col_);
    }

    std::string_view text_;
    field_of<F> field_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace detail

/// sequence := pair (";" pair)* ; pair := "(" vector "," vector ")" ;
/// vector := "[" scalar ("," scalar)* "]". Whitespace is ignored.
template <FieldElement F>
FormalSequence<F> parse_expression(std::string_view text, const field_of<F>& field) {
    return detail::ExpressionParser<F>(text, field).parse();
}

template <FieldElement F>
std::string to_expression(const FormalSequence<F>& s) {
    auto vec = [](const Vec<F>& v) {
        std::string out = "[";
        for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + v[k].to_string();
        return out + "]";
    };
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k)
        out += (k ? ";" : "") + std::string("(") + vec(s.pairs()[k].x) + "," + vec(s.pairs()[k].y) + ")";
    return out;
}

// ---------------------------------------------------------------- decider

template <FieldElement F>
struct RuleSet {
    TensorKind<F> kind;
    /// Largest degree of pi instantiated by the closure oracle.
    std::size_t degree_bound = 1;
};

template <FieldElement F>
bool decide_equiv(const FormalSequence<F>& s, const FormalSequence<F>& t, const RelationSubspace<F>& w) {
    if (s.n() != t.n() || s.m() != t.m()) throw DimensionMismatch("sequences of different shapes");
    if (s.n() != w.n() || s.m() != w.m()) throw DimensionMismatch("sequence shape differs from the relation space");
    return w.contains((linearize(s) - linearize(t)).coords);
}

template <FieldElement F>
bool decide_equiv(const FormalSequence<F>& s, const FormalSequence<F>& t, const RuleSet<F>& rules) {
    if (s.n() != t.n() || s.m() != t.m()) throw DimensionMismatch("sequences of different shapes");
    return decide_equiv(s, t, *relation_subspace(rules.kind, s.field(), s.n(), s.m()));
}

// ---------------------------------------------------------- closure oracle

struct ClosureBudget {
    std::size_t max_applications = 4; // BFS depth
    std::size_t max_length = 3;       // longest intermediate sequence
    std::size_t max_states = 200000;
};

namespace detail {

inline Vec<PrimeResidue> decode_vector(std::uint32_t code, std::size_t len, const PrimeField& field) {
    Vec<PrimeResidue> v;
    for (std::size_t k = 0; k < len; ++k) {
        v.push_back(field.element(code % field.modulus));
        code /= static_cast<std::uint32_t>(field.modulus);
    }
    return v;
}

inline std::uint32_t encode_vector(const Vec<PrimeResidue>& v) {
    std::uint32_t code = 0;
    for (std::size_t k = v.size(); k-- > 0;)
        code = code * static_cast<std::uint32_t>(v[k].modulus()) + static_cast<std::uint32_t>(v[k].value());
    return code;
}

// Every polynomial over F_p of degree <= bound (including zero).
inline std::vector<Poly<PrimeResidue>> all_polys(const PrimeField& field, std::size_t bound) {
    std::vector<Poly<PrimeResidue>> out;
    std::size_t total = 1;
    for (std::size_t k = 0; k <= bound; ++k) total *= field.modulus;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<PrimeResidue> c;
        std::size_t rest = code;
        for (std::size_t k = 0; k <= bound; ++k) {
            c.push_back(field.element(rest % field.modulus));
            rest /= field.modulus;
        }
        out.emplace_back(field, std::move(c));
    }
    return out;
}

// A linear map on an enumerated vector space as image and preimage tables.
struct CodedMap {
    std::vector<std::uint32_t> image;
    std::vector<std::vector<std::uint32_t>> preimages;
};

inline CodedMap code_map(const Matrix<PrimeResidue>& op, std::uint32_t count) {
    CodedMap map{std::vector<std::uint32_t>(count), std::vector<std::vector<std::uint32_t>>(count)};
    for (std::uint32_t a = 0; a < count; ++a) {
        std::uint32_t b = encode_vector(op * decode_vector(a, op.cols(), op.field()));
        map.image[a] = b;
        map.preimages[b].push_back(a);
    }
    return map;
}

} // namespace detail

/// Every sequence reachable from s by at most budget.max_applications rule
/// applications (each rule usable in both directions), with intermediate
/// sequences no longer than budget.max_length. Prime fields only. Throws
/// BudgetExceeded if more than budget.max_states sequences are discovered.
inline std::vector<FormalSequence<PrimeResidue>> closure_oracle(const FormalSequence<PrimeResidue>& s,
                                                                 const RuleSet<PrimeResidue>& rules,
                                                                 const ClosureBudget& budget) {
    using detail::CodedMap;
    const PrimeField field = s.field();
    const std::size_t n = s.n(), m = s.m();
    auto [kn, km] = kind_dimensions(rules.kind);
    if (kn != n || km != m) throw DimensionMismatch("rule set dimensions differ from the sequence");
    if (budget.max_length < s.size()) throw BudgetExceeded("start sequence longer than max_length");

    std::uint64_t count_e = 1, count_f = 1;
    for (std::size_t k = 0; k < n; ++k) count_e *= field.modulus;
    for (std::size_t k = 0; k < m; ++k) count_f *= field.modulus;
    if (count_e > (1u << 16) || count_f > (1u << 16)) throw BudgetExceeded("vector spaces too large to enumerate");
    const auto ce = static_cast<std::uint32_t>(count_e), cf = static_cast<std::uint32_t>(count_f);

    // addition tables
    auto add_table = [&](std::uint32_t count, std::size_t len) {
        std::vector<std::uint32_t> t(static_cast<std::size_t>(count) * count);
        for (std::uint32_t a = 0; a < count; ++a)
            for (std::uint32_t b = 0; b < count; ++b)
                t[static_cast<std::size_t>(a) * count + b] = detail::encode_vector(
                    detail::decode_vector(a, len, field) + detail::decode_vector(b, len, field));
        return t;
    };
    auto sub_table = [&](std::uint32_t count, std::size_t len) {
        std::vector<std::uint32_t> t(static_cast<std::size_t>(count) * count);
        for (std::uint32_t a = 0; a < count; ++a)
            for (std::uint32_t b = 0; b < count; ++b)
                t[static_cast<std::size_t>(a) * count + b] = detail::encode_vector(
                    detail::decode_vector(a, len, field) - detail::decode_vector(b, len, field));
        return t;
    };
    const auto add_e = add_table(ce, n), add_f = add_table(cf, m);
    const auto sub_e = sub_table(ce, n), sub_f = sub_table(cf, m);

    // scalar action pairs (P, Q)
    std::set<std::pair<std::vector<PrimeResidue>, std::vector<PrimeResidue>>> seen_actions;
    std::vector<std::pair<CodedMap, CodedMap>> actions;
    auto add_action = [&](const Matrix<PrimeResidue>& p, const Matrix<PrimeResidue>& q) {
        if (seen_actions.emplace(p.entries(), q.entries()).second)
            actions.emplace_back(detail::code_map(p, ce), detail::code_map(q, cf));
    };
    if (const auto* sk = std::get_if<ScaledBranchingKind<PrimeResidue>>(&rules.kind)) {
        for (std::uint64_t c = 0; c < field.modulus; ++c)
            add_action(Matrix<PrimeResidue>::scalar(field.element(c), n),
                       Matrix<PrimeResidue>::scalar(sk->a * field.element(c), m));
    } else {
        auto [M, N] = defining_operators(rules.kind, field);
        const std::size_t bound = std::holds_alternative<StandardKind<PrimeResidue>>(rules.kind) ? 0 : rules.degree_bound;
        for (const auto& pi : detail::all_polys(field, bound))
            add_action(poly_eval_operator(pi, M), poly_eval_operator(pi, N));
    }

    // a state is the flat list x_1, y_1, x_2, y_2, ...
    using State = std::vector<std::uint32_t>;
    State start;
    for (const auto& p : s.pairs()) {
        start.push_back(detail::encode_vector(p.x));
        start.push_back(detail::encode_vector(p.y));
    }

    std::set<State> visited{start};
    std::deque<std::pair<State, std::size_t>> frontier{{start, 0}};
    auto visit = [&](State next, std::size_t depth) {
        if (visited.insert(next).second) {
            if (visited.size() > budget.max_states)
                throw BudgetExceeded("more than " + std::to_string(budget.max_states) + " states");
            frontier.emplace_back(std::move(next), depth);
        }
    };

    while (!frontier.empty()) {
        auto [cur, depth] = std::move(frontier.front());
        frontier.pop_front();
        if (depth >= budget.max_applications) continue;
        const std::size_t len = cur.size() / 2, d = depth + 1;

        for (std::size_t i = 0; i + 1 < len; ++i) {
            State next = cur;
            std::swap(next[2 * i], next[2 * i + 2]);
            std::swap(next[2 * i + 1], next[2 * i + 3]);
            visit(std::move(next), d);
        }
        for (std::size_t i = 0; i < len; ++i) {
            const std::uint32_t x = cur[2 * i], y = cur[2 * i + 1];
            if (len + 1 <= budget.max_length) {
                for (std::uint32_t part = 0; part < ce; ++part) {
                    State next = cur;
                    next[2 * i] = sub_e[static_cast<std::size_t>(x) * ce + part];
                    next.insert(next.begin() + static_cast<long>(2 * i + 2), {part, y});
                    visit(std::move(next), d);
                }
                for (std::uint32_t part = 0; part < cf; ++part) {
                    State next = cur;
                    next[2 * i + 1] = sub_f[static_cast<std::size_t>(y) * cf + part];
                    next.insert(next.begin() + static_cast<long>(2 * i + 2), {x, part});
                    visit(std::move(next), d);
                }
            }
            if (i + 1 < len) {
                const std::uint32_t x2 = cur[2 * i + 2], y2 = cur[2 * i + 3];
                if (y == y2) {
                    State next = cur;
                    next[2 * i] = add_e[static_cast<std::size_t>(x) * ce + x2];
                    next.erase(next.begin() + static_cast<long>(2 * i + 2), next.begin() + static_cast<long>(2 * i + 4));
                    visit(std::move(next), d);
                }
                if (x == x2) {
                    State next = cur;
                    next[2 * i + 1] = add_f[static_cast<std::size_t>(y) * cf + y2];
                    next.erase(next.begin() + static_cast<long>(2 * i + 2), next.begin() + static_cast<long>(2 * i + 4));
                    visit(std::move(next), d);
                }
            }
            for (const auto& [P, Q] : actions) {
                // (P x', y) -> (x', Q y) for every x' with P x' = x
                for (std::uint32_t pre : P.preimages[x]) {
                    State next = cur;
                    next[2 * i] = pre;
                    next[2 * i + 1] = Q.image[y];
                    visit(std::move(next), d);
                }
                // (x, Q y') -> (P x, y') for every y' with Q y' = y
                for (std::uint32_t pre : Q.preimages[y]) {
                    State next = cur;
                    next[2 * i] = P.image[x];
                    next[2 * i + 1] = pre;
                    visit(std::move(next), d);
                }
            }
        }
    }

    std::vector<FormalSequence<PrimeResidue>> out;
    out.reserve(visited.size());
    for (const auto& st : visited) {
        std::vector<FormalPair<PrimeResidue>> pairs;
        for (std::size_t k = 0; k < st.size(); k += 2)
            pairs.push_back({detail::decode_vector(st[k], n, field), detail::decode_vector(st[k + 1], m, field)});
        out.emplace_back(std::move(pairs));
    }
    return out;
}

} // namespace modtensor
