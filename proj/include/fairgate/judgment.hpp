#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fairgate/graph.hpp"

namespace fairgate {

using Rational = boost::multiprecision::cpp_rational;

// Accepts `m/n`, `d`, or `d.ddd`. Throws SyntaxError.
Rational parse_rational(std::string_view text);
// Always `m/n` in lowest terms, `1/1` for one.
std::string format_rational(const Rational& r);

bool is_valid_atom(std::string_view atom) noexcept;

enum class ValueKind { Atomic, Sum, Complement };

class Value {
public:
    static Value atomic(std::string atom);
    static Value sum(std::vector<std::string> atoms);  // at least two distinct atoms
    static Value complement(std::string atom);

    ValueKind kind() const noexcept { return m_kind; }
    const std::set<std::string>& atoms() const noexcept { return m_atoms; }
    const std::string& atom() const { return *m_atoms.begin(); }

    bool operator==(const Value&) const = default;
    auto operator<=>(const Value&) const = default;

private:
    Value(ValueKind kind, std::set<std::string> atoms) : m_kind(kind), m_atoms(std::move(atoms)) {}

    ValueKind m_kind = ValueKind::Atomic;
    std::set<std::string> m_atoms;
};

// atomic: equality; sum: membership; complement: anything but the atom.
bool value_matches(const Value& v, std::string_view observed);

// `a`, `a+b+c` (sorted), `a^~`.
std::string to_string(const Value& v);

struct Attribution {
    std::string variable;
    Value value;

    bool operator==(const Attribution&) const = default;
    auto operator<=>(const Attribution&) const = default;
};

// Ordered for display; equality ignores order.
class Context {
public:
    Context() = default;
    // Throws Error(DuplicateVariable).
    explicit Context(std::vector<Attribution> items);

    void add(Attribution a);

    const std::vector<Attribution>& items() const noexcept { return m_items; }
    bool empty() const noexcept { return m_items.empty(); }
    std::size_t size() const noexcept { return m_items.size(); }
    bool contains(std::string_view variable) const;
    const Value* find(std::string_view variable) const;

    // A_σ, ascending.
    std::vector<std::string> variables() const;

    bool operator==(const Context& other) const;

private:
    std::vector<Attribution> m_items;
};

struct Judgment {
    Context context;
    std::string target;
    Value outcome;
    Rational probability;

    bool operator==(const Judgment&) const = default;
};

// Validates the invariants: target not in context, atomic outcome, p in [0, 1].
Judgment make_judgment(Context context, std::string target, Value outcome, Rational probability);

// `ctx => Var = value @ p`. When `graph` is given every variable must be one
// of its nodes. Throws SyntaxError, or Error with UnknownVariable /
// DuplicateVariable / ProbabilityOutOfRange.
Judgment parse_judgment(std::string_view text, const CausalGraph* graph = nullptr);
inline Judgment parse_judgment(std::string_view text, const CausalGraph& graph) {
    return parse_judgment(text, &graph);
}

// Comma-separated `Var = value` items, no `=>` clause.
Context parse_context(std::string_view text, const CausalGraph* graph = nullptr);
Attribution parse_attribution(std::string_view text, const CausalGraph* graph = nullptr);

// Attributions sorted by variable, sums sorted, probability as reduced m/n.
std::string serialize_context(const Context& ctx);
std::string serialize_judgment(const Judgment& j);

}  // namespace fairgate
