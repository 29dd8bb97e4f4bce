#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairgate/graph.hpp"

namespace fairgate {

// Set of node ids as a 64-bit mask. Path families grow exponentially, so the
// relation engine only accepts graphs that fit in one word.
class NodeSet {
public:
    static constexpr std::size_t kCapacity = 64;

    constexpr NodeSet() = default;
    constexpr explicit NodeSet(std::uint64_t bits) : m_bits(bits) {}

    static constexpr NodeSet of(NodeId id) { return NodeSet{std::uint64_t{1} << id}; }

    constexpr bool contains(NodeId id) const { return (m_bits >> id) & 1U; }
    constexpr bool empty() const { return m_bits == 0; }
    constexpr bool intersects(NodeSet other) const { return (m_bits & other.m_bits) != 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(m_bits)); }
    constexpr std::uint64_t bits() const { return m_bits; }

    constexpr void insert(NodeId id) { m_bits |= std::uint64_t{1} << id; }
    constexpr void erase(NodeId id) { m_bits &= ~(std::uint64_t{1} << id); }

    constexpr NodeSet operator|(NodeSet o) const { return NodeSet{m_bits | o.m_bits}; }
    constexpr NodeSet operator&(NodeSet o) const { return NodeSet{m_bits & o.m_bits}; }

    // Ascending ids.
    std::vector<NodeId> ids() const;

    constexpr bool operator==(const NodeSet&) const = default;

    // Lexicographic comparison of the ascending id lists. Since ids follow
    // name order this is the lexicographic order of the sorted name lists.
    std::strong_ordering lex_compare(NodeSet other) const;

private:
    std::uint64_t m_bits = 0;
};

// Throws Error(UnknownVariable) / Error(ResourceLimit) for ids past the mask.
NodeSet to_node_set(const CausalGraph& g, std::span<const std::string> names);
std::vector<std::string> to_names(const CausalGraph& g, NodeSet set);

// source ▷^M target. `intermediates` holds every node on one directed path
// from source to target, both ends included ({source} when reflexive).
struct MediateCauseFact {
    NodeId source = 0;
    NodeId target = 0;
    NodeSet intermediates;

    bool operator==(const MediateCauseFact&) const = default;
};

// left ◇^M_N right, together with one simple undirected path that certifies it.
struct PathFact {
    std::vector<NodeId> path;          // path.front() = left, path.back() = right
    NodeSet noncolliders;              // M
    std::vector<NodeId> colliders;     // colliders in path order
    std::vector<NodeSet> collider_sets;  // N, parallel to `colliders`

    NodeId left() const { return path.front(); }
    NodeId right() const { return path.back(); }

    // Same fact read from right to left.
    PathFact reversed() const;

    // Collider sets as a sorted family, duplicates removed.
    std::vector<NodeSet> collider_family() const;

    bool operator==(const PathFact&) const = default;
};

// Endpoints, then M, then the N family, then the certifying path.
std::strong_ordering compare_facts(const PathFact& a, const PathFact& b);

enum class Rule { ReflexiveCause, TransitiveCause, Chain, Fork, Collider, Transitivity };

std::string_view to_string(Rule rule) noexcept;

struct FactRef {
    enum class Kind { Edge, Mediate, Path };
    Kind kind = Kind::Edge;
    NodeId cause = 0;   // Edge only
    NodeId effect = 0;  // Edge only
    std::size_t index = 0;  // Mediate / Path

    static FactRef edge(NodeId u, NodeId v) { return {Kind::Edge, u, v, 0}; }
    static FactRef mediate(std::size_t i) { return {Kind::Mediate, 0, 0, i}; }
    static FactRef path(std::size_t i) { return {Kind::Path, 0, 0, i}; }

    bool operator==(const FactRef&) const = default;
};

struct TraceEntry {
    Rule rule;
    std::vector<FactRef> premises;
    FactRef conclusion;
};

struct ClosureOptions {
    std::size_t fact_budget = 1'000'000;
};

class Closure {
public:
    const std::vector<std::string>& names() const noexcept { return m_names; }
    const std::vector<MediateCauseFact>& mediate() const noexcept { return m_mediate; }
    // Each fact appears once, oriented with left < right, in compare_facts order.
    const std::vector<PathFact>& paths() const noexcept { return m_paths; }
    // One record per derived fact, in firing order.
    const std::vector<TraceEntry>& trace() const noexcept { return m_trace; }

    // Indices into paths() of facts whose endpoints are {a, b}, ascending.
    std::span<const std::size_t> facts_between(NodeId a, NodeId b) const;

    // Index into trace() of the firing that derived paths()[i].
    std::size_t derivation_of(std::size_t path_index) const { return m_path_derivation.at(path_index); }
    // Index into trace() of the firing that derived mediate()[i].
    std::size_t mediate_derivation_of(std::size_t i) const { return m_mediate_derivation.at(i); }

    std::size_t fact_count() const noexcept { return m_mediate.size() + m_paths.size(); }

private:
    friend Closure close(const CausalGraph&, const ClosureOptions&);

    std::vector<std::string> m_names;
    std::vector<MediateCauseFact> m_mediate;
    std::vector<PathFact> m_paths;
    std::vector<TraceEntry> m_trace;
    std::vector<std::size_t> m_path_derivation;
    std::vector<std::size_t> m_mediate_derivation;
    std::vector<std::vector<std::size_t>> m_by_pair;  // n*n, keyed by (min, max)
};

// Least fixpoint of the six derivation rules. Throws Error(ResourceLimit) when
// the fact budget is exceeded or the graph has more than 64 nodes.
Closure close(const CausalGraph& g, const ClosureOptions& options = {});

// Applies every rule once more to the facts of `closure` (Transitivity* with
// overlaps of any length) and returns how many conclusions are missing from it.
std::size_t rerun_rules(const CausalGraph& g, const Closure& closure);

// Some non-collider is conditioned, or some collider set avoids the
// conditioning set entirely.
bool is_fact_blocked(const PathFact& fact, NodeSet conditioning);

// Textbook d-separation by enumerating every simple undirected path.
bool dsep_oracle(const CausalGraph& g, NodeId x, NodeId y, NodeSet conditioning);
bool dsep_oracle(const CausalGraph& g, std::string_view x, std::string_view y,
                 std::span<const std::string> conditioning);

bool independent_by_rules(const Closure& closure, const CausalGraph& g, NodeId x, NodeId y,
                          NodeSet conditioning);
bool independent_by_rules(const Closure& closure, const CausalGraph& g, std::string_view x,
                          std::string_view y, std::span<const std::string> conditioning);

}  // namespace fairgate
