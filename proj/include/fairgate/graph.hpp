#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairgate/error.hpp"

namespace fairgate {

// Dense node index. Ids follow the lexicographic order of node names, so
// comparing ids compares names.
using NodeId = std::uint32_t;

bool is_valid_variable_name(std::string_view name) noexcept;

// Throws Error(MalformedName).
void validate_variable_name(std::string_view name);

struct Edge {
    std::string cause;
    std::string effect;

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

class CycleError : public Error {
public:
    explicit CycleError(std::vector<std::string> witness);

    // Closed walk, first node repeated at the end: {A, B, A}.
    const std::vector<std::string>& witness() const noexcept { return m_witness; }

private:
    std::vector<std::string> m_witness;
};

// Immutable, validated DAG.
class CausalGraph {
public:
    CausalGraph() = default;

    std::size_t size() const noexcept { return m_names.size(); }
    std::size_t edge_count() const noexcept { return m_edge_count; }

    const std::string& name(NodeId id) const { return m_names.at(id); }
    const std::vector<std::string>& names() const noexcept { return m_names; }

    std::optional<NodeId> find(std::string_view name) const noexcept;
    // Throws Error(UnknownVariable).
    NodeId id(std::string_view name) const;

    std::span<const NodeId> children(NodeId id) const { return m_children.at(id); }
    std::span<const NodeId> parents(NodeId id) const { return m_parents.at(id); }

    bool has_edge(NodeId cause, NodeId effect) const;

    // Edges sorted by (cause, effect).
    std::vector<Edge> edges() const;

    // All nodes reachable by one or more edges, ascending.
    std::vector<NodeId> descendants(NodeId id) const;

    const std::vector<NodeId>& topological_order() const noexcept { return m_topo; }

    bool operator==(const CausalGraph& other) const {
        return m_names == other.m_names && m_children == other.m_children;
    }

    friend CausalGraph build_graph(std::span<const std::string> nodes, std::span<const Edge> edges);

private:
    std::vector<std::string> m_names;
    std::vector<std::vector<NodeId>> m_children;
    std::vector<std::vector<NodeId>> m_parents;
    std::vector<NodeId> m_topo;
    std::size_t m_edge_count = 0;
};

// Node set is the union of `nodes` and every edge endpoint.
// Throws CycleError, or Error with DuplicateEdge / SelfLoop / MalformedName.
CausalGraph build_graph(std::span<const std::string> nodes, std::span<const Edge> edges);

bool is_immediate_cause(const CausalGraph& g, std::string_view x, std::string_view y);
std::vector<std::string> descendants(const CausalGraph& g, std::string_view x);

// ".cg" text: `A -> B` edge lines, `node X` declarations, `#` comments.
CausalGraph parse_graph(std::string_view text);
std::string serialize_graph(const CausalGraph& g);

}  // namespace fairgate
