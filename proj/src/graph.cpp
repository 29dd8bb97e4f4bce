#include "fairgate/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fairgate {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::MalformedName: return "MalformedName";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::DuplicateVariable: return "DuplicateVariable";
        case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::VariableAlreadyInContext: return "VariableAlreadyInContext";
        case ErrorCode::WeakeningTargetIsGoal: return "WeakeningTargetIsGoal";
        case ErrorCode::InadmissibleWeakening: return "InadmissibleWeakening";
        case ErrorCode::EmptyConditioningSet: return "EmptyConditioningSet";
        case ErrorCode::UnknownColumn: return "UnknownColumn";
        case ErrorCode::MalformedDataset: return "MalformedDataset";
        case ErrorCode::SubsetExplosion: return "SubsetExplosion";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::string join_cycle(const std::vector<std::string>& witness) {
    std::string out;
    for (std::size_t i = 0; i < witness.size(); ++i) {
        if (i) out += " -> ";
        out += witness[i];
    }
    return out;
}

}  // namespace

bool is_valid_variable_name(std::string_view name) noexcept {
    if (name.empty()) return false;
    for (char c : name) {
        if (is_space(c)) return false;
        switch (c) {
            case ':': case ',': case '=': case '@': case '#': return false;
            default: break;
        }
    }
    return name.find("->") == std::string_view::npos;
}

void validate_variable_name(std::string_view name) {
    if (!is_valid_variable_name(name)) {
        throw Error(ErrorCode::MalformedName, "malformed variable name '" + std::string(name) + "'");
    }
}

CycleError::CycleError(std::vector<std::string> witness)
    : Error(ErrorCode::CycleDetected, "cycle detected: " + join_cycle(witness)),
      m_witness(std::move(witness)) {}

std::optional<NodeId> CausalGraph::find(std::string_view name) const noexcept {
    auto it = std::lower_bound(m_names.begin(), m_names.end(), name);
    if (it == m_names.end() || *it != name) return std::nullopt;
    return static_cast<NodeId>(it - m_names.begin());
}

NodeId CausalGraph::id(std::string_view name) const {
    if (auto found = find(name)) return *found;
    throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
}

bool CausalGraph::has_edge(NodeId cause, NodeId effect) const {
    const auto& kids = m_children.at(cause);
    return std::binary_search(kids.begin(), kids.end(), effect);
}

std::vector<Edge> CausalGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_edge_count);
    for (NodeId u = 0; u < m_children.size(); ++u) {
        for (NodeId v : m_children[u]) out.push_back({m_names[u], m_names[v]});
    }
    return out;
}

std::vector<NodeId> CausalGraph::descendants(NodeId id) const {
    std::vector<char> seen(size(), 0);
    std::vector<NodeId> stack(m_children.at(id).begin(), m_children.at(id).end());
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = 1;
        for (NodeId w : m_children[v]) {
            if (!seen[w]) stack.push_back(w);
        }
    }
    std::vector<NodeId> out;
    for (NodeId v = 0; v < size(); ++v) {
        if (seen[v]) out.push_back(v);
    }
    return out;
}

CausalGraph build_graph(std::span<const std::string> nodes, std::span<const Edge> edges) {
    std::set<std::string> names(nodes.begin(), nodes.end());
    for (const auto& e : edges) {
        names.insert(e.cause);
        names.insert(e.effect);
    }
    for (const auto& n : names) validate_variable_name(n);

    CausalGraph g;
    g.m_names.assign(names.begin(), names.end());
    g.m_children.resize(g.m_names.size());
    g.m_parents.resize(g.m_names.size());

    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& e : edges) {
        if (e.cause == e.effect) {
            throw Error(ErrorCode::SelfLoop, "self-loop on '" + e.cause + "'");
        }
        NodeId u = *g.find(e.cause);
        NodeId v = *g.find(e.effect);
        if (!seen.emplace(u, v).second) {
            throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + e.cause + " -> " + e.effect);
        }
        g.m_children[u].push_back(v);
        g.m_parents[v].push_back(u);
    }
    for (auto& list : g.m_children) std::sort(list.begin(), list.end());
    for (auto& list : g.m_parents) std::sort(list.begin(), list.end());
    g.m_edge_count = seen.size();

    // Iterative DFS: colour 1 = on stack, 2 = finished. Post-order reversed is
    // a topological order.
    const std::size_t n = g.size();
    std::vector<int> colour(n, 0);
    std::vector<NodeId> parent(n, 0);
    std::vector<NodeId> post;
    post.reserve(n);
    for (NodeId root = 0; root < n; ++root) {
        if (colour[root]) continue;
        std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
        colour[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < g.m_children[v].size()) {
                NodeId w = g.m_children[v][next++];
                if (colour[w] == 0) {
                    colour[w] = 1;
                    parent[w] = v;
                    stack.emplace_back(w, 0);
                } else if (colour[w] == 1) {
                    std::vector<std::string> cycle{g.m_names[w]};
                    std::vector<NodeId> back;
                    for (NodeId x = v; x != w; x = parent[x]) back.push_back(x);
                    for (auto it = back.rbegin(); it != back.rend(); ++it) cycle.push_back(g.m_names[*it]);
                    cycle.push_back(g.m_names[w]);
                    throw CycleError(std::move(cycle));
                }
            } else {
                colour[v] = 2;
                post.push_back(v);
                stack.pop_back();
            }
        }
    }
    g.m_topo.assign(post.rbegin(), post.rend());
    return g;
}

bool is_immediate_cause(const CausalGraph& g, std::string_view x, std::string_view y) {
    return g.has_edge(g.id(x), g.id(y));
}

std::vector<std::string> descendants(const CausalGraph& g, std::string_view x) {
    std::vector<std::string> out;
    for (NodeId v : g.descendants(g.id(x))) out.push_back(g.name(v));
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

}  // namespace

CausalGraph parse_graph(std::string_view text) {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;

    std::size_t offset = 0;
    while (offset <= text.size()) {
        std::size_t eol = text.find('\n', offset);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view raw = text.substr(offset, eol - offset);
        std::string_view line = trim(raw);
        const std::size_t line_start = offset + static_cast<std::size_t>(
            std::find_if(raw.begin(), raw.end(), [](char c) { return !is_space(c); }) - raw.begin());
        offset = eol + 1;

        if (line.empty() || line.front() == '#') continue;

        if (line.starts_with("node") && line.size() > 4 && is_space(line[4])) {
            std::string_view name = trim(line.substr(4));
            if (!is_valid_variable_name(name)) {
                throw SyntaxError(line_start + 5, "variable name", std::string(name));
            }
            nodes.emplace_back(name);
            continue;
        }

        std::size_t arrow = line.find("->");
        if (arrow == std::string_view::npos) {
            throw SyntaxError(line_start, "'A -> B' or 'node X'", std::string(line));
        }
        std::string_view lhs = trim(line.substr(0, arrow));
        std::string_view rhs = trim(line.substr(arrow + 2));
        if (!is_valid_variable_name(lhs)) {
            throw SyntaxError(line_start, "variable name before '->'", std::string(lhs));
        }
        if (!is_valid_variable_name(rhs)) {
            throw SyntaxError(line_start + arrow + 2, "variable name after '->'", std::string(rhs));
        }
        edges.push_back({std::string(lhs), std::string(rhs)});
    }
    return build_graph(nodes, edges);
}

std::string serialize_graph(const CausalGraph& g) {
    std::ostringstream out;
    std::vector<char> touched(g.size(), 0);
    for (NodeId u = 0; u < g.size(); ++u) {
        for (NodeId v : g.children(u)) touched[u] = touched[v] = 1;
    }
    for (NodeId u = 0; u < g.size(); ++u) {
        if (!touched[u]) out << "node " << g.name(u) << '\n';
    }
    for (const auto& e : g.edges()) out << e.cause << " -> " << e.effect << '\n';
    return out.str();
}

}  // namespace fairgate
