#include "fairgate/relations.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace fairgate {

std::vector<NodeId> NodeSet::ids() const {
    std::vector<NodeId> out;
    out.reserve(size());
    for (std::uint64_t rest = m_bits; rest != 0; rest &= rest - 1) {
        out.push_back(static_cast<NodeId>(std::countr_zero(rest)));
    }
    return out;
}

std::strong_ordering NodeSet::lex_compare(NodeSet other) const {
    std::uint64_t a = m_bits;
    std::uint64_t b = other.m_bits;
    while (a != 0 && b != 0) {
        int ia = std::countr_zero(a);
        int ib = std::countr_zero(b);
        if (ia != ib) return ia <=> ib;
        a &= a - 1;
        b &= b - 1;
    }
    if (a == 0 && b == 0) return std::strong_ordering::equal;
    return a == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

NodeSet to_node_set(const CausalGraph& g, std::span<const std::string> names) {
    NodeSet out;
    for (const auto& n : names) {
        NodeId id = g.id(n);
        if (id >= NodeSet::kCapacity) {
            throw Error(ErrorCode::ResourceLimit, "graphs over 64 nodes are not supported by the relation engine");
        }
        out.insert(id);
    }
    return out;
}

std::vector<std::string> to_names(const CausalGraph& g, NodeSet set) {
    std::vector<std::string> out;
    for (NodeId id : set.ids()) out.push_back(g.name(id));
    return out;
}

PathFact PathFact::reversed() const {
    PathFact r;
    r.path.assign(path.rbegin(), path.rend());
    r.noncolliders = noncolliders;
    r.colliders.assign(colliders.rbegin(), colliders.rend());
    r.collider_sets.assign(collider_sets.rbegin(), collider_sets.rend());
    return r;
}

std::vector<NodeSet> PathFact::collider_family() const {
    std::vector<NodeSet> family = collider_sets;
    std::sort(family.begin(), family.end(),
              [](NodeSet a, NodeSet b) { return a.lex_compare(b) < 0; });
    family.erase(std::unique(family.begin(), family.end()), family.end());
    return family;
}

std::strong_ordering compare_facts(const PathFact& a, const PathFact& b) {
    if (auto c = a.left() <=> b.left(); c != 0) return c;
    if (auto c = a.right() <=> b.right(); c != 0) return c;
    if (auto c = a.noncolliders.lex_compare(b.noncolliders); c != 0) return c;
    auto fa = a.collider_family();
    auto fb = b.collider_family();
    std::size_t k = 0;
    for (; k < fa.size() && k < fb.size(); ++k) {
        if (auto c = fa[k].lex_compare(fb[k]); c != 0) return c;
    }
    if (auto c = fa.size() <=> fb.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.path.begin(), a.path.end(), b.path.begin(),
                                                  b.path.end());
}

std::string_view to_string(Rule rule) noexcept {
    switch (rule) {
        case Rule::ReflexiveCause: return "ReflexiveCause";
        case Rule::TransitiveCause: return "TransitiveCause";
        case Rule::Chain: return "Chain";
        case Rule::Fork: return "Fork";
        case Rule::Collider: return "Collider";
        case Rule::Transitivity: return "Transitivity*";
    }
    return "?";
}

std::span<const std::size_t> Closure::facts_between(NodeId a, NodeId b) const {
    const std::size_t n = m_names.size();
    if (a >= n || b >= n) return {};
    if (a > b) std::swap(a, b);
    return m_by_pair[a * n + b];
}

namespace {

using MediateKey = std::tuple<NodeId, NodeId, std::uint64_t>;

std::string fact_key(const PathFact& f) {
    std::string key;
    key.reserve(1 + f.path.size() + 8 * f.collider_sets.size());
    key.push_back(static_cast<char>(f.path.size()));
    for (NodeId id : f.path) key.push_back(static_cast<char>(id));
    for (NodeSet s : f.collider_sets) {
        std::uint64_t bits = s.bits();
        for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
    }
    return key;
}

PathFact canonical(const PathFact& f) { return f.left() < f.right() ? f : f.reversed(); }

NodeSet node_mask(const std::vector<NodeId>& path) {
    NodeSet s;
    for (NodeId id : path) s.insert(id);
    return s;
}

bool sets_avoid(const PathFact& f, NodeSet endpoints) {
    return std::none_of(f.collider_sets.begin(), f.collider_sets.end(),
                        [&](NodeSet s) { return s.intersects(endpoints); });
}

PathFact triple(NodeId x, NodeId y, NodeId z) {
    PathFact f;
    f.path = {x, y, z};
    return f;
}

// Joins `a` (ending j, i) and `b` (starting j, i) along their shared edge.
// Returns false if the result would revisit a node or a collider set would
// contain one of the new endpoints.
bool glue(const PathFact& a, NodeSet a_nodes, const PathFact& b, NodeSet b_nodes, PathFact& out) {
    NodeSet tail = b_nodes;
    tail.erase(b.path[0]);
    tail.erase(b.path[1]);
    if (a_nodes.intersects(tail)) return false;
    NodeSet ends = NodeSet::of(a.left()) | NodeSet::of(b.right());
    if (!sets_avoid(a, ends) || !sets_avoid(b, ends)) return false;

    out.path = a.path;
    out.path.insert(out.path.end(), b.path.begin() + 2, b.path.end());
    out.noncolliders = a.noncolliders | b.noncolliders;
    out.colliders = a.colliders;
    out.colliders.insert(out.colliders.end(), b.colliders.begin(), b.colliders.end());
    out.collider_sets = a.collider_sets;
    out.collider_sets.insert(out.collider_sets.end(), b.collider_sets.begin(), b.collider_sets.end());
    return true;
}

class PathStore {
public:
    PathStore(std::size_t n, std::size_t budget, const std::size_t& mediate_count)
        : m_n(n), m_budget(budget), m_mediate_count(mediate_count), m_by_prefix(n * n), m_by_tail(n * n) {}

    // Inserts both orientations; returns the canonical index or npos if known.
    std::size_t add(const PathFact& fact) {
        PathFact c = canonical(fact);
        std::string key = fact_key(c);
        if (m_known.contains(key)) return npos;
        if (m_canonical.size() + 1 + m_mediate_count > m_budget) {
            throw Error(ErrorCode::ResourceLimit,
                        "fact budget of " + std::to_string(m_budget) + " exceeded");
        }
        m_known.insert(std::move(key));
        std::size_t cid = m_canonical.size();
        m_canonical.push_back(m_oriented.size());
        push(std::move(c), cid);
        push(m_oriented[m_canonical.back()].reversed(), cid);
        return cid;
    }

    std::size_t size() const { return m_oriented.size(); }
    const PathFact& at(std::size_t i) const { return m_oriented[i]; }
    NodeSet nodes(std::size_t i) const { return m_nodes[i]; }
    std::size_t canonical_of(std::size_t i) const { return m_canonical_of[i]; }
    const std::vector<std::uint32_t>& starting_with(NodeId a, NodeId b) const { return m_by_prefix[a * m_n + b]; }

    // Facts starting with (a, b) whose remaining nodes are exactly `tail`.
    const std::vector<std::uint32_t>* starting_with(NodeId a, NodeId b, NodeSet tail) const {
        const auto& buckets = m_by_tail[a * m_n + b];
        auto it = buckets.find(tail.bits());
        return it == buckets.end() ? nullptr : &it->second;
    }

    std::vector<PathFact> take_canonical() {
        std::vector<PathFact> out;
        out.reserve(m_canonical.size());
        for (std::size_t oi : m_canonical) out.push_back(m_oriented[oi]);
        return out;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    void push(PathFact f, std::size_t cid) {
        auto oi = static_cast<std::uint32_t>(m_oriented.size());
        m_by_prefix[f.path[0] * m_n + f.path[1]].push_back(oi);
        NodeSet mask = node_mask(f.path);
        NodeSet tail = mask;
        tail.erase(f.path[0]);
        tail.erase(f.path[1]);
        m_by_tail[f.path[0] * m_n + f.path[1]][tail.bits()].push_back(oi);
        m_nodes.push_back(mask);
        m_canonical_of.push_back(cid);
        m_oriented.push_back(std::move(f));
    }

    std::size_t m_n;
    std::size_t m_budget;
    const std::size_t& m_mediate_count;
    std::deque<PathFact> m_oriented;
    std::vector<NodeSet> m_nodes;
    std::vector<std::size_t> m_canonical_of;
    std::vector<std::size_t> m_canonical;
    std::unordered_set<std::string> m_known;
    std::vector<std::vector<std::uint32_t>> m_by_prefix;
    std::vector<std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>> m_by_tail;
};

void check_capacity(const CausalGraph& g) {
    if (g.size() > NodeSet::kCapacity) {
        throw Error(ErrorCode::ResourceLimit,
                    "graph has " + std::to_string(g.size()) + " nodes; the relation engine supports at most 64");
    }
}

}  // namespace

Closure close(const CausalGraph& g, const ClosureOptions& options) {
    check_capacity(g);
    const std::size_t n = g.size();
    Closure c;
    c.m_names = g.names();

    // Mediate causes: reflexive seeds, then Transitive cause to fixpoint.
    std::set<MediateKey> seen_mediate;
    std::size_t mediate_count = 0;
    auto add_mediate = [&](MediateCauseFact m, Rule rule, std::vector<FactRef> premises) {
        if (!seen_mediate.emplace(m.source, m.target, m.intermediates.bits()).second) return;
        if (mediate_count + 1 > options.fact_budget) {
            throw Error(ErrorCode::ResourceLimit,
                        "fact budget of " + std::to_string(options.fact_budget) + " exceeded");
        }
        c.m_trace.push_back({rule, std::move(premises), FactRef::mediate(c.m_mediate.size())});
        c.m_mediate.push_back(m);
        ++mediate_count;
    };
    for (NodeId s = 0; s < n; ++s) add_mediate({s, s, NodeSet::of(s)}, Rule::ReflexiveCause, {});
    for (std::size_t i = 0; i < c.m_mediate.size(); ++i) {
        const MediateCauseFact m = c.m_mediate[i];
        for (NodeId v : g.children(m.target)) {
            add_mediate({m.source, v, m.intermediates | NodeSet::of(v)}, Rule::TransitiveCause,
                        {FactRef::mediate(i), FactRef::edge(m.target, v)});
        }
    }
    std::vector<std::vector<std::size_t>> from(n);
    for (std::size_t i = 0; i < c.m_mediate.size(); ++i) from[c.m_mediate[i].source].push_back(i);

    PathStore store(n, options.fact_budget, mediate_count);
    std::vector<TraceEntry> path_trace;  // conclusions hold provisional canonical ids
    std::deque<std::size_t> work;
    auto derive = [&](const PathFact& f, Rule rule, std::vector<FactRef> premises) {
        std::size_t before = store.size();
        std::size_t cid = store.add(f);
        if (cid == PathStore::npos) return;
        path_trace.push_back({rule, std::move(premises), FactRef::path(cid)});
        for (std::size_t oi = before; oi < store.size(); ++oi) work.push_back(oi);
    };

    for (NodeId y = 0; y < n; ++y) {
        // Chain: x ▷ y, y ▷ z.
        for (NodeId x : g.parents(y)) {
            for (NodeId z : g.children(y)) {
                PathFact f = triple(x, y, z);
                f.noncolliders = NodeSet::of(y);
                derive(f, Rule::Chain, {FactRef::edge(x, y), FactRef::edge(y, z)});
            }
        }
        // Fork: y ▷ x, y ▷ z.
        for (NodeId x : g.children(y)) {
            for (NodeId z : g.children(y)) {
                if (x == z) continue;
                PathFact f = triple(x, y, z);
                f.noncolliders = NodeSet::of(y);
                derive(f, Rule::Fork, {FactRef::edge(y, x), FactRef::edge(y, z)});
            }
        }
        // Collider: x ▷ y, z ▷ y, y ▷^N w, one fact per descendant set.
        for (NodeId x : g.parents(y)) {
            for (NodeId z : g.parents(y)) {
                if (x == z) continue;
                for (std::size_t mi : from[y]) {
                    NodeSet set = c.m_mediate[mi].intermediates;
                    if (set.contains(x) || set.contains(z)) continue;
                    PathFact f = triple(x, y, z);
                    f.colliders = {y};
                    f.collider_sets = {set};
                    derive(f, Rule::Collider,
                           {FactRef::edge(x, y), FactRef::edge(z, y), FactRef::mediate(mi)});
                }
            }
        }
    }

    // Transitivity*: semi-naive. Every oriented fact is tried once as the left
    // premise; the reverse orientation covers it as the right premise.
    PathFact joined;
    const std::uint64_t all_nodes = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    auto try_join = [&](std::size_t ai, std::size_t bi) {
        if (!glue(store.at(ai), store.nodes(ai), store.at(bi), store.nodes(bi), joined)) return;
        derive(joined, Rule::Transitivity,
               {FactRef::path(store.canonical_of(ai)), FactRef::path(store.canonical_of(bi))});
    };
    while (!work.empty()) {
        const std::size_t ai = work.front();
        work.pop_front();
        const PathFact& a = store.at(ai);
        const NodeId j = a.path[a.path.size() - 2];
        const NodeId i = a.path.back();
        const auto& bucket = store.starting_with(j, i);
        // The right premise's tail must avoid every node of the left one:
        // either scan the bucket or enumerate the admissible tails, whichever
        // is smaller.
        const std::uint64_t free = all_nodes & ~store.nodes(ai).bits();
        const int free_count = std::popcount(free);
        if (free_count < 20 && (std::size_t{1} << free_count) < bucket.size()) {
            for (std::uint64_t sub = free; sub != 0; sub = (sub - 1) & free) {
                const auto* matches = store.starting_with(j, i, NodeSet{sub});
                if (!matches) continue;
                for (std::size_t k = 0; k < matches->size(); ++k) try_join(ai, (*matches)[k]);
            }
        } else {
            for (std::size_t k = 0; k < bucket.size(); ++k) try_join(ai, bucket[k]);
        }
    }

    // Deterministic order and index remapping.
    std::vector<PathFact> facts = store.take_canonical();
    std::vector<std::size_t> order(facts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return compare_facts(facts[l], facts[r]) < 0; });
    std::vector<std::size_t> rank(facts.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    std::vector<std::size_t> morder(c.m_mediate.size());
    std::iota(morder.begin(), morder.end(), 0);
    std::sort(morder.begin(), morder.end(), [&](std::size_t l, std::size_t r) {
        const auto& a = c.m_mediate[l];
        const auto& b = c.m_mediate[r];
        if (a.source != b.source) return a.source < b.source;
        if (a.target != b.target) return a.target < b.target;
        return a.intermediates.lex_compare(b.intermediates) < 0;
    });
    std::vector<std::size_t> mrank(morder.size());
    for (std::size_t i = 0; i < morder.size(); ++i) mrank[morder[i]] = i;
    std::vector<MediateCauseFact> mediate;
    mediate.reserve(morder.size());
    for (std::size_t i : morder) mediate.push_back(c.m_mediate[i]);
    c.m_mediate = std::move(mediate);

    auto remap = [&](FactRef& r) {
        if (r.kind == FactRef::Kind::Path) r.index = rank[r.index];
        else if (r.kind == FactRef::Kind::Mediate) r.index = mrank[r.index];
    };
    c.m_mediate_derivation.assign(c.m_mediate.size(), 0);
    for (std::size_t k = 0; k < c.m_trace.size(); ++k) {
        auto& t = c.m_trace[k];
        for (auto& p : t.premises) remap(p);
        remap(t.conclusion);
        c.m_mediate_derivation[t.conclusion.index] = k;
    }
    c.m_path_derivation.assign(facts.size(), 0);
    for (auto& t : path_trace) {
        for (auto& p : t.premises) remap(p);
        remap(t.conclusion);
        c.m_path_derivation[t.conclusion.index] = c.m_trace.size();
        c.m_trace.push_back(std::move(t));
    }

    c.m_paths.reserve(facts.size());
    for (std::size_t i : order) c.m_paths.push_back(std::move(facts[i]));
    c.m_by_pair.assign(n * n, {});
    for (std::size_t i = 0; i < c.m_paths.size(); ++i) {
        c.m_by_pair[c.m_paths[i].left() * n + c.m_paths[i].right()].push_back(i);
    }
    return c;
}

std::size_t rerun_rules(const CausalGraph& g, const Closure& closure) {
    check_capacity(g);
    const std::size_t n = g.size();
    std::set<MediateKey> mediate;
    for (const auto& m : closure.mediate()) mediate.emplace(m.source, m.target, m.intermediates.bits());
    std::unordered_set<std::string> paths;
    for (const auto& f : closure.paths()) paths.insert(fact_key(f));

    std::set<MediateKey> missing_mediate;
    std::unordered_set<std::string> missing_paths;
    auto conclude_mediate = [&](NodeId s, NodeId t, NodeSet set) {
        MediateKey key{s, t, set.bits()};
        if (!mediate.contains(key)) missing_mediate.insert(key);
    };
    auto conclude_path = [&](const PathFact& f) {
        std::string key = fact_key(canonical(f));
        if (!paths.contains(key)) missing_paths.insert(std::move(key));
    };

    for (NodeId s = 0; s < n; ++s) conclude_mediate(s, s, NodeSet::of(s));
    for (const auto& m : closure.mediate()) {
        for (NodeId v : g.children(m.target)) conclude_mediate(m.source, v, m.intermediates | NodeSet::of(v));
    }

    for (NodeId y = 0; y < n; ++y) {
        for (NodeId x : g.parents(y)) {
            for (NodeId z : g.children(y)) {
                PathFact f = triple(x, y, z);
                f.noncolliders = NodeSet::of(y);
                conclude_path(f);
            }
        }
        for (NodeId x : g.children(y)) {
            for (NodeId z : g.children(y)) {
                if (x == z) continue;
                PathFact f = triple(x, y, z);
                f.noncolliders = NodeSet::of(y);
                conclude_path(f);
            }
        }
        for (NodeId x : g.parents(y)) {
            for (NodeId z : g.parents(y)) {
                if (x == z) continue;
                for (const auto& m : closure.mediate()) {
                    if (m.source != y || m.intermediates.contains(x) || m.intermediates.contains(z)) continue;
                    PathFact f = triple(x, y, z);
                    f.colliders = {y};
                    f.collider_sets = {m.intermediates};
                    conclude_path(f);
                }
            }
        }
    }

    // Transitivity*, general junction: a suffix of the left premise starting
    // at an interior node j equals a prefix of the right premise ending at an
    // interior node i. Colliders inside the overlap must agree on their set.
    std::vector<PathFact> oriented;
    oriented.reserve(2 * closure.paths().size());
    for (const auto& f : closure.paths()) {
        oriented.push_back(f);
        oriented.push_back(f.reversed());
    }
    std::vector<std::vector<std::size_t>> by_prefix(n * n);
    for (std::size_t i = 0; i < oriented.size(); ++i) {
        by_prefix[oriented[i].path[0] * n + oriented[i].path[1]].push_back(i);
    }
    auto set_at = [](const PathFact& f, std::size_t position) -> const NodeSet* {
        NodeId node = f.path[position];
        for (std::size_t k = 0; k < f.colliders.size(); ++k) {
            if (f.colliders[k] == node) return &f.collider_sets[k];
        }
        return nullptr;
    };
    for (const auto& a : oriented) {
        const std::size_t la = a.path.size();
        for (std::size_t s = 1; s + 1 < la; ++s) {
            const std::size_t overlap = la - s;
            for (std::size_t bi : by_prefix[a.path[s] * n + a.path[s + 1]]) {
                const PathFact& b = oriented[bi];
                const std::size_t lb = b.path.size();
                if (overlap + 1 > lb) continue;  // i must be interior to b
                if (!std::equal(a.path.begin() + static_cast<std::ptrdiff_t>(s), a.path.end(), b.path.begin())) continue;
                bool consistent = true;
                for (std::size_t p = 1; p + 1 < overlap && consistent; ++p) {
                    const NodeSet* sa = set_at(a, s + p);
                    const NodeSet* sb = set_at(b, p);
                    if ((sa == nullptr) != (sb == nullptr) || (sa && *sa != *sb)) consistent = false;
                }
                if (!consistent) continue;
                NodeSet a_nodes = node_mask(a.path);
                std::vector<NodeId> rest(b.path.begin() + static_cast<std::ptrdiff_t>(overlap), b.path.end());
                if (a_nodes.intersects(node_mask(rest))) continue;
                NodeSet ends = NodeSet::of(a.left()) | NodeSet::of(b.right());
                if (!sets_avoid(a, ends) || !sets_avoid(b, ends)) continue;

                PathFact out;
                out.path = a.path;
                out.path.insert(out.path.end(), rest.begin(), rest.end());
                out.noncolliders = a.noncolliders | b.noncolliders;
                out.colliders = a.colliders;
                out.collider_sets = a.collider_sets;
                for (std::size_t k = 0; k < b.colliders.size(); ++k) {
                    if (std::find(out.colliders.begin(), out.colliders.end(), b.colliders[k]) != out.colliders.end()) continue;
                    out.colliders.push_back(b.colliders[k]);
                    out.collider_sets.push_back(b.collider_sets[k]);
                }
                conclude_path(out);
            }
        }
    }
    return missing_mediate.size() + missing_paths.size();
}

bool is_fact_blocked(const PathFact& fact, NodeSet conditioning) {
    if (fact.noncolliders.intersects(conditioning)) return true;
    return std::any_of(fact.collider_sets.begin(), fact.collider_sets.end(),
                       [&](NodeSet s) { return !s.empty() && !s.intersects(conditioning); });
}

bool dsep_oracle(const CausalGraph& g, NodeId x, NodeId y, NodeSet conditioning) {
    check_capacity(g);
    const std::size_t n = g.size();
    if (x >= n || y >= n) throw Error(ErrorCode::UnknownVariable, "node id out of range");
    if (x == y) throw Error(ErrorCode::InvalidArgument, "d-separation needs two distinct nodes");

    // A collider is open iff it or one of its descendants is conditioned.
    std::vector<bool> collider_open(n);
    for (NodeId v = 0; v < n; ++v) {
        bool open = conditioning.contains(v);
        for (NodeId d : g.descendants(v)) open = open || conditioning.contains(d);
        collider_open[v] = open;
    }
    std::vector<std::vector<NodeId>> neighbours(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : g.children(u)) {
            neighbours[u].push_back(v);
            neighbours[v].push_back(u);
        }
    }

    std::vector<NodeId> path{x};
    std::vector<bool> on_path(n, false);
    on_path[x] = true;
    auto path_open = [&]() {
        for (std::size_t k = 1; k + 1 < path.size(); ++k) {
            NodeId v = path[k];
            bool collider = g.has_edge(path[k - 1], v) && g.has_edge(path[k + 1], v);
            bool open = collider ? collider_open[v] : !conditioning.contains(v);
            if (!open) return false;
        }
        return true;
    };
    // Depth-first over simple paths; stop at the first open one.
    auto search = [&](auto&& self, NodeId v) -> bool {
        for (NodeId w : neighbours[v]) {
            if (on_path[w]) continue;
            path.push_back(w);
            if (w == y) {
                if (path_open()) return true;
            } else {
                on_path[w] = true;
                if (self(self, w)) return true;
                on_path[w] = false;
            }
            path.pop_back();
        }
        return false;
    };
    return !search(search, x);
}

bool dsep_oracle(const CausalGraph& g, std::string_view x, std::string_view y,
                 std::span<const std::string> conditioning) {
    return dsep_oracle(g, g.id(x), g.id(y), to_node_set(g, conditioning));
}

bool independent_by_rules(const Closure& closure, const CausalGraph& g, NodeId x, NodeId y,
                          NodeSet conditioning) {
    if (x == y) throw Error(ErrorCode::InvalidArgument, "independence needs two distinct nodes");
    if (g.has_edge(x, y) || g.has_edge(y, x)) return false;
    for (std::size_t i : closure.facts_between(x, y)) {
        if (!is_fact_blocked(closure.paths()[i], conditioning)) return false;
    }
    return true;
}

bool independent_by_rules(const Closure& closure, const CausalGraph& g, std::string_view x,
                          std::string_view y, std::span<const std::string> conditioning) {
    return independent_by_rules(closure, g, g.id(x), g.id(y), to_node_set(g, conditioning));
}

}  // namespace fairgate
