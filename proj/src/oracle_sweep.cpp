#include "fairgate/oracle_sweep.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <thread>

namespace fairgate {

namespace {

std::string letter_name(std::size_t i) {
    std::string name;
    do {
        name.insert(name.begin(), static_cast<char>('A' + i % 26));
        i /= 26;
    } while (i-- > 0);
    return name;
}

// Adjacency bits over a fixed topological order: bit (i*n + j) is edge i -> j.
std::uint64_t permuted(std::uint64_t adj, std::size_t n, const std::vector<std::size_t>& perm) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if ((adj >> (i * n + j)) & 1U) out |= std::uint64_t{1} << (perm[i] * n + perm[j]);
        }
    }
    return out;
}

}  // namespace

std::vector<CausalGraph> enumerate_dags(std::size_t nodes) {
    if (nodes == 0) return {};
    if (nodes > 6) throw Error(ErrorCode::ResourceLimit, "exhaustive DAG enumeration is limited to 6 nodes");
    const std::size_t n = nodes;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    }
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    // Every DAG has a topological order, so upper-triangular adjacency covers
    // all classes; keep the first labelled member of each class.
    std::set<std::uint64_t> seen;
    std::vector<CausalGraph> out;
    std::vector<std::string> names(n);
    for (std::size_t k = 0; k < n; ++k) names[k] = letter_name(n - 1 - k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::uint64_t adj = 0;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if ((mask >> s) & 1U) adj |= std::uint64_t{1} << (slots[s].first * n + slots[s].second);
        }
        std::uint64_t canon = adj;
        for (const auto& p : perms) canon = std::min(canon, permuted(adj, n, p));
        if (!seen.insert(canon).second) continue;
        std::vector<Edge> edges;
        for (const auto& [i, j] : slots) {
            if ((adj >> (i * n + j)) & 1U) edges.push_back({names[i], names[j]});
        }
        out.push_back(build_graph(names, edges));
    }
    return out;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    // Rejection sampling keeps the draw unbiased and platform independent.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

CausalGraph random_dag(std::mt19937_64& rng, std::size_t max_nodes) {
    max_nodes = std::max<std::size_t>(max_nodes, 2);
    const std::size_t n = 2 + uniform_below(rng, max_nodes - 1);
    const double density = 0.15 + 0.40 * uniform_unit(rng);
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = letter_name(i);
    // Fisher-Yates: names[k] becomes the k-th node in topological order.
    for (std::size_t i = n - 1; i > 0; --i) std::swap(names[i], names[uniform_below(rng, i + 1)]);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (uniform_unit(rng) < density) edges.push_back({names[i], names[j]});
        }
    }
    return build_graph(names, edges);
}

std::size_t compare_on_graph(const CausalGraph& g, const Closure& closure, const std::string& family,
                             std::size_t instance, std::vector<Discrepancy>& out) {
    const auto n = static_cast<NodeId>(g.size());
    std::size_t triples = 0;
    for (NodeId x = 0; x < n; ++x) {
        for (NodeId y = x + 1; y < n; ++y) {
            std::vector<NodeId> others;
            for (NodeId v = 0; v < n; ++v) {
                if (v != x && v != y) others.push_back(v);
            }
            for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << others.size()); ++sub) {
                NodeSet cond;
                for (std::size_t k = 0; k < others.size(); ++k) {
                    if ((sub >> k) & 1U) cond.insert(others[k]);
                }
                ++triples;
                bool rules = independent_by_rules(closure, g, x, y, cond);
                bool rules_rev = independent_by_rules(closure, g, y, x, cond);
                bool oracle = dsep_oracle(g, x, y, cond);
                if (rules == oracle && rules == rules_rev) continue;
                Discrepancy d;
                d.family = family;
                d.instance = instance;
                d.edges = g.edges();
                d.nodes = g.names();
                d.x = g.name(x);
                d.y = g.name(y);
                d.conditioning = to_names(g, cond);
                d.rules_independent = rules;
                d.oracle_independent = oracle;
                d.symmetric = rules == rules_rev;
                out.push_back(std::move(d));
            }
        }
    }
    return triples;
}

SweepReport run_oracle_sweep(const SweepOptions& options) {
    struct Job {
        std::string family;
        std::size_t instance;
        CausalGraph graph;
    };
    std::vector<Job> jobs;
    SweepReport report;
    for (std::size_t n = 1; n <= options.exhaustive_max_nodes; ++n) {
        for (auto& g : enumerate_dags(n)) jobs.push_back({"exhaustive", report.exhaustive_graphs++, std::move(g)});
    }
    std::mt19937_64 rng(options.seed);
    for (std::size_t t = 0; t < options.random_trials; ++t) {
        jobs.push_back({"random", report.random_graphs++, random_dag(rng, options.random_max_nodes)});
    }

    struct Result {
        std::size_t triples = 0;
        std::size_t facts = 0;
        std::vector<Discrepancy> discrepancies;
        std::exception_ptr error;
    };
    std::vector<Result> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                Closure c = close(jobs[i].graph, ClosureOptions{options.fact_budget});
                results[i].facts = c.fact_count();
                results[i].triples =
                    compare_on_graph(jobs[i].graph, c, jobs[i].family, jobs[i].instance, results[i].discrepancies);
            } catch (...) {
                results[i].error = std::current_exception();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    // Aggregate by job index so the report does not depend on scheduling.
    for (auto& r : results) {
        if (r.error) std::rethrow_exception(r.error);
        report.triples += r.triples;
        report.max_facts = std::max(report.max_facts, r.facts);
        for (auto& d : r.discrepancies) report.discrepancies.push_back(std::move(d));
    }
    return report;
}

}  // namespace fairgate
