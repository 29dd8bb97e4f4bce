#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fairgate/graph.hpp"
#include "fairgate/relations.hpp"

namespace fairgate {

// One representative per isomorphism class of DAGs on exactly `nodes`
// vertices, named A, B, C, ... in a fixed order.
std::vector<CausalGraph> enumerate_dags(std::size_t nodes);

// Uniform 64-bit helpers over mt19937_64 so results do not depend on the
// standard library's distribution implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
double uniform_unit(std::mt19937_64& rng);

// Random DAG: random node count in [2, max_nodes], random topological order,
// each forward pair joined with a per-graph density drawn from [0.15, 0.55].
CausalGraph random_dag(std::mt19937_64& rng, std::size_t max_nodes);

struct Discrepancy {
    std::string family;  // "exhaustive" or "random"
    std::size_t instance = 0;
    std::vector<Edge> edges;
    std::vector<std::string> nodes;
    std::string x;
    std::string y;
    std::vector<std::string> conditioning;
    bool rules_independent = false;
    bool oracle_independent = false;
    bool symmetric = true;  // rules(x, y) == rules(y, x)
};

struct SweepOptions {
    std::size_t exhaustive_max_nodes = 5;
    std::size_t random_trials = 0;
    std::size_t random_max_nodes = 8;
    std::uint64_t seed = 0;
    std::size_t fact_budget = 1'000'000;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct SweepReport {
    std::size_t exhaustive_graphs = 0;
    std::size_t random_graphs = 0;
    std::size_t triples = 0;
    std::size_t max_facts = 0;
    std::vector<Discrepancy> discrepancies;  // ordered by family, then instance

    bool passed() const { return discrepancies.empty(); }
};

// Compares independent_by_rules with dsep_oracle on every pair and every
// conditioning subset of the remaining nodes.
SweepReport run_oracle_sweep(const SweepOptions& options);

// Same comparison for a single graph; appends to `out`.
std::size_t compare_on_graph(const CausalGraph& g, const Closure& closure, const std::string& family,
                             std::size_t instance, std::vector<Discrepancy>& out);

}  // namespace fairgate
