#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fairgate/graph.hpp"
#include "fairgate/oracle_sweep.hpp"

using namespace fairgate;

namespace {

CausalGraph loan() {
    std::vector<std::string> nodes{"Age", "MS", "GAI", "Loan"};
    std::vector<Edge> edges{{"Age", "MS"}, {"Age", "GAI"}, {"Age", "Loan"}, {"GAI", "Loan"}};
    return build_graph(nodes, edges);
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("loan graph builds with sorted node ids") {
    CausalGraph g = loan();
    CHECK(g.size() == 4);
    CHECK(g.edge_count() == 4);
    CHECK(g.names() == std::vector<std::string>{"Age", "GAI", "Loan", "MS"});
    CHECK(g.id("Age") == 0);
    CHECK_FALSE(g.find("age"));
}

TEST_CASE("immediate cause") {
    CausalGraph g = loan();
    CHECK(is_immediate_cause(g, "Age", "Loan"));
    CHECK_FALSE(is_immediate_cause(g, "MS", "Loan"));
    CHECK_FALSE(is_immediate_cause(g, "Loan", "Age"));
    for (const auto& n : g.names()) CHECK_FALSE(is_immediate_cause(g, n, n));
    CHECK(code_of([&] { is_immediate_cause(g, "Zip", "Loan"); }) == ErrorCode::UnknownVariable);
}

TEST_CASE("descendants") {
    CausalGraph g = loan();
    CHECK(descendants(g, "Age") == std::vector<std::string>{"GAI", "Loan", "MS"});
    CHECK(descendants(g, "Loan").empty());
    std::vector<Edge> chain{{"A", "B"}, {"B", "C"}};
    CausalGraph c = build_graph({}, chain);
    CHECK(descendants(c, "A") == std::vector<std::string>{"B", "C"});
    CHECK(code_of([&] { descendants(g, "Nope"); }) == ErrorCode::UnknownVariable);
}

TEST_CASE("single node and implicit nodes") {
    std::vector<std::string> one{"A"};
    CausalGraph g = build_graph(one, {});
    CHECK(g.size() == 1);
    CHECK(g.edge_count() == 0);
    std::vector<Edge> e{{"X", "Y"}};
    std::vector<std::string> extra{"Z"};
    CausalGraph h = build_graph(extra, e);
    CHECK(h.names() == std::vector<std::string>{"X", "Y", "Z"});
}

TEST_CASE("two-cycle is rejected with a witness") {
    std::vector<Edge> e{{"A", "B"}, {"B", "A"}};
    try {
        build_graph({}, e);
        FAIL("expected a cycle");
    } catch (const CycleError& err) {
        CHECK(err.code() == ErrorCode::CycleDetected);
        const auto& w = err.witness();
        REQUIRE(w.size() == 3);
        CHECK(w.front() == w.back());
        CHECK(std::set<std::string>(w.begin(), w.end()) == std::set<std::string>{"A", "B"});
    }
}

TEST_CASE("cycle witness is a closed walk along edges") {
    std::vector<Edge> e{{"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "B"}, {"A", "E"}};
    try {
        build_graph({}, e);
        FAIL("expected a cycle");
    } catch (const CycleError& err) {
        const auto& w = err.witness();
        REQUIRE(w.size() >= 3);
        CHECK(w.front() == w.back());
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            CHECK(std::find(e.begin(), e.end(), Edge{w[i], w[i + 1]}) != e.end());
        }
    }
}

TEST_CASE("duplicate edges, self loops and bad names") {
    std::vector<Edge> dup{{"A", "B"}, {"A", "B"}};
    CHECK(code_of([&] { build_graph({}, dup); }) == ErrorCode::DuplicateEdge);
    std::vector<Edge> loop{{"A", "A"}};
    CHECK(code_of([&] { build_graph({}, loop); }) == ErrorCode::SelfLoop);
    for (std::string bad : {"", "a b", "x->y", "a:b", "a,b", "a=b", "a@b", "a#b", "tab\there"}) {
        CAPTURE(bad);
        std::vector<std::string> nodes{bad};
        CHECK(code_of([&] { build_graph(nodes, {}); }) == ErrorCode::MalformedName);
    }
    CHECK(is_valid_variable_name("Loan"));
    CHECK(is_valid_variable_name("a-b"));
    CHECK(is_valid_variable_name("\xCE\xB1"));
}

TEST_CASE("build is independent of input order") {
    std::vector<std::string> nodes{"Age", "MS", "GAI", "Loan"};
    std::vector<Edge> edges{{"Age", "MS"}, {"Age", "GAI"}, {"Age", "Loan"}, {"GAI", "Loan"}};
    CausalGraph ref = build_graph(nodes, edges);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(nodes.begin(), nodes.end(), rng);
        std::shuffle(edges.begin(), edges.end(), rng);
        CHECK(build_graph(nodes, edges) == ref);
    }
}

TEST_CASE("descendants exclude the node and grow under edge addition") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        CausalGraph g = random_dag(rng, 8);
        for (NodeId v = 0; v < g.size(); ++v) {
            auto d = g.descendants(v);
            CHECK(std::find(d.begin(), d.end(), v) == d.end());
        }
        // Add one forward edge along the topological order, if any is missing.
        const auto& topo = g.topological_order();
        std::vector<Edge> edges = g.edges();
        bool added = false;
        for (std::size_t i = 0; i < topo.size() && !added; ++i) {
            for (std::size_t j = i + 1; j < topo.size() && !added; ++j) {
                if (!g.has_edge(topo[i], topo[j])) {
                    edges.push_back({g.name(topo[i]), g.name(topo[j])});
                    added = true;
                }
            }
        }
        CausalGraph h = build_graph(g.names(), edges);
        for (const auto& n : g.names()) {
            auto before = descendants(g, n);
            auto after = descendants(h, n);
            CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        }
    }
}

TEST_CASE("topological order respects every edge") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        CausalGraph g = random_dag(rng, 8);
        std::vector<std::size_t> pos(g.size());
        const auto& topo = g.topological_order();
        REQUIRE(topo.size() == g.size());
        for (std::size_t i = 0; i < topo.size(); ++i) pos[topo[i]] = i;
        for (NodeId u = 0; u < g.size(); ++u) {
            for (NodeId v : g.children(u)) CHECK(pos[u] < pos[v]);
        }
    }
}

TEST_CASE("graph file parsing") {
    const char* text =
        "# loan classifier\n"
        "\n"
        "Age -> MS\n"
        "  Age->GAI  \n"
        "Age -> Loan\n"
        "GAI -> Loan\n"
        "node Zip\n";
    CausalGraph g = parse_graph(text);
    CHECK(g.size() == 5);
    CHECK(is_immediate_cause(g, "Age", "GAI"));
    CHECK(g.find("Zip"));
    CHECK(parse_graph(serialize_graph(g)) == g);
    CHECK(serialize_graph(g) == "node Zip\nAge -> GAI\nAge -> Loan\nAge -> MS\nGAI -> Loan\n");
}

TEST_CASE("graph file errors carry offsets") {
    try {
        parse_graph("A -> B\nC D\n");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 7);
    }
    CHECK(code_of([] { parse_graph("A -> \n"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_graph("A -> B\nB -> A\n"); }) == ErrorCode::CycleDetected);
    CHECK(code_of([] { parse_graph("A -> B\nA -> B\n"); }) == ErrorCode::DuplicateEdge);
}

TEST_CASE("serialize round-trips random graphs") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        CausalGraph g = random_dag(rng, 8);
        CHECK(parse_graph(serialize_graph(g)) == g);
    }
}
