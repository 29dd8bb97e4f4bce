#include <doctest.h>

#include <map>
#include <random>

#include "fairgate/fairness.hpp"
#include "fairgate/oracle_sweep.hpp"

using namespace fairgate;

namespace {

const std::string kBeta = "\xCE\xB2";
const std::string kBetaPrime = "\xCE\xB2\xE2\x80\xB2";

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

// Direct row count of P(t=β | a1, a2) with wildcards for "".
Rational count_ratio(const Dataset& d, const std::string& a1, const std::string& a2) {
    std::size_t rows = 0;
    std::size_t hits = 0;
    for (const auto& r : d.rows()) {
        if (!a1.empty() && r[0] != a1) continue;
        if (!a2.empty() && r[1] != a2) continue;
        ++rows;
        hits += r[2] == kBeta ? 1 : 0;
    }
    return Rational(hits, rows);
}

Context ctx_of(std::vector<std::pair<std::string, std::string>> items) {
    Context c;
    for (auto& [k, v] : items) c.add({k, Value::atomic(v)});
    return c;
}

CausalGraph graph_of(std::vector<Edge> edges, std::vector<std::string> nodes = {}) {
    return build_graph(nodes, edges);
}

}  // namespace

TEST_CASE("training set generator") {
    Dataset d = generate_table1();
    CHECK(d.rows().size() == 680);
    CHECK(d.columns() == std::vector<std::string>{"a1", "a2", "t"});
    CHECK(d.target() == "t");
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> counts;
    for (const auto& r : d.rows()) ++counts[{r[0], r[1], r[2]}];
    CHECK(counts[{"v11", "v21", kBeta}] == 90);
    CHECK(counts[{"v11", "v21", kBetaPrime}] == 10);
    CHECK(counts[{"v11", "v22", kBeta}] == 180);
    CHECK(counts[{"v11", "v22", kBetaPrime}] == 60);
    CHECK(counts[{"v12", "v21", kBeta}] == 180);
    CHECK(counts[{"v12", "v21", kBetaPrime}] == 60);
    CHECK(counts[{"v12", "v22", kBeta}] == 90);
    CHECK(counts[{"v12", "v22", kBetaPrime}] == 10);
    std::size_t beta = 0;
    for (const auto& r : d.rows()) beta += r[2] == kBeta ? 1 : 0;
    CHECK(beta == 540);
    CHECK(to_csv(generate_table1()) == to_csv(d));
}

TEST_CASE("empirical probabilities reproduce the training set cells") {
    Dataset d = generate_table1();
    Value beta = Value::atomic(kBeta);
    CHECK(empirical_probability(d, ctx_of({{"a1", "v11"}, {"a2", "v21"}}), beta) == Rational(9, 10));
    CHECK(empirical_probability(d, ctx_of({{"a1", "v11"}}), beta) == Rational(27, 34));
    for (std::string a1 : {"v11", "v12"}) {
        for (std::string a2 : {"v21", "v22"}) {
            CHECK(empirical_probability(d, ctx_of({{"a1", a1}, {"a2", a2}}), beta) == count_ratio(d, a1, a2));
        }
        CHECK(empirical_probability(d, ctx_of({{"a1", a1}}), beta) == count_ratio(d, a1, ""));
    }
    CHECK(empirical_probability(d, Context{}, beta) == Rational(540, 680));
    CHECK(empirical_probability(d, Context{}, Value::sum({kBeta, kBetaPrime})) == Rational(1));
    CHECK(empirical_probability(d, Context{}, Value::complement(kBeta)) == Rational(140, 680));
    Context sum;
    sum.add({"a2", Value::sum({"v21", "v22"})});
    CHECK(empirical_probability(d, sum, beta) == Rational(27, 34));
    CHECK(code_of([&] { empirical_probability(d, ctx_of({{"a1", "v13"}}), beta); }) ==
          ErrorCode::EmptyConditioningSet);
    CHECK(code_of([&] { empirical_probability(d, ctx_of({{"zz", "v13"}}), beta); }) == ErrorCode::UnknownColumn);
}

TEST_CASE("single matching row gives certainty") {
    Dataset d({"A", "T"}, {{"x", "b"}, {"y", "c"}}, "T");
    CHECK(empirical_probability(d, ctx_of({{"A", "x"}}), Value::atomic("b")) == Rational(1));
}

TEST_CASE("conditional independence on the training set") {
    Dataset d = generate_table1();
    CiResult marginal = empirical_ci(d, "a1", "t", Context{}, Rational(0));
    CHECK(marginal.independent);
    CHECK(marginal.max_delta == 0);
    CHECK(marginal.conditioning_rows == 680);

    CiResult given = empirical_ci(d, "a1", "t", ctx_of({{"a2", "v21"}}), Rational(0));
    CHECK_FALSE(given.independent);
    // Independent arithmetic: |9/10 - 27/34|, |3/4 - 27/34| and the cell gap.
    Rational gap_high = Rational(9, 10) - Rational(270, 340);
    Rational gap_low = Rational(270, 340) - Rational(3, 4);
    CHECK(gap_high == Rational(9, 85));
    CHECK(gap_low == Rational(3, 68));
    CHECK(given.max_delta == gap_high);
    REQUIRE(given.witness);
    CHECK(given.witness->alpha == "v11");
    CHECK(given.witness->beta == kBeta);
    CHECK(given.witness->conditioned == Rational(9, 10));
    CHECK(given.witness->marginal == Rational(27, 34));
    CHECK(given.max_pairwise_delta == Rational(9, 10) - Rational(3, 4));
    CHECK(given.max_pairwise_delta == Rational(3, 20));
    REQUIRE(given.pairwise_witness);
    CHECK(given.pairwise_witness->high == Rational(9, 10));
    CHECK(given.pairwise_witness->low == Rational(3, 4));
    CHECK(given.cells.size() == 4);

    CHECK(empirical_ci(d, "a1", "t", ctx_of({{"a2", "v21"}}), Rational(9, 85)).independent);
    CHECK_FALSE(empirical_ci(d, "a1", "t", ctx_of({{"a2", "v21"}}), Rational(9, 86)).independent);
}

TEST_CASE("uniform data is independent") {
    std::vector<std::vector<std::string>> rows(10, {"x", "y", "z"});
    Dataset d({"A", "B", "T"}, rows, "T");
    CiResult r = empirical_ci(d, "A", "T", Context{}, Rational(0));
    CHECK(r.independent);
    CHECK(r.max_delta == 0);
}

TEST_CASE("ci preconditions") {
    Dataset d = generate_table1();
    CHECK(code_of([&] { empirical_ci(d, "a1", "t", ctx_of({{"a1", "v11"}}), Rational(0)); }) ==
          ErrorCode::VariableAlreadyInContext);
    CHECK(code_of([&] { empirical_ci(d, "a3", "t", Context{}, Rational(0)); }) == ErrorCode::UnknownColumn);
    CHECK(code_of([&] { empirical_ci(d, "a1", "t", ctx_of({{"a2", "v29"}}), Rational(0)); }) ==
          ErrorCode::EmptyConditioningSet);
}

TEST_CASE("datasets") {
    Dataset d = parse_csv("A,B,T\nx,\"y\",1\r\nz,w,0\n", "T");
    CHECK(d.rows().size() == 2);
    CHECK(d.rows()[0][1] == "y");
    CHECK(to_csv(d) == "A,B,T\nx,y,1\nz,w,0\n");
    CHECK(code_of([] { parse_csv("A,B\nx\n", "A"); }) == ErrorCode::MalformedDataset);
    CHECK(code_of([] { parse_csv("A,A\nx,y\n", "A"); }) == ErrorCode::MalformedDataset);
    CHECK(code_of([] { parse_csv("A,B\nx,y\n", "T"); }) == ErrorCode::UnknownColumn);
    CHECK(code_of([] { parse_csv("A,B\nx,a+b\n", "A"); }) == ErrorCode::MalformedDataset);
    CHECK(code_of([] { parse_csv("A,B\nx,\n", "A"); }) == ErrorCode::MalformedDataset);
    CHECK(code_of([] { parse_csv("", "A"); }) == ErrorCode::MalformedDataset);
    CHECK(code_of([] { parse_csv("A,B\n\"x,y\n", "A"); }) == ErrorCode::MalformedDataset);
    Dataset t = parse_csv(to_csv(generate_table1()), "t");
    CHECK(t.rows() == generate_table1().rows());
}

TEST_CASE("graphical individual fairness on the loan graph") {
    CausalGraph g = graph_of({{"Age", "MS"}, {"Age", "GAI"}, {"Age", "Loan"}, {"GAI", "Loan"}});
    Closure c = close(g);
    FairnessInputs in{&g, &c, nullptr};
    IfEntry e = check_if(in, parse_context("Age=27, GAI=40K"), "Loan", "MS", Rational(0), Mode::Graphical);
    CHECK(e.pass);
    REQUIRE(e.verdict);
    CHECK(e.verdict->admissible);
    CHECK(*e.graphical_pass);
    CHECK_FALSE(e.empirical_pass);
    CHECK_FALSE(e.agreement);
    IfEntry bad = check_if(in, parse_context("GAI=40K"), "Loan", "MS", Rational(0), Mode::Graphical);
    CHECK_FALSE(bad.pass);
    CHECK(code_of([&] { check_if(in, Context{}, "Loan", "Loan", Rational(0), Mode::Graphical); }) ==
          ErrorCode::WeakeningTargetIsGoal);
    CHECK(code_of([&] { check_if(in, parse_context("MS=m"), "Loan", "MS", Rational(0), Mode::Graphical); }) ==
          ErrorCode::VariableAlreadyInContext);
    CHECK(code_of([&] { check_if(in, Context{}, "Loan", "MS", Rational(0), Mode::Empirical); }) ==
          ErrorCode::InvalidArgument);

    FairnessReport r = check_intersectionality(in, parse_context("Age=27, GAI=40K"), "Loan", {"MS"}, Rational(0),
                                               Mode::Graphical);
    CHECK(r.pass);
    REQUIRE(r.subsets.size() == 1);
    CHECK(r.subsets[0].entries.size() == 1);
    CHECK(r.subsets[0].entries[0].verdict->admissible == e.verdict->admissible);
}

TEST_CASE("two-cause graph: marginal fairness with causal influence") {
    CausalGraph g = graph_of({{"a1", "t"}, {"a2", "t"}});
    Closure c = close(g);
    Dataset d = generate_table1();
    FairnessInputs in{&g, &c, &d};
    IfEntry e = check_if(in, Context{}, "t", "a1", Rational(0), Mode::Both);
    CHECK(*e.empirical_pass);
    CHECK_FALSE(*e.graphical_pass);
    CHECK(*e.verdict->failed_condition == Condition::Condition1);
    REQUIRE(e.agreement);
    CHECK_FALSE(*e.agreement);
    CHECK_FALSE(e.pass);
}

TEST_CASE("intersectionality on the training set") {
    Dataset d = generate_table1();
    FairnessInputs in{nullptr, nullptr, &d};
    FairnessReport r = check_intersectionality(in, Context{}, "t", {"a2", "a1"}, Rational(0), Mode::Empirical);
    CHECK_FALSE(r.pass);
    CHECK(r.protected_attrs == std::vector<std::string>{"a1", "a2"});
    REQUIRE(r.subsets.size() == 3);
    CHECK(r.subsets[0].subset == std::vector<std::string>{"a1"});
    CHECK(r.subsets[1].subset == std::vector<std::string>{"a2"});
    CHECK(r.subsets[2].subset == std::vector<std::string>{"a1", "a2"});
    CHECK(r.subsets[0].pass);
    CHECK(r.subsets[1].pass);
    CHECK_FALSE(r.subsets[2].pass);
    const IfEntry& pair = r.subsets[2].entries[0];
    CHECK(pair.attribute == "a1");
    CHECK(pair.merged == std::vector<std::string>{"a2"});
    REQUIRE(pair.empirical.size() == 2);
    CHECK(pair.empirical[0].result.pairwise_witness->high == Rational(9, 10));
    CHECK(pair.empirical[0].result.pairwise_witness->low == Rational(3, 4));
    CHECK(r.max_delta == Rational(9, 85));

    FairnessReport again = check_intersectionality(in, Context{}, "t", {"a1", "a2"}, Rational(0), Mode::Empirical);
    CHECK(again.max_delta == r.max_delta);
    CHECK(again.subsets[2].pass == r.subsets[2].pass);

    FairnessReport single = check_intersectionality(in, Context{}, "t", {"a1"}, Rational(0), Mode::Empirical);
    IfEntry direct = check_if(in, Context{}, "t", "a1", Rational(0), Mode::Empirical);
    CHECK(single.pass == direct.pass);
    CHECK(single.max_delta == direct.max_delta);
}

TEST_CASE("intersectionality preconditions") {
    Dataset d = generate_table1();
    FairnessInputs in{nullptr, nullptr, &d};
    CHECK(code_of([&] { check_intersectionality(in, Context{}, "t", {}, Rational(0), Mode::Empirical); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([&] { check_intersectionality(in, Context{}, "t", {"a1", "t"}, Rational(0), Mode::Empirical); }) ==
          ErrorCode::WeakeningTargetIsGoal);
    CHECK(code_of([&] {
              check_intersectionality(in, ctx_of({{"a1", "v11"}}), "t", {"a1"}, Rational(0), Mode::Empirical);
          }) == ErrorCode::VariableAlreadyInContext);
    CHECK(code_of([&] { check_intersectionality(in, Context{}, "t", {"a1", "a1"}, Rational(0), Mode::Empirical); }) ==
          ErrorCode::DuplicateVariable);
    std::vector<std::string> many;
    for (int i = 0; i < 13; ++i) many.push_back("p" + std::to_string(i));
    CHECK(code_of([&] { check_intersectionality(in, Context{}, "t", many, Rational(0), Mode::Empirical); }) ==
          ErrorCode::SubsetExplosion);
    CHECK(code_of([&] { check_intersectionality(in, Context{}, "t", {"a1", "a2"}, Rational(0), Mode::Empirical, 1); }) ==
          ErrorCode::SubsetExplosion);
}

TEST_CASE("a context matching no rows is an error, not a pass") {
    Dataset d = generate_table1();
    FairnessInputs in{nullptr, nullptr, &d};
    Context none = ctx_of({{"a2", "v99"}});
    CHECK(code_of([&] { check_if(in, none, "t", "a1", Rational(0), Mode::Empirical); }) ==
          ErrorCode::EmptyConditioningSet);
    Dataset wide({"a1", "a2", "a3", "t"}, {{"x", "y", "z", kBeta}}, "t");
    FairnessInputs win{nullptr, nullptr, &wide};
    CHECK(code_of([&] {
              check_intersectionality(win, ctx_of({{"a3", "q"}}), "t", {"a1", "a2"}, Rational(0), Mode::Empirical);
          }) == ErrorCode::EmptyConditioningSet);
}

TEST_CASE("training set demo") {
    Table1Demo demo = run_table1_demo();
    CHECK(demo.rows == 680);
    CHECK(demo.reproduced);
    CHECK_FALSE(demo.observation.pass);
    REQUIRE(demo.cells.size() == 4);
    CHECK(demo.cells[0].beta == 90);
    CHECK(demo.cells[0].rows == 100);
}

TEST_CASE("graphical pass implies empirical pass on sampled data") {
    // With 50000 rows and every probability in [0.2, 0.8], each conditioning
    // cell holds about 2000 rows or more, so 1/20 sits beyond four standard
    // errors of any frequency difference.
    const Rational epsilon(1, 20);
    std::mt19937_64 rng(2024);
    std::size_t graphical_passes = 0;
    for (int trial = 0; trial < 25; ++trial) {
        CausalGraph g = random_dag(rng, 5);
        if (g.size() < 3) continue;
        Closure c = close(g);
        const std::string target = g.name(g.topological_order().back());
        Dataset d = sample_from_graph(g, rng, 50000, target);
        FairnessInputs in{&g, &c, &d};
        for (NodeId a = 0; a < g.size(); ++a) {
            if (g.name(a) == target) continue;
            for (NodeId z = 0; z < g.size(); ++z) {
                if (z == a || g.name(z) == target) continue;
                // Single-variable contexts keep every conditioning cell well populated.
                Context ctx = ctx_of({{g.name(z), "1"}});
                IfEntry e = check_if(in, ctx, target, g.name(a), epsilon, Mode::Both);
                if (*e.graphical_pass) {
                    ++graphical_passes;
                    CHECK(*e.empirical_pass);
                }
            }
        }
    }
    CHECK(graphical_passes > 0);
}

TEST_CASE("forward sampling is deterministic") {
    CausalGraph g = graph_of({{"A", "B"}, {"B", "C"}});
    std::mt19937_64 r1(5);
    std::mt19937_64 r2(5);
    CHECK(to_csv(sample_from_graph(g, r1, 100, "C")) == to_csv(sample_from_graph(g, r2, 100, "C")));
}
