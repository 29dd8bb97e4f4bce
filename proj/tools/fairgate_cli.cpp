#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairgate/fairgate.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kInputError = 2, kResourceLimit = 3 };

struct InputError {
    std::string message;
};

struct StatusError {
    fg_status status;
    std::string message;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};

using Graph = std::unique_ptr<fg_graph, Deleter<fg_graph, fg_graph_free>>;
using ClosureHandle = std::unique_ptr<fg_closure, Deleter<fg_closure, fg_closure_free>>;
using JudgmentHandle = std::unique_ptr<fg_judgment, Deleter<fg_judgment, fg_judgment_free>>;
using ContextHandle = std::unique_ptr<fg_context, Deleter<fg_context, fg_context_free>>;
using DatasetHandle = std::unique_ptr<fg_dataset, Deleter<fg_dataset, fg_dataset_free>>;
using CString = std::unique_ptr<char, Deleter<char, fg_string_free>>;

void check(fg_status s, const std::string& where) {
    if (s != FG_OK) throw StatusError{s, where + ": " + fg_last_error()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError{"cannot read '" + path + "'"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Common {
    std::string format = "json";
    std::optional<std::size_t> fact_budget;

    fg_format output() const { return format == "text" ? FG_FORMAT_TEXT : FG_FORMAT_JSON; }

    std::size_t budget() const {
        if (fact_budget) return *fact_budget;
        if (const char* env = std::getenv("FAIRGATE_FACT_BUDGET"); env && *env) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (*env < '0' || *env > '9' || *end != '\0' || v == 0) {
                throw InputError{"FAIRGATE_FACT_BUDGET must be a positive integer"};
            }
            return static_cast<std::size_t>(v);
        }
        return 0;
    }
};

void add_common(CLI::App* sub, Common& c, bool closure) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    if (closure) {
        sub->add_option("--fact-budget", c.fact_budget, "Maximum number of derived facts")
            ->check(CLI::PositiveNumber);
    }
}

Graph load_graph(const std::string& path) {
    std::string text = read_file(path);
    fg_graph* g = nullptr;
    check(fg_graph_parse(text.c_str(), &g), path);
    return Graph(g);
}

ClosureHandle load_closure(const fg_graph* g, const Common& c) {
    fg_closure* out = nullptr;
    check(fg_closure_compute(g, c.budget(), &out), "closure");
    return ClosureHandle(out);
}

ContextHandle load_context(const std::string& inline_text, const std::string& path, const fg_graph* g) {
    if (!inline_text.empty() && !path.empty()) throw InputError{"give either --context or --ctx, not both"};
    std::string text = path.empty() ? inline_text : read_file(path);
    fg_context* ctx = nullptr;
    check(fg_context_parse(text.c_str(), g, &ctx), path.empty() ? "--context" : path);
    return ContextHandle(ctx);
}

DatasetHandle load_dataset(const std::string& path, const std::string& target) {
    std::string text = read_file(path);
    fg_dataset* d = nullptr;
    check(fg_dataset_parse_csv(text.c_str(), target.c_str(), &d), path);
    return DatasetHandle(d);
}

int emit(char* report, int pass) {
    CString owned(report);
    std::fputs(owned.get(), stdout);
    std::fflush(stdout);
    return pass ? kPass : kFail;
}

struct FairnessArgs {
    std::string graph;
    std::string dataset;
    std::string target;
    std::string context;
    std::string ctx_file;
    std::string epsilon = "0";
    std::string mode;
    std::vector<std::string> protected_attrs;
};

void add_fairness(CLI::App* sub, FairnessArgs& a) {
    sub->add_option("--graph", a.graph, "Causal graph (.cg)")->check(CLI::ExistingFile);
    sub->add_option("--dataset", a.dataset, "Dataset (CSV)")->check(CLI::ExistingFile);
    sub->add_option("--target", a.target, "Target variable")->required();
    sub->add_option("--context", a.context, "Inline context, e.g. \"Age=27, GAI=40K\"");
    sub->add_option("--ctx", a.ctx_file, "Context file (.ctx)")->check(CLI::ExistingFile);
    sub->add_option("--epsilon", a.epsilon, "Tolerance, decimal or m/n");
    sub->add_option("--mode", a.mode, "graphical, empirical or both")
        ->check(CLI::IsMember({"graphical", "empirical", "both"}));
}

struct FairnessInputs {
    Graph graph;
    ClosureHandle closure;
    DatasetHandle dataset;
    ContextHandle context;
    fg_mode mode = FG_MODE_GRAPHICAL;
};

FairnessInputs load_fairness(const FairnessArgs& a, const Common& c) {
    FairnessInputs in;
    if (a.mode.empty()) {
        if (a.graph.empty() && a.dataset.empty()) throw InputError{"give --graph, --dataset or both"};
        in.mode = a.graph.empty() ? FG_MODE_EMPIRICAL : a.dataset.empty() ? FG_MODE_GRAPHICAL : FG_MODE_BOTH;
    } else {
        in.mode = a.mode == "graphical" ? FG_MODE_GRAPHICAL : a.mode == "empirical" ? FG_MODE_EMPIRICAL : FG_MODE_BOTH;
    }
    if (in.mode != FG_MODE_EMPIRICAL && a.graph.empty()) throw InputError{"mode needs --graph"};
    if (in.mode != FG_MODE_GRAPHICAL && a.dataset.empty()) throw InputError{"mode needs --dataset"};
    if (in.mode != FG_MODE_EMPIRICAL) in.graph = load_graph(a.graph);
    if (in.mode != FG_MODE_GRAPHICAL) in.dataset = load_dataset(a.dataset, a.target);
    in.context = load_context(a.context, a.ctx_file, in.graph.get());
    if (in.graph) in.closure = load_closure(in.graph.get(), c);
    return in;
}

int exit_code(fg_status s) {
    return s == FG_ERR_RESOURCE_LIMIT || s == FG_ERR_SUBSET_EXPLOSION ? kResourceLimit : kInputError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal-graph fairness checks for the Weakening rule"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fg_version());

    Common common;

    std::string paths_graph;
    auto* paths = app.add_subcommand("paths", "Dump the derived cause and path relations of a graph");
    paths->add_option("--graph", paths_graph, "Causal graph (.cg)")->required()->check(CLI::ExistingFile);
    add_common(paths, common, true);

    std::string weaken_graph, weaken_judgment, weaken_attr;
    auto* weaken = app.add_subcommand("weaken", "Check the Weakening rule for one judgment and attribution");
    weaken->add_option("--graph", weaken_graph, "Causal graph (.cg)")->required()->check(CLI::ExistingFile);
    weaken->add_option("--judgment", weaken_judgment, "Judgment file (.jdg)")->required()->check(CLI::ExistingFile);
    weaken->add_option("--attr", weaken_attr, "New attribution, Var=value")->required();
    add_common(weaken, common, true);

    FairnessArgs if_args;
    std::string if_protected;
    auto* ifc = app.add_subcommand("if", "Individual fairness for one protected attribute");
    add_fairness(ifc, if_args);
    ifc->add_option("--protected", if_protected, "Protected attribute")->required();
    add_common(ifc, common, true);

    FairnessArgs ix_args;
    auto* intersect = app.add_subcommand("intersect", "Intersectional fairness over a set of protected attributes");
    add_fairness(intersect, ix_args);
    intersect->add_option("--protected", ix_args.protected_attrs, "Protected attributes, A,B,...")
        ->required()
        ->delimiter(',');
    add_common(intersect, common, true);

    fg_sweep_options sweep;
    fg_sweep_options_default(&sweep);
    std::size_t exhaustive = sweep.exhaustive_max_nodes;
    auto* oracle = app.add_subcommand("oracle", "Compare the rule closure with path-based d-separation");
    oracle->add_option("--trials", sweep.random_trials, "Random graphs to test");
    oracle->add_option("--max-nodes", sweep.random_max_nodes, "Largest graph size")->check(CLI::Range(2, 64));
    oracle->add_option("--exhaustive", exhaustive, "Largest exhaustively enumerated size")->check(CLI::Range(0, 6));
    oracle->add_option("--seed", sweep.seed, "Random seed");
    oracle->add_option("--threads", sweep.threads, "Worker threads, 0 for all cores");
    add_common(oracle, common, true);

    auto* demo = app.add_subcommand("demo-table1", "Rebuild the 680-row training set and test intersectionality");
    add_common(demo, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    try {
        char* report = nullptr;
        int pass = 0;
        if (*paths) {
            Graph g = load_graph(paths_graph);
            ClosureHandle c = load_closure(g.get(), common);
            check(fg_closure_report(c.get(), common.output(), &report), "paths");
            return emit(report, 1);
        }
        if (*weaken) {
            Graph g = load_graph(weaken_graph);
            std::string text = read_file(weaken_judgment);
            fg_judgment* j = nullptr;
            check(fg_judgment_parse(text.c_str(), g.get(), &j), weaken_judgment);
            JudgmentHandle judgment(j);
            ClosureHandle c = load_closure(g.get(), common);
            check(fg_weaken(c.get(), judgment.get(), weaken_attr.c_str(), common.output(), &pass, &report, nullptr),
                  "weaken");
            return emit(report, pass);
        }
        if (*ifc) {
            FairnessInputs in = load_fairness(if_args, common);
            check(fg_check_if(in.closure.get(), in.dataset.get(), in.context.get(), if_args.target.c_str(),
                              if_protected.c_str(), if_args.epsilon.c_str(), in.mode, common.output(), &pass,
                              &report),
                  "if");
            return emit(report, pass);
        }
        if (*intersect) {
            FairnessInputs in = load_fairness(ix_args, common);
            std::vector<const char*> attrs;
            for (const auto& a : ix_args.protected_attrs) attrs.push_back(a.c_str());
            check(fg_check_intersect(in.closure.get(), in.dataset.get(), in.context.get(), ix_args.target.c_str(),
                                     attrs.data(), attrs.size(), ix_args.epsilon.c_str(), in.mode,
                                     common.output(), &pass, &report),
                  "intersect");
            return emit(report, pass);
        }
        if (*oracle) {
            sweep.exhaustive_max_nodes = std::min(exhaustive, sweep.random_max_nodes);
            sweep.fact_budget = common.budget();
            check(fg_oracle_sweep(&sweep, common.output(), &pass, &report), "oracle");
            return emit(report, pass);
        }
        if (*demo) {
            check(fg_demo_table1(common.output(), &pass, &report), "demo-table1");
            return emit(report, pass);
        }
    } catch (const InputError& e) {
        std::cerr << "fairgate: " << e.message << "\n";
        return kInputError;
    } catch (const StatusError& e) {
        std::cerr << "fairgate: " << fg_status_name(e.status) << ": " << e.message << "\n";
        return exit_code(e.status);
    }
    return kInputError;
}
