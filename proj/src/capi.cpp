#include "fairgate/fairgate.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>

#include "fairgate/report.hpp"

struct fg_graph {
    std::shared_ptr<const fairgate::CausalGraph> graph;
};

struct fg_closure {
    std::shared_ptr<const fairgate::CausalGraph> graph;
    fairgate::Closure closure;
};

struct fg_judgment {
    fairgate::Judgment judgment;
};

struct fg_context {
    fairgate::Context context;
};

struct fg_dataset {
    fairgate::Dataset dataset;
};

namespace {

using namespace fairgate;

thread_local std::string g_last_error;

fg_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::CycleDetected: return FG_ERR_CYCLE_DETECTED;
        case ErrorCode::DuplicateEdge: return FG_ERR_DUPLICATE_EDGE;
        case ErrorCode::SelfLoop: return FG_ERR_SELF_LOOP;
        case ErrorCode::MalformedName: return FG_ERR_MALFORMED_NAME;
        case ErrorCode::UnknownVariable: return FG_ERR_UNKNOWN_VARIABLE;
        case ErrorCode::SyntaxError: return FG_ERR_SYNTAX;
        case ErrorCode::DuplicateVariable: return FG_ERR_DUPLICATE_VARIABLE;
        case ErrorCode::ProbabilityOutOfRange: return FG_ERR_PROBABILITY_OUT_OF_RANGE;
        case ErrorCode::ResourceLimit: return FG_ERR_RESOURCE_LIMIT;
        case ErrorCode::VariableAlreadyInContext: return FG_ERR_VARIABLE_ALREADY_IN_CONTEXT;
        case ErrorCode::WeakeningTargetIsGoal: return FG_ERR_WEAKENING_TARGET_IS_GOAL;
        case ErrorCode::InadmissibleWeakening: return FG_ERR_INADMISSIBLE_WEAKENING;
        case ErrorCode::EmptyConditioningSet: return FG_ERR_EMPTY_CONDITIONING_SET;
        case ErrorCode::UnknownColumn: return FG_ERR_UNKNOWN_COLUMN;
        case ErrorCode::MalformedDataset: return FG_ERR_MALFORMED_DATASET;
        case ErrorCode::SubsetExplosion: return FG_ERR_SUBSET_EXPLOSION;
        case ErrorCode::InvalidArgument: return FG_ERR_INVALID_ARGUMENT;
    }
    return FG_ERR_INTERNAL;
}

fg_status fail(fg_status s, const std::string& message) {
    g_last_error = message;
    return s;
}

template <typename F>
fg_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return FG_OK;
    } catch (const Error& e) {
        return fail(status_of(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(FG_ERR_RESOURCE_LIMIT, "out of memory");
    } catch (const std::exception& e) {
        return fail(FG_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FG_ERR_INTERNAL, "unknown error");
    }
}

void require(const void* p, const char* what) {
    if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

Format format_of(fg_format f) {
    switch (f) {
        case FG_FORMAT_JSON: return Format::Json;
        case FG_FORMAT_TEXT: return Format::Text;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown output format");
}

Mode mode_of(fg_mode m) {
    switch (m) {
        case FG_MODE_GRAPHICAL: return Mode::Graphical;
        case FG_MODE_EMPIRICAL: return Mode::Empirical;
        case FG_MODE_BOTH: return Mode::Both;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown check mode");
}

Rational epsilon_of(const char* text) {
    if (!text) return Rational(0);
    try {
        return parse_rational(text);
    } catch (const SyntaxError&) {
        throw Error(ErrorCode::InvalidArgument, "epsilon '" + std::string(text) + "' is not a decimal or m/n");
    }
}

FairnessInputs inputs_of(const fg_closure* c, const fg_dataset* d, Mode mode) {
    FairnessInputs in;
    if (mode != Mode::Empirical) {
        require(c, "closure");
        in.graph = c->graph.get();
        in.closure = &c->closure;
    }
    if (mode != Mode::Graphical) {
        require(d, "dataset");
        in.dataset = &d->dataset;
    }
    return in;
}

}  // namespace

extern "C" {

const char* fg_version(void) { return "0.1.0"; }

const char* fg_status_name(fg_status status) {
    switch (status) {
        case FG_OK: return "Ok";
        case FG_ERR_CYCLE_DETECTED: return "CycleDetected";
        case FG_ERR_DUPLICATE_EDGE: return "DuplicateEdge";
        case FG_ERR_SELF_LOOP: return "SelfLoop";
        case FG_ERR_MALFORMED_NAME: return "MalformedName";
        case FG_ERR_UNKNOWN_VARIABLE: return "UnknownVariable";
        case FG_ERR_SYNTAX: return "SyntaxError";
        case FG_ERR_DUPLICATE_VARIABLE: return "DuplicateVariable";
        case FG_ERR_PROBABILITY_OUT_OF_RANGE: return "ProbabilityOutOfRange";
        case FG_ERR_RESOURCE_LIMIT: return "ResourceLimit";
        case FG_ERR_VARIABLE_ALREADY_IN_CONTEXT: return "VariableAlreadyInContext";
        case FG_ERR_WEAKENING_TARGET_IS_GOAL: return "WeakeningTargetIsGoal";
        case FG_ERR_INADMISSIBLE_WEAKENING: return "InadmissibleWeakening";
        case FG_ERR_EMPTY_CONDITIONING_SET: return "EmptyConditioningSet";
        case FG_ERR_UNKNOWN_COLUMN: return "UnknownColumn";
        case FG_ERR_MALFORMED_DATASET: return "MalformedDataset";
        case FG_ERR_SUBSET_EXPLOSION: return "SubsetExplosion";
        case FG_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case FG_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* fg_last_error(void) { return g_last_error.c_str(); }

void fg_string_free(char* s) { std::free(s); }

fg_status fg_graph_parse(const char* text, fg_graph** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        auto g = std::make_shared<const CausalGraph>(parse_graph(text));
        *out = new fg_graph{std::move(g)};
    });
}

fg_status fg_graph_build(const char* const* nodes, size_t node_count, const char* const* causes,
                         const char* const* effects, size_t edge_count, fg_graph** out) {
    return guarded([&] {
        require(out, "out");
        std::vector<std::string> ns;
        for (size_t i = 0; i < node_count; ++i) {
            require(nodes[i], "node name");
            ns.emplace_back(nodes[i]);
        }
        std::vector<Edge> es;
        for (size_t i = 0; i < edge_count; ++i) {
            require(causes[i], "edge cause");
            require(effects[i], "edge effect");
            es.push_back({causes[i], effects[i]});
        }
        *out = new fg_graph{std::make_shared<const CausalGraph>(build_graph(ns, es))};
    });
}

void fg_graph_free(fg_graph* g) { delete g; }

size_t fg_graph_node_count(const fg_graph* g) { return g ? g->graph->size() : 0; }

size_t fg_graph_edge_count(const fg_graph* g) { return g ? g->graph->edge_count() : 0; }

fg_status fg_graph_serialize(const fg_graph* g, char** out) {
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        *out = copy_string(serialize_graph(*g->graph));
    });
}

fg_status fg_graph_is_immediate_cause(const fg_graph* g, const char* x, const char* y, int* out) {
    return guarded([&] {
        require(g, "graph");
        require(x, "x");
        require(y, "y");
        require(out, "out");
        *out = is_immediate_cause(*g->graph, x, y) ? 1 : 0;
    });
}

fg_status fg_graph_descendants(const fg_graph* g, const char* x, char** out) {
    return guarded([&] {
        require(g, "graph");
        require(x, "x");
        require(out, "out");
        std::string text;
        for (const auto& d : descendants(*g->graph, x)) text += d + "\n";
        *out = copy_string(text);
    });
}

fg_status fg_closure_compute(const fg_graph* g, size_t fact_budget, fg_closure** out) {
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        ClosureOptions opts;
        if (fact_budget) opts.fact_budget = fact_budget;
        *out = new fg_closure{g->graph, close(*g->graph, opts)};
    });
}

void fg_closure_free(fg_closure* c) { delete c; }

size_t fg_closure_fact_count(const fg_closure* c) { return c ? c->closure.fact_count() : 0; }

fg_status fg_closure_report(const fg_closure* c, fg_format format, char** out) {
    return guarded([&] {
        require(c, "closure");
        require(out, "out");
        *out = copy_string(render_closure(*c->graph, c->closure, format_of(format)));
    });
}

fg_status fg_closure_rerun(const fg_closure* c, size_t* missing) {
    return guarded([&] {
        require(c, "closure");
        require(missing, "missing");
        *missing = rerun_rules(*c->graph, c->closure);
    });
}

fg_status fg_independent(const fg_closure* c, const char* x, const char* y, const char* const* conditioning,
                         size_t conditioning_count, int* by_rules, int* by_oracle) {
    return guarded([&] {
        require(c, "closure");
        require(x, "x");
        require(y, "y");
        std::vector<std::string> cond;
        for (size_t i = 0; i < conditioning_count; ++i) {
            require(conditioning[i], "conditioning variable");
            cond.emplace_back(conditioning[i]);
        }
        if (by_rules) *by_rules = independent_by_rules(c->closure, *c->graph, x, y, cond) ? 1 : 0;
        if (by_oracle) *by_oracle = dsep_oracle(*c->graph, x, y, cond) ? 1 : 0;
    });
}

fg_status fg_judgment_parse(const char* text, const fg_graph* g, fg_judgment** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new fg_judgment{parse_judgment(text, g ? g->graph.get() : nullptr)};
    });
}

void fg_judgment_free(fg_judgment* j) { delete j; }

fg_status fg_judgment_serialize(const fg_judgment* j, char** out) {
    return guarded([&] {
        require(j, "judgment");
        require(out, "out");
        *out = copy_string(serialize_judgment(j->judgment));
    });
}

fg_status fg_judgment_probability(const fg_judgment* j, char** out) {
    return guarded([&] {
        require(j, "judgment");
        require(out, "out");
        *out = copy_string(format_rational(j->judgment.probability));
    });
}

fg_status fg_context_parse(const char* text, const fg_graph* g, fg_context** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new fg_context{parse_context(text, g ? g->graph.get() : nullptr)};
    });
}

void fg_context_free(fg_context* ctx) { delete ctx; }

fg_status fg_context_serialize(const fg_context* ctx, char** out) {
    return guarded([&] {
        require(ctx, "context");
        require(out, "out");
        *out = copy_string(serialize_context(ctx->context));
    });
}

fg_status fg_dataset_parse_csv(const char* text, const char* target, fg_dataset** out) {
    return guarded([&] {
        require(text, "text");
        require(target, "target");
        require(out, "out");
        *out = new fg_dataset{parse_csv(text, target)};
    });
}

fg_status fg_dataset_table1(fg_dataset** out) {
    return guarded([&] {
        require(out, "out");
        *out = new fg_dataset{generate_table1()};
    });
}

void fg_dataset_free(fg_dataset* d) { delete d; }

size_t fg_dataset_row_count(const fg_dataset* d) { return d ? d->dataset.rows().size() : 0; }

fg_status fg_empirical_probability(const fg_dataset* d, const fg_context* ctx, const char* outcome, char** out) {
    return guarded([&] {
        require(d, "dataset");
        require(outcome, "outcome");
        require(out, "out");
        Context empty;
        *out = copy_string(format_rational(
            empirical_probability(d->dataset, ctx ? ctx->context : empty, Value::atomic(outcome))));
    });
}

fg_status fg_weaken(const fg_closure* c, const fg_judgment* j, const char* attribution, fg_format format,
                    int* admissible, char** report, fg_judgment** weakened) {
    return guarded([&] {
        require(c, "closure");
        require(j, "judgment");
        require(attribution, "attribution");
        Format fmt = format_of(format);
        Attribution attr = parse_attribution(attribution, c->graph.get());
        Verdict v = check_weakening(*c->graph, c->closure, j->judgment, attr);
        WeakenOutcome w{j->judgment, attr, v, std::nullopt};
        if (v.admissible) w.conclusion = apply_weakening(j->judgment, attr, v);
        if (report) *report = copy_string(render_weaken(*c->graph, c->closure, w, fmt));
        if (admissible) *admissible = v.admissible ? 1 : 0;
        if (weakened) *weakened = w.conclusion ? new fg_judgment{*w.conclusion} : nullptr;
    });
}

fg_status fg_check_if(const fg_closure* c, const fg_dataset* d, const fg_context* ctx, const char* target,
                      const char* protected_attr, const char* epsilon, fg_mode mode, fg_format format, int* pass,
                      char** report) {
    return guarded([&] {
        require(target, "target");
        require(protected_attr, "protected attribute");
        Mode m = mode_of(mode);
        Format fmt = format_of(format);
        FairnessInputs in = inputs_of(c, d, m);
        IfRequest req{m, target, ctx ? ctx->context : Context{}, epsilon_of(epsilon)};
        IfEntry e = check_if(in, req.context, req.target, protected_attr, req.epsilon, m);
        if (report) *report = copy_string(render_if(in.graph, in.closure, req, e, fmt));
        if (pass) *pass = e.pass ? 1 : 0;
    });
}

fg_status fg_check_intersect(const fg_closure* c, const fg_dataset* d, const fg_context* ctx, const char* target,
                             const char* const* protected_attrs, size_t protected_count, const char* epsilon,
                             fg_mode mode, fg_format format, int* pass, char** report) {
    return guarded([&] {
        require(target, "target");
        Mode m = mode_of(mode);
        Format fmt = format_of(format);
        FairnessInputs in = inputs_of(c, d, m);
        std::vector<std::string> attrs;
        for (size_t i = 0; i < protected_count; ++i) {
            require(protected_attrs[i], "protected attribute");
            attrs.emplace_back(protected_attrs[i]);
        }
        FairnessReport r = check_intersectionality(in, ctx ? ctx->context : Context{}, target, attrs,
                                                   epsilon_of(epsilon), m);
        if (report) *report = copy_string(render_intersect(in.graph, in.closure, r, fmt));
        if (pass) *pass = r.pass ? 1 : 0;
    });
}

void fg_sweep_options_default(fg_sweep_options* options) {
    if (!options) return;
    SweepOptions d;
    options->exhaustive_max_nodes = d.exhaustive_max_nodes;
    options->random_trials = d.random_trials;
    options->random_max_nodes = d.random_max_nodes;
    options->seed = d.seed;
    options->fact_budget = d.fact_budget;
    options->threads = d.threads;
}

fg_status fg_oracle_sweep(const fg_sweep_options* options, fg_format format, int* pass, char** report) {
    return guarded([&] {
        require(options, "options");
        Format fmt = format_of(format);
        SweepOptions o;
        o.exhaustive_max_nodes = options->exhaustive_max_nodes;
        o.random_trials = options->random_trials;
        o.random_max_nodes = options->random_max_nodes;
        o.seed = options->seed;
        if (options->fact_budget) o.fact_budget = options->fact_budget;
        o.threads = options->threads;
        SweepReport r = run_oracle_sweep(o);
        if (report) *report = copy_string(render_sweep(o, r, fmt));
        if (pass) *pass = r.passed() ? 1 : 0;
    });
}

fg_status fg_demo_table1(fg_format format, int* pass, char** report) {
    return guarded([&] {
        Format fmt = format_of(format);
        Table1Demo demo = run_table1_demo();
        if (report) *report = copy_string(render_table1(demo, fmt));
        if (pass) *pass = demo.reproduced && demo.observation.pass ? 1 : 0;
    });
}

}  // extern "C"
