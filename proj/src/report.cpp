#include "fairgate/report.hpp"

#include <sstream>

namespace fairgate {

namespace {

Json name_list(const std::vector<std::string>& names) {
    Json out = Json::array();
    for (const auto& n : names) out.push_back(n);
    return out;
}

Json set_json(const CausalGraph& g, NodeSet s) { return name_list(to_names(g, s)); }

Json path_json(const CausalGraph& g, const std::vector<NodeId>& path) {
    Json out = Json::array();
    for (NodeId v : path) out.push_back(g.name(v));
    return out;
}

Json family_json(const CausalGraph& g, const PathFact& f) {
    Json out = Json::array();
    for (NodeSet s : f.collider_family()) out.push_back(set_json(g, s));
    return out;
}

std::string braces(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    return out + "}";
}

std::string path_text(const CausalGraph& g, const std::vector<NodeId>& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += " - ";
        out += g.name(path[i]);
    }
    return out;
}

std::string rational(const Rational& r) { return format_rational(r); }

Json blocked_by_json(const CausalGraph& g, const BlockingReason& r) {
    switch (r.kind) {
        case BlockingReason::Kind::ConditionedNoncollider:
            return Json{{"reason", "conditionedNoncollider"}, {"nodes", set_json(g, r.nodes)}};
        case BlockingReason::Kind::UnconditionedColliderSet:
            return Json{{"reason", "unconditionedColliderSet"}, {"nodes", set_json(g, r.nodes)}};
        case BlockingReason::Kind::Unblocked: break;
    }
    return nullptr;
}

std::string blocked_by_text(const CausalGraph& g, const BlockingReason& r) {
    switch (r.kind) {
        case BlockingReason::Kind::ConditionedNoncollider:
            return "blocked: non-collider " + braces(to_names(g, r.nodes)) + " is in the context";
        case BlockingReason::Kind::UnconditionedColliderSet:
            return "blocked: collider set " + braces(to_names(g, r.nodes)) + " misses the context";
        case BlockingReason::Kind::Unblocked: break;
    }
    return "unblocked";
}

Json fact_check_json(const CausalGraph& g, const FactCheck& c) {
    Json out;
    out["endpoints"] = Json::array({g.name(c.fact.left()), g.name(c.fact.right())});
    out["M"] = set_json(g, c.fact.noncolliders);
    out["N"] = family_json(g, c.fact);
    out["path"] = path_json(g, c.fact.path);
    out["blockedBy"] = blocked_by_json(g, c.reason);
    return out;
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string pass_fail(bool b) { return b ? "PASS" : "FAIL"; }

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string describe(const CausalGraph& g, const PathFact& fact) {
    std::string n = "{";
    auto family = fact.collider_family();
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (i) n += ',';
        n += braces(to_names(g, family[i]));
    }
    n += "}";
    return g.name(fact.left()) + " \xE2\x97\x87^" + braces(to_names(g, fact.noncolliders)) + "_" + n + " " +
           g.name(fact.right());
}

std::string describe(const CausalGraph& g, const MediateCauseFact& fact) {
    return g.name(fact.source) + " \xE2\x96\xB7^" + braces(to_names(g, fact.intermediates)) + " " +
           g.name(fact.target);
}

std::string describe(const CausalGraph& g, const Closure& closure, const FactRef& ref) {
    switch (ref.kind) {
        case FactRef::Kind::Edge: return g.name(ref.cause) + " -> " + g.name(ref.effect);
        case FactRef::Kind::Mediate: return describe(g, closure.mediate().at(ref.index));
        case FactRef::Kind::Path: return describe(g, closure.paths().at(ref.index));
    }
    return {};
}

namespace {

Json trace_entry_json(const CausalGraph& g, const Closure& closure, std::size_t index) {
    const TraceEntry& t = closure.trace().at(index);
    Json premises = Json::array();
    for (const auto& p : t.premises) premises.push_back(describe(g, closure, p));
    return Json{{"index", index},
                {"rule", std::string(to_string(t.rule))},
                {"premises", std::move(premises)},
                {"conclusion", describe(g, closure, t.conclusion)}};
}

}  // namespace

Json closure_json(const CausalGraph& g, const Closure& closure) {
    Json out;
    out["command"] = "paths";
    out["nodes"] = name_list(g.names());
    Json edges = Json::array();
    for (const auto& e : g.edges()) edges.push_back(Json{{"cause", e.cause}, {"effect", e.effect}});
    out["edges"] = std::move(edges);
    out["factCount"] = closure.fact_count();
    Json mediate = Json::array();
    for (const auto& m : closure.mediate()) {
        mediate.push_back(Json{{"source", g.name(m.source)},
                               {"target", g.name(m.target)},
                               {"intermediates", set_json(g, m.intermediates)}});
    }
    out["mediate"] = std::move(mediate);
    Json paths = Json::array();
    for (const auto& p : closure.paths()) {
        paths.push_back(Json{{"left", g.name(p.left())},
                             {"right", g.name(p.right())},
                             {"M", set_json(g, p.noncolliders)},
                             {"N", family_json(g, p)},
                             {"path", path_json(g, p.path)}});
    }
    out["paths"] = std::move(paths);
    Json trace = Json::array();
    for (std::size_t i = 0; i < closure.trace().size(); ++i) trace.push_back(trace_entry_json(g, closure, i));
    out["trace"] = std::move(trace);
    return out;
}

std::string render_closure(const CausalGraph& g, const Closure& closure, Format format) {
    if (format == Format::Json) return dump(closure_json(g, closure));
    std::ostringstream os;
    os << "graph: " << g.size() << " nodes, " << g.edge_count() << " edges\n";
    os << "mediate causes (" << closure.mediate().size() << "):\n";
    for (const auto& m : closure.mediate()) os << "  " << describe(g, m) << "\n";
    os << "paths (" << closure.paths().size() << "):\n";
    for (const auto& p : closure.paths()) os << "  " << describe(g, p) << "    via " << path_text(g, p.path) << "\n";
    return os.str();
}

Json verdict_json(const CausalGraph& g, const Closure& closure, const Verdict& v) {
    Json out;
    out["variable"] = v.variable;
    out["target"] = v.target;
    out["context"] = name_list(v.context_vars);
    out["admissible"] = v.admissible;
    out["failedCondition"] = v.failed_condition ? Json(std::string(to_string(*v.failed_condition))) : Json(nullptr);
    if (v.witness_edge) {
        out["witness"] = Json{{"kind", "edge"}, {"cause", v.witness_edge->cause}, {"effect", v.witness_edge->effect}};
    } else if (v.witness_fact) {
        Json w{{"kind", "path"}};
        w.update(fact_check_json(g, *v.witness_fact));
        out["witness"] = std::move(w);
    } else {
        out["witness"] = nullptr;
    }
    Json facts = Json::array();
    for (const auto& f : v.facts) facts.push_back(fact_check_json(g, f));
    out["facts"] = std::move(facts);
    Json trace = Json::array();
    for (std::size_t i : v.trace) trace.push_back(trace_entry_json(g, closure, i));
    out["ruleTrace"] = std::move(trace);
    return out;
}

namespace {

void verdict_text(std::ostream& os, const CausalGraph& g, const Verdict& v, const std::string& indent) {
    os << indent << "weakening by " << v.variable << " toward " << v.target << " given " << braces(v.context_vars)
       << ": " << (v.admissible ? "admissible" : "inadmissible") << "\n";
    if (v.failed_condition) os << indent << "failed: " << to_string(*v.failed_condition) << "\n";
    if (v.witness_edge) os << indent << "witness: " << v.witness_edge->cause << " -> " << v.witness_edge->effect << "\n";
    if (v.witness_fact) {
        os << indent << "witness: " << describe(g, v.witness_fact->fact) << " via "
           << path_text(g, v.witness_fact->fact.path) << "\n";
    }
    if (!v.facts.empty()) os << indent << "facts:\n";
    for (const auto& f : v.facts) {
        os << indent << "  " << describe(g, f.fact) << "  " << blocked_by_text(g, f.reason) << "\n";
    }
}

}  // namespace

Json weaken_json(const CausalGraph& g, const Closure& closure, const WeakenOutcome& w) {
    Json out;
    out["command"] = "weaken";
    out["premise"] = serialize_judgment(w.premise);
    out["attribution"] = w.attribution.variable + "=" + to_string(w.attribution.value);
    out["verdict"] = verdict_json(g, closure, w.verdict);
    out["conclusion"] = w.conclusion ? Json(serialize_judgment(*w.conclusion)) : Json(nullptr);
    return out;
}

std::string render_weaken(const CausalGraph& g, const Closure& closure, const WeakenOutcome& w, Format format) {
    if (format == Format::Json) return dump(weaken_json(g, closure, w));
    std::ostringstream os;
    os << "premise:    " << serialize_judgment(w.premise) << "\n";
    os << "attribution: " << w.attribution.variable << "=" << to_string(w.attribution.value) << "\n";
    verdict_text(os, g, w.verdict, "");
    if (w.conclusion) os << "conclusion: " << serialize_judgment(*w.conclusion) << "\n";
    return os.str();
}

Json ci_json(const CiResult& r) {
    Json out;
    out["conditioningRows"] = r.conditioning_rows;
    out["independent"] = r.independent;
    out["epsilon"] = rational(r.epsilon);
    out["maxDelta"] = rational(r.max_delta);
    if (r.witness) {
        out["witness"] = Json{{"alpha", r.witness->alpha},
                              {"beta", r.witness->beta},
                              {"conditioned", rational(r.witness->conditioned)},
                              {"marginal", rational(r.witness->marginal)}};
    } else {
        out["witness"] = nullptr;
    }
    out["maxPairwiseDelta"] = rational(r.max_pairwise_delta);
    if (r.pairwise_witness) {
        const auto& p = *r.pairwise_witness;
        out["pairwiseWitness"] = Json{{"alphaHigh", p.alpha_high},
                                      {"alphaLow", p.alpha_low},
                                      {"beta", p.beta},
                                      {"high", rational(p.high)},
                                      {"low", rational(p.low)}};
    } else {
        out["pairwiseWitness"] = nullptr;
    }
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        cells.push_back(Json{{"alpha", c.alpha},
                             {"beta", c.beta},
                             {"rows", c.rows},
                             {"matches", c.matches},
                             {"probability", rational(c.probability)}});
    }
    out["cells"] = std::move(cells);
    return out;
}

Json if_entry_json(const CausalGraph* g, const Closure* closure, const IfEntry& e) {
    Json out;
    out["attribute"] = e.attribute;
    out["merged"] = name_list(e.merged);
    if (e.verdict && g && closure) {
        out["graphical"] = Json{{"pass", *e.graphical_pass}, {"verdict", verdict_json(*g, *closure, *e.verdict)}};
    } else {
        out["graphical"] = nullptr;
    }
    if (e.empirical_pass) {
        Json checks = Json::array();
        for (const auto& c : e.empirical) {
            Json item{{"conditioning", serialize_context(c.conditioning)}};
            item.update(ci_json(c.result));
            checks.push_back(std::move(item));
        }
        out["empirical"] = Json{{"pass", *e.empirical_pass}, {"checks", std::move(checks)}};
        out["maxDelta"] = rational(e.max_delta);
    } else {
        out["empirical"] = nullptr;
        out["maxDelta"] = nullptr;
    }
    out["pass"] = e.pass;
    out["agreement"] = optional_bool(e.agreement);
    return out;
}

namespace {

void ci_text(std::ostream& os, const std::string& attribute, const EmpiricalCheck& c, const std::string& indent) {
    const CiResult& r = c.result;
    os << indent << "given {" << serialize_context(c.conditioning) << "} (" << r.conditioning_rows
       << " rows): " << (r.independent ? "independent" : "dependent") << ", max delta " << rational(r.max_delta)
       << " (epsilon " << rational(r.epsilon) << ")\n";
    if (r.witness && !r.independent) {
        os << indent << "  witness: P(" << r.witness->beta << " | " << attribute << "=" << r.witness->alpha
           << ") = " << rational(r.witness->conditioned) << " vs " << rational(r.witness->marginal) << "\n";
    }
    if (r.pairwise_witness && r.max_pairwise_delta != 0) {
        const auto& p = *r.pairwise_witness;
        os << indent << "  widest gap: " << p.alpha_high << " " << rational(p.high) << " vs " << p.alpha_low << " "
           << rational(p.low) << " for " << p.beta << "\n";
    }
    for (const auto& cell : r.cells) {
        os << indent << "  " << cell.alpha << " -> " << cell.beta << ": " << cell.matches << "/" << cell.rows << " = "
           << rational(cell.probability) << "\n";
    }
}

void entry_text(std::ostream& os, const CausalGraph* g, const Closure* closure, const IfEntry& e,
                const std::string& indent) {
    os << indent << e.attribute;
    if (!e.merged.empty()) os << " given " << braces(e.merged);
    os << ": " << pass_fail(e.pass);
    if (e.agreement) os << " (modes " << (*e.agreement ? "agree" : "disagree") << ")";
    os << "\n";
    if (e.verdict && g && closure) verdict_text(os, *g, *e.verdict, indent + "  ");
    for (const auto& c : e.empirical) ci_text(os, e.attribute, c, indent + "  ");
}

Json fairness_json(const CausalGraph* g, const Closure* closure, const FairnessReport& r) {
    Json out;
    out["command"] = "intersect";
    out["mode"] = std::string(to_string(r.mode));
    out["target"] = r.target;
    out["context"] = serialize_context(r.context);
    out["protected"] = name_list(r.protected_attrs);
    out["threshold"] = rational(r.threshold);
    out["maxDelta"] = r.mode == Mode::Graphical ? Json(nullptr) : Json(rational(r.max_delta));
    Json subsets = Json::array();
    for (const auto& s : r.subsets) {
        Json entries = Json::array();
        for (const auto& e : s.entries) entries.push_back(if_entry_json(g, closure, e));
        subsets.push_back(Json{{"subset", name_list(s.subset)}, {"pass", s.pass}, {"entries", std::move(entries)}});
    }
    out["subsets"] = std::move(subsets);
    out["pass"] = r.pass;
    out["agreement"] = optional_bool(r.agreement);
    return out;
}

void fairness_text(std::ostream& os, const CausalGraph* g, const Closure* closure, const FairnessReport& r) {
    os << "protected " << braces(r.protected_attrs) << ", target " << r.target << ", context {"
       << serialize_context(r.context) << "}, mode " << to_string(r.mode) << ", epsilon " << rational(r.threshold)
       << "\n";
    for (const auto& s : r.subsets) {
        os << "subset " << braces(s.subset) << ": " << pass_fail(s.pass) << "\n";
        for (const auto& e : s.entries) entry_text(os, g, closure, e, "  ");
    }
    if (r.mode != Mode::Graphical) os << "max delta: " << rational(r.max_delta) << "\n";
    if (r.agreement) os << "modes agree: " << yes_no(*r.agreement) << "\n";
    os << "result: " << pass_fail(r.pass) << "\n";
}

}  // namespace

std::string render_if(const CausalGraph* g, const Closure* closure, const IfRequest& req, const IfEntry& e,
                      Format format) {
    if (format == Format::Json) {
        Json out;
        out["command"] = "if";
        out["mode"] = std::string(to_string(req.mode));
        out["target"] = req.target;
        out["context"] = serialize_context(req.context);
        out["protected"] = e.attribute;
        out["epsilon"] = rational(req.epsilon);
        out["result"] = if_entry_json(g, closure, e);
        out["pass"] = e.pass;
        return dump(out);
    }
    std::ostringstream os;
    os << "target " << req.target << ", context {" << serialize_context(req.context) << "}, mode "
       << to_string(req.mode) << ", epsilon " << rational(req.epsilon) << "\n";
    entry_text(os, g, closure, e, "");
    os << "result: " << pass_fail(e.pass) << "\n";
    return os.str();
}

std::string render_intersect(const CausalGraph* g, const Closure* closure, const FairnessReport& r, Format format) {
    if (format == Format::Json) return dump(fairness_json(g, closure, r));
    std::ostringstream os;
    fairness_text(os, g, closure, r);
    return os.str();
}

Json sweep_json(const SweepOptions& options, const SweepReport& r) {
    Json out;
    out["command"] = "oracle";
    out["exhaustiveMaxNodes"] = options.exhaustive_max_nodes;
    out["exhaustiveGraphs"] = r.exhaustive_graphs;
    out["randomTrials"] = options.random_trials;
    out["randomMaxNodes"] = options.random_max_nodes;
    out["seed"] = options.seed;
    out["randomGraphs"] = r.random_graphs;
    out["triples"] = r.triples;
    out["maxFacts"] = r.max_facts;
    Json ds = Json::array();
    for (const auto& d : r.discrepancies) {
        Json edges = Json::array();
        for (const auto& e : d.edges) edges.push_back(Json{{"cause", e.cause}, {"effect", e.effect}});
        ds.push_back(Json{{"family", d.family},
                          {"instance", d.instance},
                          {"nodes", name_list(d.nodes)},
                          {"edges", std::move(edges)},
                          {"x", d.x},
                          {"y", d.y},
                          {"conditioning", name_list(d.conditioning)},
                          {"rulesIndependent", d.rules_independent},
                          {"oracleIndependent", d.oracle_independent},
                          {"symmetric", d.symmetric}});
    }
    out["discrepancies"] = std::move(ds);
    out["pass"] = r.passed();
    return out;
}

std::string render_sweep(const SweepOptions& options, const SweepReport& r, Format format) {
    if (format == Format::Json) return dump(sweep_json(options, r));
    std::ostringstream os;
    os << "exhaustive: " << r.exhaustive_graphs << " graphs with at most " << options.exhaustive_max_nodes
       << " nodes\n";
    os << "random: " << r.random_graphs << " graphs with at most " << options.random_max_nodes << " nodes, seed "
       << options.seed << "\n";
    os << "triples compared: " << r.triples << ", largest closure: " << r.max_facts << " facts\n";
    for (const auto& d : r.discrepancies) {
        os << "discrepancy: " << d.family << " #" << d.instance << " " << d.x << " vs " << d.y << " given "
           << braces(d.conditioning) << ": rules say " << (d.rules_independent ? "independent" : "dependent")
           << ", oracle says " << (d.oracle_independent ? "independent" : "dependent") << "\n";
    }
    os << "discrepancies: " << r.discrepancies.size() << "\n";
    os << "result: " << pass_fail(r.passed()) << "\n";
    return os.str();
}

std::string render_table1(const Table1Demo& demo, Format format) {
    const bool pass = demo.reproduced && demo.observation.pass;
    if (format == Format::Json) {
        Json out;
        out["command"] = "demo-table1";
        out["rows"] = demo.rows;
        Json cells = Json::array();
        for (const auto& c : demo.cells) {
            cells.push_back(Json{{"a1", c.a1},
                                 {"a2", c.a2},
                                 {"rows", c.rows},
                                 {"beta", c.beta},
                                 {"probability", rational(c.probability)},
                                 {"expected", rational(c.expected)}});
        }
        out["cells"] = std::move(cells);
        Json margins = Json::array();
        for (const auto& m : demo.marginals) {
            margins.push_back(Json{{"attribute", m.attribute},
                                   {"value", m.value},
                                   {"rows", m.rows},
                                   {"beta", m.beta},
                                   {"probability", rational(m.probability)},
                                   {"expected", rational(m.expected)}});
        }
        out["marginals"] = std::move(margins);
        out["reproduced"] = demo.reproduced;
        out["intersectionality"] = fairness_json(nullptr, nullptr, demo.observation);
        out["pass"] = pass;
        return dump(out);
    }
    std::ostringstream os;
    os << "training set: " << demo.rows << " rows\n";
    os << "P(t=\xCE\xB2 | a1, a2):\n";
    for (const auto& c : demo.cells) {
        os << "  " << c.a1 << ", " << c.a2 << ": " << c.beta << "/" << c.rows << " = " << rational(c.probability)
           << " (expected " << rational(c.expected) << ")\n";
    }
    os << "P(t=\xCE\xB2 | one attribute):\n";
    for (const auto& m : demo.marginals) {
        os << "  " << m.attribute << "=" << m.value << ": " << m.beta << "/" << m.rows << " = "
           << rational(m.probability) << " (expected " << rational(m.expected) << ")\n";
    }
    os << "table reproduced: " << yes_no(demo.reproduced) << "\n\n";
    fairness_text(os, nullptr, nullptr, demo.observation);
    return os.str();
}

}  // namespace fairgate
