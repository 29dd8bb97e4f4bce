#include "fairgate/weakening.hpp"

#include <algorithm>
#include <set>

namespace fairgate {

std::string_view to_string(Condition c) noexcept {
    return c == Condition::Condition1 ? "Condition1" : "Condition2";
}

BlockingReason blocking_reason(const PathFact& fact, NodeSet conditioning) {
    if (NodeSet hit = fact.noncolliders & conditioning; !hit.empty()) {
        return {BlockingReason::Kind::ConditionedNoncollider, hit};
    }
    for (NodeSet s : fact.collider_sets) {
        if (!s.empty() && !s.intersects(conditioning)) return {BlockingReason::Kind::UnconditionedColliderSet, s};
    }
    return {};
}

Condition1Result check_condition1(const CausalGraph& g, std::string_view a, std::string_view t) {
    NodeId ia = g.id(a);
    NodeId it = g.id(t);
    if (ia == it) throw Error(ErrorCode::InvalidArgument, "Condition1 needs two distinct variables");
    if (g.has_edge(ia, it)) return {false, Edge{g.name(ia), g.name(it)}};
    if (g.has_edge(it, ia)) return {false, Edge{g.name(it), g.name(ia)}};
    return {};
}

Condition2Result check_condition2(const Closure& closure, NodeId a, NodeId t, NodeSet context_vars) {
    if (a == t) throw Error(ErrorCode::InvalidArgument, "Condition2 needs two distinct variables");
    Condition2Result out;
    for (std::size_t i : closure.facts_between(a, t)) {
        const PathFact& f = closure.paths()[i];
        FactCheck check{f.left() == a ? f : f.reversed(), i, blocking_reason(f, context_vars)};
        out.facts.push_back(std::move(check));
    }
    std::stable_sort(out.facts.begin(), out.facts.end(), [](const FactCheck& l, const FactCheck& r) {
        return compare_facts(l.fact, r.fact) < 0;
    });
    for (std::size_t k = 0; k < out.facts.size(); ++k) {
        if (!out.facts[k].blocked()) {
            out.holds = false;
            out.witness = k;
            break;
        }
    }
    return out;
}

namespace {

std::vector<std::size_t> derivations(const Closure& closure, const std::vector<FactCheck>& facts) {
    std::set<std::size_t> used;
    std::vector<std::size_t> stack;
    for (const auto& f : facts) stack.push_back(closure.derivation_of(f.closure_index));
    while (!stack.empty()) {
        std::size_t k = stack.back();
        stack.pop_back();
        if (!used.insert(k).second) continue;
        for (const auto& p : closure.trace()[k].premises) {
            if (p.kind == FactRef::Kind::Path) stack.push_back(closure.derivation_of(p.index));
            else if (p.kind == FactRef::Kind::Mediate) stack.push_back(closure.mediate_derivation_of(p.index));
        }
    }
    return {used.begin(), used.end()};
}

}  // namespace

Verdict check_admissibility(const CausalGraph& g, const Closure& closure,
                            const std::vector<std::string>& context_vars, std::string_view target,
                            std::string_view variable) {
    NodeId t = g.id(target);
    NodeId a = g.id(variable);
    NodeSet ctx = to_node_set(g, context_vars);
    if (a == t) {
        throw Error(ErrorCode::WeakeningTargetIsGoal,
                    "weakening variable '" + std::string(variable) + "' is the target");
    }
    if (ctx.contains(a)) {
        throw Error(ErrorCode::VariableAlreadyInContext,
                    "variable '" + std::string(variable) + "' is already in the context");
    }
    if (ctx.contains(t)) {
        throw Error(ErrorCode::DuplicateVariable, "target '" + std::string(target) + "' occurs in the context");
    }

    Verdict v;
    v.variable = std::string(variable);
    v.target = std::string(target);
    v.context_vars = to_names(g, ctx);

    Condition1Result c1 = check_condition1(g, variable, target);
    Condition2Result c2 = check_condition2(closure, a, t, ctx);
    v.facts = std::move(c2.facts);
    v.trace = derivations(closure, v.facts);
    if (!c1.holds) {
        v.failed_condition = Condition::Condition1;
        v.witness_edge = c1.witness;
    } else if (!c2.holds) {
        v.failed_condition = Condition::Condition2;
        v.witness_fact = v.facts[*c2.witness];
    }
    v.admissible = !v.failed_condition;
    return v;
}

Verdict check_weakening(const CausalGraph& g, const Closure& closure, const Judgment& j,
                        const Attribution& new_attr) {
    g.id(j.target);
    for (const auto& a : j.context.items()) g.id(a.variable);
    g.id(new_attr.variable);
    if (new_attr.variable == j.target) {
        throw Error(ErrorCode::WeakeningTargetIsGoal,
                    "cannot weaken by the target variable '" + j.target + "'");
    }
    if (j.context.contains(new_attr.variable)) {
        throw Error(ErrorCode::VariableAlreadyInContext,
                    "variable '" + new_attr.variable + "' is already in the context");
    }
    return check_admissibility(g, closure, j.context.variables(), j.target, new_attr.variable);
}

Judgment apply_weakening(const Judgment& j, const Attribution& new_attr, const Verdict& v) {
    if (v.variable != new_attr.variable || v.target != j.target || v.context_vars != j.context.variables()) {
        throw Error(ErrorCode::InvalidArgument, "verdict was produced for a different weakening");
    }
    if (!v.admissible) {
        throw Error(ErrorCode::InadmissibleWeakening,
                    "weakening by '" + new_attr.variable + "' is not admissible (" +
                        std::string(to_string(*v.failed_condition)) + ")");
    }
    Judgment out = j;
    out.context.add(new_attr);
    return out;
}

}  // namespace fairgate
