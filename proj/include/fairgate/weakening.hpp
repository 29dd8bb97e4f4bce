#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairgate/graph.hpp"
#include "fairgate/judgment.hpp"
#include "fairgate/relations.hpp"

namespace fairgate {

enum class Condition { Condition1, Condition2 };

std::string_view to_string(Condition c) noexcept;

struct BlockingReason {
    enum class Kind { ConditionedNoncollider, UnconditionedColliderSet, Unblocked };
    Kind kind = Kind::Unblocked;
    // The conditioned non-colliders, or the collider set that avoids the context.
    NodeSet nodes;
};

struct FactCheck {
    PathFact fact;  // oriented from the weakening variable to the target
    std::size_t closure_index = 0;
    BlockingReason reason;

    bool blocked() const { return reason.kind != BlockingReason::Kind::Unblocked; }
};

BlockingReason blocking_reason(const PathFact& fact, NodeSet conditioning);

struct Condition1Result {
    bool holds = true;
    std::optional<Edge> witness;
};

struct Condition2Result {
    bool holds = true;
    std::vector<FactCheck> facts;  // every fact between the pair, least first
    std::optional<std::size_t> witness;  // index into `facts` of the least unblocked one
};

Condition1Result check_condition1(const CausalGraph& g, std::string_view a, std::string_view t);
Condition2Result check_condition2(const Closure& closure, NodeId a, NodeId t, NodeSet context_vars);

struct Verdict {
    std::string variable;
    std::string target;
    std::vector<std::string> context_vars;  // A_σ, ascending

    bool admissible = false;
    std::optional<Condition> failed_condition;
    std::optional<Edge> witness_edge;
    std::optional<FactCheck> witness_fact;
    std::vector<FactCheck> facts;
    std::vector<std::size_t> trace;  // indices into Closure::trace(), ascending
};

// Value-free form of the check: only variables matter to either condition.
Verdict check_admissibility(const CausalGraph& g, const Closure& closure,
                            const std::vector<std::string>& context_vars, std::string_view target,
                            std::string_view variable);

// Throws Error with UnknownVariable / VariableAlreadyInContext / WeakeningTargetIsGoal.
Verdict check_weakening(const CausalGraph& g, const Closure& closure, const Judgment& j,
                        const Attribution& new_attr);

// Appends `new_attr` to the context; target, outcome and probability carry
// over unchanged. Throws Error(InadmissibleWeakening).
Judgment apply_weakening(const Judgment& j, const Attribution& new_attr, const Verdict& v);

}  // namespace fairgate
