#pragma once

#include <string>

#include <json.hpp>

#include "fairgate/fairness.hpp"
#include "fairgate/oracle_sweep.hpp"
#include "fairgate/relations.hpp"
#include "fairgate/weakening.hpp"

namespace fairgate {

using Json = nlohmann::ordered_json;

enum class Format { Json, Text };

// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

// "A ◇^{M}_{N} B", "A ▷^{M} B" and "A -> B".
std::string describe(const CausalGraph& g, const PathFact& fact);
std::string describe(const CausalGraph& g, const MediateCauseFact& fact);
std::string describe(const CausalGraph& g, const Closure& closure, const FactRef& ref);

Json closure_json(const CausalGraph& g, const Closure& closure);
std::string render_closure(const CausalGraph& g, const Closure& closure, Format format);

Json verdict_json(const CausalGraph& g, const Closure& closure, const Verdict& v);

struct WeakenOutcome {
    Judgment premise;
    Attribution attribution;
    Verdict verdict;
    std::optional<Judgment> conclusion;  // set when admissible
};

Json weaken_json(const CausalGraph& g, const Closure& closure, const WeakenOutcome& w);
std::string render_weaken(const CausalGraph& g, const Closure& closure, const WeakenOutcome& w, Format format);

struct IfRequest {
    Mode mode = Mode::Graphical;
    std::string target;
    Context context;
    Rational epsilon;
};

Json ci_json(const CiResult& r);
Json if_entry_json(const CausalGraph* g, const Closure* closure, const IfEntry& e);
std::string render_if(const CausalGraph* g, const Closure* closure, const IfRequest& req, const IfEntry& e,
                      Format format);
std::string render_intersect(const CausalGraph* g, const Closure* closure, const FairnessReport& r, Format format);

Json sweep_json(const SweepOptions& options, const SweepReport& r);
std::string render_sweep(const SweepOptions& options, const SweepReport& r, Format format);

std::string render_table1(const Table1Demo& demo, Format format);

}  // namespace fairgate
