#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fairgate/graph.hpp"
#include "fairgate/judgment.hpp"
#include "fairgate/relations.hpp"
#include "fairgate/weakening.hpp"

namespace fairgate {

class Dataset {
public:
    // Throws Error(MalformedDataset) on ragged rows or bad cells,
    // Error(UnknownColumn) if `target` is not a column.
    Dataset(std::vector<std::string> columns, std::vector<std::vector<std::string>> rows, std::string target);

    const std::vector<std::string>& columns() const noexcept { return m_columns; }
    const std::vector<std::vector<std::string>>& rows() const noexcept { return m_rows; }
    const std::string& target() const noexcept { return m_target; }

    // Throws Error(UnknownColumn).
    std::size_t column(std::string_view name) const;

private:
    std::vector<std::string> m_columns;
    std::vector<std::vector<std::string>> m_rows;
    std::string m_target;
};

// UTF-8 CSV, header row first. Quoted fields with "" escapes are accepted.
Dataset parse_csv(std::string_view text, std::string target);
std::string to_csv(const Dataset& d);

// P(target ∈ outcome | ctx) as a reduced fraction.
// Throws Error(EmptyConditioningSet) when no row matches ctx.
Rational empirical_probability(const Dataset& d, const Context& ctx, const Value& outcome);

struct CiWitness {
    std::string alpha;  // value of the tested attribute
    std::string beta;   // outcome value
    Rational conditioned;  // P(t=β | a=α, ctx)
    Rational marginal;     // P(t=β | ctx)
};

struct PairwiseWitness {
    std::string alpha_high;
    std::string alpha_low;
    std::string beta;
    Rational high;  // P(t=β | a=alpha_high, ctx)
    Rational low;   // P(t=β | a=alpha_low, ctx)
};

struct CiCell {
    std::string alpha;
    std::string beta;
    std::size_t rows = 0;     // rows with a=α in ctx
    std::size_t matches = 0;  // ... of which t=β
    Rational probability;
};

struct CiResult {
    bool independent = true;
    Rational epsilon;
    Rational max_delta;  // max |P(t=β | a=α, ctx) - P(t=β | ctx)|
    std::optional<CiWitness> witness;
    // Largest gap between two values of `a` for the same β: the individual
    // fairness reading (same outputs for points differing only in `a`).
    Rational max_pairwise_delta;
    std::optional<PairwiseWitness> pairwise_witness;
    std::size_t conditioning_rows = 0;
    std::vector<CiCell> cells;  // sorted by (alpha, beta)
};

// Independence of `a` and `t` given ctx, judged on raw frequencies: passes
// iff max_delta <= epsilon.
CiResult empirical_ci(const Dataset& d, std::string_view a, std::string_view t, const Context& ctx,
                      const Rational& epsilon);

enum class Mode { Graphical, Empirical, Both };

std::string_view to_string(Mode m) noexcept;

struct EmpiricalCheck {
    Context conditioning;  // ctx plus one observed combination of the merged protected attributes
    CiResult result;
};

struct IfEntry {
    std::string attribute;
    std::vector<std::string> merged;  // other protected attributes moved into the conditioning side
    std::optional<Verdict> verdict;
    std::vector<EmpiricalCheck> empirical;
    std::optional<bool> graphical_pass;
    std::optional<bool> empirical_pass;
    Rational max_delta;
    bool pass = false;
    std::optional<bool> agreement;  // Both mode only
};

struct SubsetReport {
    std::vector<std::string> subset;
    std::vector<IfEntry> entries;
    bool pass = false;
};

struct FairnessReport {
    std::vector<std::string> protected_attrs;
    Mode mode = Mode::Graphical;
    std::string target;
    Context context;
    Rational threshold;
    Rational max_delta;
    std::vector<SubsetReport> subsets;  // by size, then lexicographic
    bool pass = false;
    std::optional<bool> agreement;
};

struct FairnessInputs {
    const CausalGraph* graph = nullptr;  // required for Graphical / Both
    const Closure* closure = nullptr;    // required for Graphical / Both
    const Dataset* dataset = nullptr;    // required for Empirical / Both
};

IfEntry check_if(const FairnessInputs& in, const Context& ctx, std::string_view target,
                 std::string_view protected_attr, const Rational& epsilon, Mode mode);

inline constexpr std::size_t kDefaultSubsetCap = 12;

// Throws Error(SubsetExplosion) when more than `max_attributes` are protected.
FairnessReport check_intersectionality(const FairnessInputs& in, const Context& ctx, std::string_view target,
                                       const std::vector<std::string>& protected_set, const Rational& epsilon,
                                       Mode mode, std::size_t max_attributes = kDefaultSubsetCap);

// The 680-row training set with columns a1, a2, t.
Dataset generate_table1();

struct Table1Cell {
    std::string a1;
    std::string a2;
    std::size_t rows = 0;
    std::size_t beta = 0;
    Rational probability;  // P(t=β | a1, a2)
    Rational expected;
};

struct Table1Marginal {
    std::string attribute;
    std::string value;
    std::size_t rows = 0;
    std::size_t beta = 0;
    Rational probability;  // P(t=β | attribute=value)
    Rational expected;
};

struct Table1Demo {
    std::size_t rows = 0;
    std::vector<Table1Cell> cells;
    std::vector<Table1Marginal> marginals;
    bool reproduced = false;  // every cell and marginal equals its expected value
    FairnessReport observation;  // empirical intersectionality over {a1, a2}, ε = 0
};

// Generates the training set, recomputes the table and runs the
// intersectionality check on it.
Table1Demo run_table1_demo();

// Forward sampling over binary variables ("0"/"1"); each node draws its
// conditional probabilities from [0.2, 0.8] per parent configuration.
Dataset sample_from_graph(const CausalGraph& g, std::mt19937_64& rng, std::size_t rows, std::string target);

}  // namespace fairgate
