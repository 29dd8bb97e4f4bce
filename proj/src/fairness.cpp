#include "fairgate/fairness.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fairgate/oracle_sweep.hpp"

namespace fairgate {

Dataset::Dataset(std::vector<std::string> columns, std::vector<std::vector<std::string>> rows, std::string target)
    : m_columns(std::move(columns)), m_rows(std::move(rows)), m_target(std::move(target)) {
    std::set<std::string> seen;
    for (const auto& c : m_columns) {
        if (!is_valid_variable_name(c)) throw Error(ErrorCode::MalformedDataset, "malformed column name '" + c + "'");
        if (!seen.insert(c).second) throw Error(ErrorCode::MalformedDataset, "duplicate column '" + c + "'");
    }
    for (std::size_t r = 0; r < m_rows.size(); ++r) {
        if (m_rows[r].size() != m_columns.size()) {
            throw Error(ErrorCode::MalformedDataset,
                        "row " + std::to_string(r + 1) + " has " + std::to_string(m_rows[r].size()) +
                            " cells, expected " + std::to_string(m_columns.size()));
        }
        for (const auto& cell : m_rows[r]) {
            if (!is_valid_atom(cell)) {
                throw Error(ErrorCode::MalformedDataset,
                            "row " + std::to_string(r + 1) + ": '" + cell + "' is not an atomic value");
            }
        }
    }
    column(m_target);
}

std::size_t Dataset::column(std::string_view name) const {
    auto it = std::find(m_columns.begin(), m_columns.end(), name);
    if (it == m_columns.end()) throw Error(ErrorCode::UnknownColumn, "unknown column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - m_columns.begin());
}

namespace {

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    auto end_field = [&]() {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&]() {
        if (field_started || !record.empty()) {
            end_field();
            records.push_back(std::move(record));
        }
        record.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"': quoted = true; field_started = true; break;
            case ',': end_field(); field_started = true; break;
            case '\r': break;
            case '\n': end_record(); break;
            default: field += c; field_started = true; break;
        }
    }
    if (quoted) throw Error(ErrorCode::MalformedDataset, "unterminated quoted field");
    end_record();
    return records;
}

std::vector<std::size_t> matching_rows(const Dataset& d, const Context& ctx) {
    std::vector<std::pair<std::size_t, const Value*>> tests;
    for (const auto& a : ctx.items()) tests.emplace_back(d.column(a.variable), &a.value);
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < d.rows().size(); ++r) {
        const auto& row = d.rows()[r];
        if (std::all_of(tests.begin(), tests.end(),
                        [&](const auto& t) { return value_matches(*t.second, row[t.first]); })) {
            out.push_back(r);
        }
    }
    return out;
}

Rational abs_diff(const Rational& a, const Rational& b) { return a > b ? Rational(a - b) : Rational(b - a); }

}  // namespace

Dataset parse_csv(std::string_view text, std::string target) {
    auto records = split_csv(text);
    if (records.empty()) throw Error(ErrorCode::MalformedDataset, "dataset has no header row");
    std::vector<std::string> header = std::move(records.front());
    records.erase(records.begin());
    return Dataset(std::move(header), std::move(records), std::move(target));
}

std::string to_csv(const Dataset& d) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(d.columns());
    for (const auto& r : d.rows()) line(r);
    return out;
}

Rational empirical_probability(const Dataset& d, const Context& ctx, const Value& outcome) {
    const std::size_t target = d.column(d.target());
    auto rows = matching_rows(d, ctx);
    if (rows.empty()) {
        throw Error(ErrorCode::EmptyConditioningSet, "no row matches the context '" + serialize_context(ctx) + "'");
    }
    std::size_t hits = 0;
    for (std::size_t r : rows) hits += value_matches(outcome, d.rows()[r][target]) ? 1 : 0;
    return Rational(hits, rows.size());
}

CiResult empirical_ci(const Dataset& d, std::string_view a, std::string_view t, const Context& ctx,
                      const Rational& epsilon) {
    const std::size_t ai = d.column(a);
    const std::size_t ti = d.column(t);
    if (ai == ti) throw Error(ErrorCode::InvalidArgument, "attribute and target must differ");
    if (ctx.contains(a)) {
        throw Error(ErrorCode::VariableAlreadyInContext, "attribute '" + std::string(a) + "' is in the context");
    }
    auto rows = matching_rows(d, ctx);
    if (rows.empty()) {
        throw Error(ErrorCode::EmptyConditioningSet, "no row matches the context '" + serialize_context(ctx) + "'");
    }

    std::map<std::string, std::size_t> alpha_rows;
    std::map<std::string, std::size_t> beta_rows;
    std::map<std::pair<std::string, std::string>, std::size_t> joint;
    for (std::size_t r : rows) {
        const auto& alpha = d.rows()[r][ai];
        const auto& beta = d.rows()[r][ti];
        ++alpha_rows[alpha];
        ++beta_rows[beta];
        ++joint[{alpha, beta}];
    }

    CiResult out;
    out.epsilon = epsilon;
    out.conditioning_rows = rows.size();
    for (const auto& [beta, bcount] : beta_rows) {
        Rational marginal(bcount, rows.size());
        const CiCell* high = nullptr;
        const CiCell* low = nullptr;
        std::size_t first = out.cells.size();
        for (const auto& [alpha, acount] : alpha_rows) {
            auto it = joint.find({alpha, beta});
            std::size_t hits = it == joint.end() ? 0 : it->second;
            out.cells.push_back({alpha, beta, acount, hits, Rational(hits, acount)});
        }
        for (std::size_t k = first; k < out.cells.size(); ++k) {
            const CiCell& cell = out.cells[k];
            Rational delta = abs_diff(cell.probability, marginal);
            if (delta > out.max_delta) {
                out.max_delta = delta;
                out.witness = CiWitness{cell.alpha, beta, cell.probability, marginal};
            }
            if (!high || cell.probability > high->probability) high = &cell;
            if (!low || cell.probability < low->probability) low = &cell;
        }
        if (high && low && high->probability - low->probability > out.max_pairwise_delta) {
            out.max_pairwise_delta = high->probability - low->probability;
            out.pairwise_witness = PairwiseWitness{high->alpha, low->alpha, beta, high->probability, low->probability};
        }
    }
    std::sort(out.cells.begin(), out.cells.end(), [](const CiCell& l, const CiCell& r) {
        return std::tie(l.alpha, l.beta) < std::tie(r.alpha, r.beta);
    });
    out.independent = out.max_delta <= epsilon;
    return out;
}

std::string_view to_string(Mode m) noexcept {
    switch (m) {
        case Mode::Graphical: return "graphical";
        case Mode::Empirical: return "empirical";
        case Mode::Both: return "both";
    }
    return "?";
}

namespace {

bool wants_graph(Mode m) { return m != Mode::Empirical; }
bool wants_data(Mode m) { return m != Mode::Graphical; }

void require_inputs(const FairnessInputs& in, Mode mode) {
    if (wants_graph(mode) && (!in.graph || !in.closure)) {
        throw Error(ErrorCode::InvalidArgument, "graphical mode needs a causal graph");
    }
    if (wants_data(mode) && !in.dataset) {
        throw Error(ErrorCode::InvalidArgument, "empirical mode needs a dataset");
    }
}

IfEntry run_entry(const FairnessInputs& in, const Context& ctx, std::string_view target, std::string_view attr,
                  const std::vector<std::string>& merged, const Rational& epsilon, Mode mode) {
    if (attr == target) {
        throw Error(ErrorCode::WeakeningTargetIsGoal, "protected attribute '" + std::string(attr) + "' is the target");
    }
    if (ctx.contains(attr)) {
        throw Error(ErrorCode::VariableAlreadyInContext,
                    "protected attribute '" + std::string(attr) + "' is already in the context");
    }
    IfEntry e;
    e.attribute = std::string(attr);
    e.merged = merged;
    bool pass = true;

    if (wants_graph(mode)) {
        std::vector<std::string> vars = ctx.variables();
        vars.insert(vars.end(), merged.begin(), merged.end());
        e.verdict = check_admissibility(*in.graph, *in.closure, vars, target, attr);
        e.graphical_pass = e.verdict->admissible;
        pass = pass && *e.graphical_pass;
    }
    if (wants_data(mode)) {
        const Dataset& d = *in.dataset;
        std::vector<std::size_t> cols;
        for (const auto& m : merged) cols.push_back(d.column(m));
        std::set<std::vector<std::string>> combos;
        auto rows = matching_rows(d, ctx);
        if (rows.empty()) {
            throw Error(ErrorCode::EmptyConditioningSet, "no row matches the context '" + serialize_context(ctx) + "'");
        }
        for (std::size_t r : rows) {
            std::vector<std::string> combo;
            for (std::size_t c : cols) combo.push_back(d.rows()[r][c]);
            combos.insert(std::move(combo));
        }
        bool ok = true;
        for (const auto& combo : combos) {
            Context cond = ctx;
            for (std::size_t k = 0; k < merged.size(); ++k) cond.add({merged[k], Value::atomic(combo[k])});
            CiResult r = empirical_ci(d, attr, target, cond, epsilon);
            ok = ok && r.independent;
            if (r.max_delta > e.max_delta) e.max_delta = r.max_delta;
            e.empirical.push_back({std::move(cond), std::move(r)});
        }
        e.empirical_pass = ok;
        pass = pass && ok;
    }
    if (mode == Mode::Both) e.agreement = *e.graphical_pass == *e.empirical_pass;
    e.pass = pass;
    return e;
}

}  // namespace

IfEntry check_if(const FairnessInputs& in, const Context& ctx, std::string_view target,
                 std::string_view protected_attr, const Rational& epsilon, Mode mode) {
    require_inputs(in, mode);
    return run_entry(in, ctx, target, protected_attr, {}, epsilon, mode);
}

FairnessReport check_intersectionality(const FairnessInputs& in, const Context& ctx, std::string_view target,
                                       const std::vector<std::string>& protected_set, const Rational& epsilon,
                                       Mode mode, std::size_t max_attributes) {
    require_inputs(in, mode);
    if (protected_set.empty()) throw Error(ErrorCode::InvalidArgument, "at least one protected attribute is required");
    if (protected_set.size() > max_attributes) {
        throw Error(ErrorCode::SubsetExplosion,
                    std::to_string(protected_set.size()) + " protected attributes exceed the cap of " +
                        std::to_string(max_attributes));
    }
    std::vector<std::string> attrs = protected_set;
    std::sort(attrs.begin(), attrs.end());
    if (std::adjacent_find(attrs.begin(), attrs.end()) != attrs.end()) {
        throw Error(ErrorCode::DuplicateVariable, "protected attributes must be distinct");
    }
    for (const auto& a : attrs) {
        if (a == target) throw Error(ErrorCode::WeakeningTargetIsGoal, "protected attribute '" + a + "' is the target");
        if (ctx.contains(a)) {
            throw Error(ErrorCode::VariableAlreadyInContext, "protected attribute '" + a + "' is already in the context");
        }
    }

    std::vector<std::vector<std::string>> subsets;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << attrs.size()); ++mask) {
        std::vector<std::string> s;
        for (std::size_t k = 0; k < attrs.size(); ++k) {
            if ((mask >> k) & 1U) s.push_back(attrs[k]);
        }
        subsets.push_back(std::move(s));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& l, const auto& r) {
        return l.size() != r.size() ? l.size() < r.size() : l < r;
    });

    FairnessReport report;
    report.protected_attrs = attrs;
    report.mode = mode;
    report.target = std::string(target);
    report.context = ctx;
    report.threshold = epsilon;
    report.pass = true;
    if (mode == Mode::Both) report.agreement = true;
    for (const auto& s : subsets) {
        SubsetReport sr;
        sr.subset = s;
        sr.pass = true;
        for (const auto& a : s) {
            std::vector<std::string> rest;
            for (const auto& other : s) {
                if (other != a) rest.push_back(other);
            }
            IfEntry e = run_entry(in, ctx, target, a, rest, epsilon, mode);
            sr.pass = sr.pass && e.pass;
            if (e.max_delta > report.max_delta) report.max_delta = e.max_delta;
            if (e.agreement && !*e.agreement) report.agreement = false;
            sr.entries.push_back(std::move(e));
        }
        report.pass = report.pass && sr.pass;
        report.subsets.push_back(std::move(sr));
    }
    return report;
}

Dataset generate_table1() {
    struct Cell {
        const char* a1;
        const char* a2;
        std::size_t total;
        std::size_t beta;
    };
    static constexpr Cell cells[] = {
        {"v11", "v21", 100, 90},
        {"v11", "v22", 240, 180},
        {"v12", "v21", 240, 180},
        {"v12", "v22", 100, 90},
    };
    std::vector<std::vector<std::string>> rows;
    rows.reserve(680);
    for (const auto& c : cells) {
        for (std::size_t i = 0; i < c.total; ++i) {
            rows.push_back({c.a1, c.a2, i < c.beta ? "\xCE\xB2" : "\xCE\xB2\xE2\x80\xB2"});  // β, β′
        }
    }
    return Dataset({"a1", "a2", "t"}, std::move(rows), "t");
}

Table1Demo run_table1_demo() {
    const Dataset d = generate_table1();
    const std::string beta = "\xCE\xB2";
    const Value outcome = Value::atomic(beta);
    const std::size_t target = d.column("t");

    Table1Demo demo;
    demo.rows = d.rows().size();
    demo.reproduced = demo.rows == 680;
    auto count = [&](const Context& ctx, std::size_t& rows, std::size_t& hits) {
        rows = hits = 0;
        for (std::size_t r : matching_rows(d, ctx)) {
            ++rows;
            hits += d.rows()[r][target] == beta ? 1 : 0;
        }
    };

    const std::pair<const char*, const char*> cells[] = {
        {"v11", "v21"}, {"v11", "v22"}, {"v12", "v21"}, {"v12", "v22"}};
    const Rational cell_expected[] = {Rational(9, 10), Rational(3, 4), Rational(3, 4), Rational(9, 10)};
    for (std::size_t k = 0; k < 4; ++k) {
        Context ctx({{"a1", Value::atomic(cells[k].first)}, {"a2", Value::atomic(cells[k].second)}});
        Table1Cell c{cells[k].first, cells[k].second, 0, 0, empirical_probability(d, ctx, outcome), cell_expected[k]};
        count(ctx, c.rows, c.beta);
        demo.reproduced = demo.reproduced && c.probability == c.expected;
        demo.cells.push_back(std::move(c));
    }
    const std::pair<const char*, const char*> margins[] = {
        {"a1", "v11"}, {"a1", "v12"}, {"a2", "v21"}, {"a2", "v22"}};
    for (const auto& [attr, value] : margins) {
        Context ctx({{attr, Value::atomic(value)}});
        Table1Marginal m{attr, value, 0, 0, empirical_probability(d, ctx, outcome), Rational(27, 34)};
        count(ctx, m.rows, m.beta);
        demo.reproduced = demo.reproduced && m.probability == m.expected;
        demo.marginals.push_back(std::move(m));
    }

    FairnessInputs in;
    in.dataset = &d;
    demo.observation = check_intersectionality(in, Context{}, "t", {"a1", "a2"}, Rational(0), Mode::Empirical);
    return demo;
}

Dataset sample_from_graph(const CausalGraph& g, std::mt19937_64& rng, std::size_t rows, std::string target) {
    g.id(target);
    const std::size_t n = g.size();
    std::vector<std::vector<double>> cpt(n);
    for (NodeId v : g.topological_order()) {
        std::size_t configs = std::size_t{1} << g.parents(v).size();
        for (std::size_t c = 0; c < configs; ++c) cpt[v].push_back(0.2 + 0.6 * uniform_unit(rng));
    }
    std::vector<std::vector<std::string>> out;
    out.reserve(rows);
    std::vector<int> value(n);
    for (std::size_t r = 0; r < rows; ++r) {
        for (NodeId v : g.topological_order()) {
            std::size_t config = 0;
            std::size_t bit = 0;
            for (NodeId p : g.parents(v)) config |= static_cast<std::size_t>(value[p]) << bit++;
            value[v] = uniform_unit(rng) < cpt[v][config] ? 1 : 0;
        }
        std::vector<std::string> row(n);
        for (NodeId v = 0; v < n; ++v) row[v] = value[v] ? "1" : "0";
        out.push_back(std::move(row));
    }
    return Dataset(g.names(), std::move(out), std::move(target));
}

}  // namespace fairgate
