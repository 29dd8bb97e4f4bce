#include "fairgate/judgment.hpp"

#include <algorithm>

namespace fairgate {

namespace {

constexpr std::string_view kBottom = "\xE2\x8A\xA5";  // U+22A5

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Characters that end a variable or atom token.
bool is_delimiter(char c) {
    switch (c) {
        case '+': case ',': case ':': case '=': case '@': case '^': case '#': return true;
        default: return is_space(c);
    }
}

class Parser {
public:
    Parser(std::string_view text, const CausalGraph* graph) : m_text(text), m_graph(graph) {}

    Context context_items(bool stop_at_arrow) {
        Context ctx;
        skip_ws();
        if (at_end() || (stop_at_arrow && looking_at("=>"))) return ctx;
        while (true) {
            std::size_t start = skip_ws();
            Attribution a = attribution();
            if (ctx.contains(a.variable)) {
                throw Error(ErrorCode::DuplicateVariable,
                            "variable '" + a.variable + "' occurs twice in the context (offset " +
                                std::to_string(start) + ")");
            }
            ctx.add(std::move(a));
            skip_ws();
            if (!looking_at(",")) break;
            ++m_pos;
        }
        return ctx;
    }

    Judgment judgment() {
        Context ctx = context_items(true);
        skip_ws();
        expect("=>", "'=>'");
        skip_ws();
        std::size_t target_pos = m_pos;
        std::string target = variable();
        skip_ws();
        expect("=", "'='");
        skip_ws();
        std::size_t value_pos = m_pos;
        Value outcome = value();
        if (outcome.kind() != ValueKind::Atomic) {
            throw SyntaxError(value_pos, "an atomic outcome value", std::string(m_text.substr(value_pos, m_pos - value_pos)));
        }
        if (ctx.contains(target)) {
            throw Error(ErrorCode::DuplicateVariable,
                        "target '" + target + "' also occurs in the context (offset " + std::to_string(target_pos) + ")");
        }
        skip_ws();
        expect("@", "'@'");
        skip_ws();
        std::size_t p_pos = m_pos;
        while (!at_end() && !is_space(peek())) ++m_pos;
        std::string_view p_text = m_text.substr(p_pos, m_pos - p_pos);
        Rational p;
        try {
            p = parse_rational(p_text);
        } catch (const SyntaxError&) {
            throw SyntaxError(p_pos, "probability (decimal or m/n)", std::string(p_text));
        }
        finish();
        return make_judgment(std::move(ctx), std::move(target), std::move(outcome), std::move(p));
    }

    Attribution attribution() {
        std::string var = variable();
        skip_ws();
        expect("=", "'='");
        skip_ws();
        return {std::move(var), value()};
    }

    void finish() {
        skip_ws();
        if (!at_end()) throw SyntaxError(m_pos, "end of input", std::string(m_text.substr(m_pos, 16)));
    }

private:
    bool at_end() const { return m_pos >= m_text.size(); }
    char peek() const { return m_text[m_pos]; }
    bool looking_at(std::string_view s) const { return m_text.substr(m_pos).starts_with(s); }

    std::size_t skip_ws() {
        while (!at_end() && is_space(peek())) ++m_pos;
        return m_pos;
    }

    void expect(std::string_view token, const char* what) {
        if (!looking_at(token)) {
            throw SyntaxError(m_pos, what, std::string(m_text.substr(m_pos, 8)));
        }
        m_pos += token.size();
    }

    std::string_view run() {
        std::size_t start = m_pos;
        while (!at_end() && !is_delimiter(peek()) && !looking_at(kBottom)) ++m_pos;
        return m_text.substr(start, m_pos - start);
    }

    std::string variable() {
        std::size_t start = m_pos;
        std::string_view name = run();
        if (!is_valid_variable_name(name)) throw SyntaxError(start, "variable name", std::string(name));
        if (m_graph && !m_graph->find(name)) {
            throw Error(ErrorCode::UnknownVariable,
                        "unknown variable '" + std::string(name) + "' (offset " + std::to_string(start) + ")");
        }
        return std::string(name);
    }

    std::string atom() {
        std::size_t start = m_pos;
        std::string_view a = run();
        if (!is_valid_atom(a)) throw SyntaxError(start, "value atom", std::string(a));
        return std::string(a);
    }

    Value value() {
        std::vector<std::string> atoms{atom()};
        std::size_t save = m_pos;
        skip_ws();
        if (looking_at("^")) {
            ++m_pos;
            expect("~", "'~' after '^'");
            return Value::complement(std::move(atoms.front()));
        }
        while (looking_at("+")) {
            ++m_pos;
            skip_ws();
            std::size_t at = m_pos;
            std::string next = atom();
            if (std::find(atoms.begin(), atoms.end(), next) != atoms.end()) {
                throw SyntaxError(at, "an atom not already in the sum", next);
            }
            atoms.push_back(std::move(next));
            save = m_pos;
            skip_ws();
        }
        m_pos = save;
        if (atoms.size() == 1) return Value::atomic(std::move(atoms.front()));
        return Value::sum(std::move(atoms));
    }

    std::string_view m_text;
    const CausalGraph* m_graph;
    std::size_t m_pos = 0;
};

}  // namespace

Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
    };
    auto bad = [&]() { return SyntaxError(0, "decimal or m/n", std::string(text)); };
    using boost::multiprecision::cpp_int;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!digits(num) || !digits(den)) throw bad();
        cpp_int d{std::string(den)};
        if (d == 0) throw bad();
        return Rational(cpp_int(std::string(num)), d);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (!digits(whole) || !digits(frac)) throw bad();
        cpp_int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        return Rational(cpp_int(std::string(whole)) * scale + cpp_int(std::string(frac)), scale);
    }
    if (!digits(text)) throw bad();
    return Rational(cpp_int(std::string(text)));
}

std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

bool is_valid_atom(std::string_view atom) noexcept {
    if (atom.empty() || atom.find(kBottom) != std::string_view::npos) return false;
    return std::none_of(atom.begin(), atom.end(), is_delimiter);
}

Value Value::atomic(std::string atom) {
    if (!is_valid_atom(atom)) throw Error(ErrorCode::InvalidArgument, "malformed value atom '" + atom + "'");
    return Value(ValueKind::Atomic, {std::move(atom)});
}

Value Value::sum(std::vector<std::string> atoms) {
    std::set<std::string> unique;
    for (auto& a : atoms) {
        if (!is_valid_atom(a)) throw Error(ErrorCode::InvalidArgument, "malformed value atom '" + a + "'");
        unique.insert(std::move(a));
    }
    if (unique.size() < 2 || unique.size() != atoms.size()) {
        throw Error(ErrorCode::InvalidArgument, "a sum value needs at least two distinct atoms");
    }
    return Value(ValueKind::Sum, std::move(unique));
}

Value Value::complement(std::string atom) {
    if (!is_valid_atom(atom)) throw Error(ErrorCode::InvalidArgument, "malformed value atom '" + atom + "'");
    return Value(ValueKind::Complement, {std::move(atom)});
}

bool value_matches(const Value& v, std::string_view observed) {
    switch (v.kind()) {
        case ValueKind::Atomic: return v.atom() == observed;
        case ValueKind::Sum: return v.atoms().contains(std::string(observed));
        case ValueKind::Complement: return v.atom() != observed;
    }
    return false;
}

std::string to_string(const Value& v) {
    switch (v.kind()) {
        case ValueKind::Atomic: return v.atom();
        case ValueKind::Complement: return v.atom() + "^~";
        case ValueKind::Sum: {
            std::string out;
            for (const auto& a : v.atoms()) {
                if (!out.empty()) out += '+';
                out += a;
            }
            return out;
        }
    }
    return {};
}

Context::Context(std::vector<Attribution> items) {
    for (auto& a : items) add(std::move(a));
}

void Context::add(Attribution a) {
    validate_variable_name(a.variable);
    if (contains(a.variable)) {
        throw Error(ErrorCode::DuplicateVariable, "variable '" + a.variable + "' occurs twice in the context");
    }
    m_items.push_back(std::move(a));
}

bool Context::contains(std::string_view variable) const { return find(variable) != nullptr; }

const Value* Context::find(std::string_view variable) const {
    for (const auto& a : m_items) {
        if (a.variable == variable) return &a.value;
    }
    return nullptr;
}

std::vector<std::string> Context::variables() const {
    std::vector<std::string> out;
    for (const auto& a : m_items) out.push_back(a.variable);
    std::sort(out.begin(), out.end());
    return out;
}

bool Context::operator==(const Context& other) const {
    if (m_items.size() != other.m_items.size()) return false;
    return std::all_of(m_items.begin(), m_items.end(), [&](const Attribution& a) {
        const Value* v = other.find(a.variable);
        return v && *v == a.value;
    });
}

Judgment make_judgment(Context context, std::string target, Value outcome, Rational probability) {
    validate_variable_name(target);
    if (context.contains(target)) {
        throw Error(ErrorCode::DuplicateVariable, "target '" + target + "' also occurs in the context");
    }
    if (outcome.kind() != ValueKind::Atomic) {
        throw Error(ErrorCode::InvalidArgument, "the outcome of a judgment must be an atomic value");
    }
    if (probability < 0 || probability > 1) {
        throw Error(ErrorCode::ProbabilityOutOfRange,
                    "probability " + format_rational(probability) + " is outside [0, 1]");
    }
    return Judgment{std::move(context), std::move(target), std::move(outcome), std::move(probability)};
}

Judgment parse_judgment(std::string_view text, const CausalGraph* graph) {
    return Parser(text, graph).judgment();
}

Context parse_context(std::string_view text, const CausalGraph* graph) {
    Parser p(text, graph);
    Context ctx = p.context_items(false);
    p.finish();
    return ctx;
}

Attribution parse_attribution(std::string_view text, const CausalGraph* graph) {
    Parser p(text, graph);
    Attribution a = p.attribution();
    p.finish();
    return a;
}

std::string serialize_context(const Context& ctx) {
    std::vector<const Attribution*> sorted;
    for (const auto& a : ctx.items()) sorted.push_back(&a);
    std::sort(sorted.begin(), sorted.end(),
              [](const Attribution* l, const Attribution* r) { return l->variable < r->variable; });
    std::string out;
    for (const Attribution* a : sorted) {
        if (!out.empty()) out += ", ";
        out += a->variable + "=" + to_string(a->value);
    }
    return out;
}

std::string serialize_judgment(const Judgment& j) {
    return serialize_context(j.context) + " => " + j.target + "=" + to_string(j.outcome) + " @ " +
           format_rational(j.probability);
}

}  // namespace fairgate
