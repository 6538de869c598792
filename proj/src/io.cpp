#include "vcsp/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace vcsp {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text)
{
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok)
            line.tokens.push_back(tok);
        if (!line.tokens.empty())
            lines.push_back(std::move(line));
    }
    return lines;
}

ExtValue parse_value(const Line& line, const std::string& token)
{
    try {
        return ExtValue::parse(token);
    } catch (const Error& e) {
        throw ParseError(line.number, e.what());
    }
}

// canonical default: the most frequent value, ties to the one seen first
// in row order
ExtValue default_value(const std::vector<ExtValue>& table)
{
    std::vector<std::pair<ExtValue, std::size_t>> counts;
    for (const auto& v : table) {
        bool seen = false;
        for (auto& [value, count] : counts)
            if (value == v) {
                ++count;
                seen = true;
                break;
            }
        if (!seen)
            counts.emplace_back(v, 1);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < counts.size(); ++i)
        if (counts[i].second > counts[best].second)
            best = i;
    return counts[best].first;
}

} // namespace

LanguagePtr parse_language(const std::string& text)
{
    auto lines = tokenize(text);
    std::size_t at = 0;
    auto need = [&](const char* what) -> const Line& {
        if (at >= lines.size())
            throw ParseError(lines.empty() ? 1 : lines.back().number, std::string("expected ") + what);
        return lines[at];
    };

    const Line& head = need("'language <name>'");
    if (head.tokens[0] != "language" || head.tokens.size() != 2)
        throw ParseError(head.number, "expected 'language <name>'");
    std::string name = head.tokens[1];
    ++at;

    const Line& dom = need("'domain <label> ...'");
    if (dom.tokens[0] != "domain" || dom.tokens.size() < 2)
        throw ParseError(dom.number, "expected 'domain <label> ...'");
    Domain domain{{dom.tokens.begin() + 1, dom.tokens.end()}};
    try {
        domain.validate();
    } catch (const Error& e) {
        throw SemanticError(dom.number, e.what());
    }
    ++at;

    std::vector<CostFunction> functions;
    while (at < lines.size()) {
        const Line& fn = lines[at];
        if (fn.tokens[0] != "function" || fn.tokens.size() != 4 || fn.tokens[2] != "arity")
            throw ParseError(fn.number, "expected 'function <name> arity <m>'");
        std::string fname = fn.tokens[1];
        unsigned arity = 0;
        try {
            arity = static_cast<unsigned>(std::stoul(fn.tokens[3]));
        } catch (...) {
            throw ParseError(fn.number, "bad arity '" + fn.tokens[3] + "'");
        }
        if (arity < 1)
            throw SemanticError(fn.number, "arity must be at least 1");
        ++at;

        std::size_t table_size = checked_pow(domain.size(), arity, std::size_t(1) << 27);
        std::vector<ExtValue> table(table_size);
        std::vector<char> given(table_size, 0);
        bool have_default = false;
        ExtValue fallback;

        bool closed = false;
        while (at < lines.size()) {
            const Line& row = lines[at];
            if (row.tokens[0] == "end" && row.tokens.size() == 1) {
                closed = true;
                ++at;
                break;
            }
            if (row.tokens[0] == "default") {
                if (row.tokens.size() != 3 || row.tokens[1] != ":")
                    throw ParseError(row.number, "expected 'default : <value>'");
                if (have_default)
                    throw SemanticError(row.number, "duplicate default line");
                have_default = true;
                fallback = parse_value(row, row.tokens[2]);
                ++at;
                continue;
            }
            if (row.tokens.size() != arity + 2 || row.tokens[arity] != ":")
                throw ParseError(row.number,
                    "expected '<label>{" + std::to_string(arity) + "} : <value>'");
            std::vector<std::size_t> tuple(arity);
            for (unsigned i = 0; i < arity; ++i) {
                auto li = domain.find(row.tokens[i]);
                if (!li)
                    throw SemanticError(row.number, "label '" + row.tokens[i] + "' outside the domain");
                tuple[i] = *li;
            }
            std::size_t idx = pack_tuple(tuple, domain.size());
            if (given[idx])
                throw SemanticError(row.number, "duplicate tuple");
            given[idx] = 1;
            table[idx] = parse_value(row, row.tokens[arity + 1]);
            ++at;
        }
        if (!closed)
            throw ParseError(lines.back().number, "function block not closed with 'end'");
        for (std::size_t i = 0; i < table_size; ++i)
            if (!given[i]) {
                if (!have_default)
                    throw SemanticError(fn.number,
                        "function '" + fname + "' leaves tuples unvalued and has no default");
                table[i] = fallback;
            }
        functions.emplace_back(fname, domain, arity, std::move(table));
    }

    try {
        return make_language(std::move(name), std::move(domain), std::move(functions));
    } catch (const SemanticError&) {
        throw;
    } catch (const Error& e) {
        throw SemanticError(e.what());
    }
}

std::string serialize_language(const Language& lang)
{
    std::ostringstream out;
    out << "language " << lang.name << "\n";
    out << "domain";
    for (const auto& l : lang.domain.labels)
        out << " " << l;
    out << "\n";
    for (const auto& f : lang.functions) {
        out << "function " << f.name() << " arity " << f.arity() << "\n";
        ExtValue fallback = default_value(f.table());
        out << "  default : " << fallback.str() << "\n";
        std::vector<std::size_t> tuple(f.arity());
        for (std::size_t idx = 0; idx < f.table_size(); ++idx) {
            if (f.at_index(idx) == fallback)
                continue;
            unpack_tuple(idx, lang.domain.size(), tuple);
            out << " ";
            for (std::size_t c : tuple)
                out << " " << lang.domain.labels[c];
            out << " : " << f.at_index(idx).str() << "\n";
        }
        out << "end\n";
    }
    return out.str();
}

Instance parse_instance(const std::string& text, const LanguagePtr& language)
{
    auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "instance" || lines[0].tokens.size() != 2)
        throw ParseError(lines.empty() ? 1 : lines[0].number, "expected 'instance <name>'");

    Instance out{language, lines[0].tokens[1], {}, {}};
    std::size_t at = 1;
    if (at < lines.size() && lines[at].tokens[0] == "vars") {
        for (std::size_t i = 1; i < lines[at].tokens.size(); ++i) {
            if (out.find_variable(lines[at].tokens[i]))
                throw SemanticError(lines[at].number, "duplicate variable '" + lines[at].tokens[i] + "'");
            out.variables.push_back(lines[at].tokens[i]);
        }
        ++at;
    }
    for (; at < lines.size(); ++at) {
        const Line& line = lines[at];
        if (line.tokens[0] != "constraint" || line.tokens.size() < 3)
            throw ParseError(line.number, "expected 'constraint <fname> <var> ...'");
        std::vector<std::string> scope(line.tokens.begin() + 2, line.tokens.end());
        try {
            out.add_constraint_by_names(line.tokens[1], scope);
        } catch (const Error& e) {
            throw SemanticError(line.number, e.what());
        }
    }
    return out;
}

std::string serialize_instance(const Instance& instance)
{
    std::ostringstream out;
    out << "instance " << instance.name << "\n";
    out << "vars";
    for (const auto& v : instance.variables)
        out << " " << v;
    out << "\n";
    for (const auto& c : instance.constraints) {
        out << "constraint " << instance.language->functions[c.function].name();
        for (std::size_t v : c.scope)
            out << " " << instance.variables[v];
        out << "\n";
    }
    return out.str();
}

LeveledDigraph parse_digraph(const std::string& text)
{
    auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "digraph" || lines[0].tokens.size() != 2)
        throw ParseError(lines.empty() ? 1 : lines[0].number, "expected 'digraph <name>'");

    LeveledDigraph g;
    g.name = lines[0].tokens[1];
    for (std::size_t at = 1; at < lines.size(); ++at) {
        const Line& line = lines[at];
        if (line.tokens[0] == "vertex") {
            if (line.tokens.size() < 6 || line.tokens[2] != "level" || line.tokens[4] != "role")
                throw ParseError(line.number,
                    "expected 'vertex <id> level <int> role <role> [label <text>] [cost <value>]'");
            DigraphVertex v;
            v.id = line.tokens[1];
            try {
                v.level = std::stol(line.tokens[3]);
            } catch (...) {
                throw ParseError(line.number, "bad level '" + line.tokens[3] + "'");
            }
            try {
                v.role = role_from_name(line.tokens[5]);
            } catch (const Error& e) {
                throw SemanticError(line.number, e.what());
            }
            std::size_t rest = 6;
            if (rest < line.tokens.size() && line.tokens[rest] == "label") {
                if (rest + 1 >= line.tokens.size())
                    throw ParseError(line.number, "label keyword without text");
                v.label = line.tokens[rest + 1];
                rest += 2;
            }
            if (rest < line.tokens.size() && line.tokens[rest] == "cost") {
                if (rest + 1 >= line.tokens.size())
                    throw ParseError(line.number, "cost keyword without value");
                v.cost = parse_value(line, line.tokens[rest + 1]);
                rest += 2;
            }
            if (rest != line.tokens.size())
                throw ParseError(line.number, "trailing tokens on vertex line");
            try {
                g.add_vertex(std::move(v));
            } catch (const Error& e) {
                throw SemanticError(line.number, e.what());
            }
        } else if (line.tokens[0] == "edge") {
            if (line.tokens.size() != 3)
                throw ParseError(line.number, "expected 'edge <from> <to>'");
            try {
                g.add_edge(line.tokens[1], line.tokens[2]);
            } catch (const Error& e) {
                throw SemanticError(line.number, e.what());
            }
        } else {
            throw ParseError(line.number, "expected a vertex or edge line");
        }
    }
    return g;
}

std::string serialize_digraph(const LeveledDigraph& g)
{
    std::ostringstream out;
    out << "digraph " << g.name << "\n";
    for (const auto& v : g.vertices()) {
        out << "vertex " << v.id << " level " << v.level << " role " << role_name(v.role);
        if (v.label)
            out << " label " << *v.label;
        if (v.cost)
            out << " cost " << v.cost->str();
        out << "\n";
    }
    for (const auto& [a, b] : g.edges())
        out << "edge " << g.vertex(a).id << " " << g.vertex(b).id << "\n";
    return out.str();
}

std::vector<Operation> parse_operations(const std::string& text)
{
    auto lines = tokenize(text);
    std::vector<Operation> out;
    std::size_t at = 0;
    while (at < lines.size()) {
        const Line& head = lines[at];
        if (head.tokens[0] != "operation" || head.tokens.size() != 4 || head.tokens[2] != "arity")
            throw ParseError(head.number, "expected 'operation <name> arity <k>'");
        std::string name = head.tokens[1];
        unsigned arity = 0;
        try {
            arity = static_cast<unsigned>(std::stoul(head.tokens[3]));
        } catch (...) {
            throw ParseError(head.number, "bad arity '" + head.tokens[3] + "'");
        }
        if (arity < 1)
            throw SemanticError(head.number, "arity must be at least 1");
        ++at;

        // rows first; the domain is the labels in argument order of first use
        std::vector<std::string> labels;
        auto label_index = [&](const std::string& l) {
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == l)
                    return i;
            labels.push_back(l);
            return labels.size() - 1;
        };
        struct Row {
            std::vector<std::size_t> args;
            std::size_t result;
            std::size_t number;
        };
        std::vector<Row> rows;
        bool closed = false;
        while (at < lines.size()) {
            const Line& row = lines[at];
            if (row.tokens[0] == "end" && row.tokens.size() == 1) {
                closed = true;
                ++at;
                break;
            }
            if (row.tokens.size() != arity + 2 || row.tokens[arity] != ":")
                throw ParseError(row.number,
                    "expected '<label>{" + std::to_string(arity) + "} : <label>'");
            Row r;
            r.number = row.number;
            for (unsigned i = 0; i < arity; ++i)
                r.args.push_back(label_index(row.tokens[i]));
            r.result = label_index(row.tokens[arity + 1]);
            rows.push_back(std::move(r));
        }
        if (!closed)
            throw ParseError(lines.back().number, "operation block not closed with 'end'");

        Domain domain{labels};
        try {
            domain.validate();
        } catch (const Error& e) {
            throw SemanticError(head.number, e.what());
        }
        std::size_t size = checked_pow(domain.size(), arity, std::size_t(1) << 27);
        std::vector<std::size_t> table(size, size);
        for (const auto& r : rows) {
            std::size_t idx = pack_tuple(r.args, domain.size());
            if (table[idx] != size)
                throw SemanticError(r.number, "duplicate tuple");
            table[idx] = r.result;
        }
        for (std::size_t i = 0; i < size; ++i)
            if (table[i] == size)
                throw SemanticError(head.number, "operation '" + name + "' is not total");
        out.push_back(Operation{std::move(name), std::move(domain), arity, std::move(table)});
    }
    return out;
}

std::string serialize_operation(const Operation& op)
{
    std::ostringstream out;
    out << "operation " << op.name << " arity " << op.arity << "\n";
    std::vector<std::size_t> tuple(op.arity);
    for (std::size_t idx = 0; idx < op.table.size(); ++idx) {
        unpack_tuple(idx, op.domain.size(), tuple);
        out << " ";
        for (std::size_t c : tuple)
            out << " " << op.domain.labels[c];
        out << " : " << op.domain.labels[op.table[idx]] << "\n";
    }
    out << "end\n";
    return out.str();
}

std::string serialize_operations(const std::vector<Operation>& ops)
{
    std::string out;
    for (const auto& op : ops)
        out += serialize_operation(op);
    return out;
}

FpolDocument parse_fpol(const std::string& text)
{
    auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens[0] != "fpol" || lines[0].tokens.size() != 1)
        throw ParseError(lines.empty() ? 1 : lines[0].number, "expected 'fpol'");
    FpolDocument doc;
    Rational sum(0);
    for (std::size_t at = 1; at < lines.size(); ++at) {
        const Line& line = lines[at];
        if (line.tokens.size() != 4 || line.tokens[0] != "weight" || line.tokens[2] != "operation")
            throw ParseError(line.number, "expected 'weight <value> operation <opname>'");
        ExtValue w = parse_value(line, line.tokens[1]);
        if (w.is_infinite() || w.rational() <= 0)
            throw SemanticError(line.number, "weights must be positive rationals");
        for (const auto& [weight, name] : doc)
            if (name == line.tokens[3])
                throw SemanticError(line.number, "duplicate operation '" + line.tokens[3] + "'");
        doc.emplace_back(w.rational(), line.tokens[3]);
        sum += w.rational();
    }
    if (sum != 1)
        throw SemanticError("fpol weights sum to " + rational_str(sum) + ", expected 1");
    return doc;
}

std::string serialize_fpol(const FpolDocument& doc)
{
    std::ostringstream out;
    out << "fpol\n";
    for (const auto& [w, name] : doc)
        out << "weight " << rational_str(w) << " operation " << name << "\n";
    return out.str();
}

FractionalPolymorphism bind_fpol(const FpolDocument& doc, const std::vector<Operation>& ops)
{
    FractionalPolymorphism w;
    for (const auto& [weight, name] : doc) {
        const Operation* found = nullptr;
        for (const auto& op : ops)
            if (op.name == name)
                found = &op;
        if (!found)
            throw UnknownSymbol("no operation named '" + name + "'");
        w.terms.emplace_back(*found, weight);
    }
    w.validate();
    return w;
}

std::string serialize_solution(const Solution& s, const std::vector<std::string>& variables,
    const Domain& domain)
{
    if (!s.feasible)
        return "infeasible\n";
    std::ostringstream out;
    out << "optimum " << s.optimum.str() << "\n";
    for (std::size_t v = 0; v < variables.size(); ++v)
        out << "assign " << variables[v] << " " << domain.labels[s.assignment[v]] << "\n";
    return out.str();
}

Solution parse_solution(const std::string& text, const std::vector<std::string>& variables,
    const Domain& domain)
{
    auto lines = tokenize(text);
    Solution s;
    if (lines.empty())
        throw ParseError(1, "empty solution");
    if (lines[0].tokens[0] == "infeasible")
        return s;
    if (lines[0].tokens[0] != "optimum" || lines[0].tokens.size() != 2)
        throw ParseError(lines[0].number, "expected 'optimum <value>' or 'infeasible'");
    s.feasible = true;
    s.optimum = parse_value(lines[0], lines[0].tokens[1]);
    s.assignment.assign(variables.size(), 0);
    std::vector<char> seen(variables.size(), 0);
    for (std::size_t at = 1; at < lines.size(); ++at) {
        const Line& line = lines[at];
        if (line.tokens.size() != 3 || line.tokens[0] != "assign")
            throw ParseError(line.number, "expected 'assign <var> <label>'");
        auto vi = std::find(variables.begin(), variables.end(), line.tokens[1]);
        if (vi == variables.end())
            throw SemanticError(line.number, "unknown variable '" + line.tokens[1] + "'");
        auto li = domain.find(line.tokens[2]);
        if (!li)
            throw SemanticError(line.number, "unknown label '" + line.tokens[2] + "'");
        s.assignment[vi - variables.begin()] = *li;
        seen[vi - variables.begin()] = 1;
    }
    for (std::size_t v = 0; v < variables.size(); ++v)
        if (!seen[v])
            throw SemanticError("assignment is not total: missing '" + variables[v] + "'");
    return s;
}

} // namespace vcsp
