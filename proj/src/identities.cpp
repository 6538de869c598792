#include "vcsp/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace vcsp {

namespace {

void collect_symbols(const Term& t, std::set<std::string>& ops, std::vector<std::string>& vars)
{
    if (t.is_variable()) {
        if (std::find(vars.begin(), vars.end(), t.head) == vars.end())
            vars.push_back(t.head);
        return;
    }
    ops.insert(t.head);
    for (const auto& a : t.args)
        collect_symbols(a, ops, vars);
}

unsigned count_ops(const Term& t)
{
    if (t.is_variable())
        return 0;
    unsigned n = 1;
    for (const auto& a : t.args)
        n += count_ops(a);
    return n;
}

std::size_t eval_term(const Term& t, const std::map<std::string, Operation>& interp,
    const std::map<std::string, std::size_t>& assignment)
{
    if (t.is_variable()) {
        auto it = assignment.find(t.head);
        if (it == assignment.end())
            throw UnknownSymbol("unbound variable '" + t.head + "'");
        return it->second;
    }
    auto it = interp.find(t.head);
    if (it == interp.end())
        throw UnknownSymbol("no operation bound to symbol '" + t.head + "'");
    const Operation& op = it->second;
    if (op.arity != t.args.size())
        throw ArityMismatch("symbol '" + t.head + "' used with " + std::to_string(t.args.size())
            + " arguments, operation has arity " + std::to_string(op.arity));
    std::vector<std::size_t> args;
    args.reserve(t.args.size());
    for (const auto& a : t.args)
        args.push_back(eval_term(a, interp, assignment));
    return op.apply(args);
}

struct TermParser {
    const std::string& s;
    std::size_t pos = 0;

    void skip()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }

    std::string ident()
    {
        skip();
        std::size_t start = pos;
        while (pos < s.size()
            && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '\''))
            ++pos;
        if (start == pos)
            throw ParseError(1, "expected an identifier at position " + std::to_string(pos));
        return s.substr(start, pos - start);
    }

    Term term()
    {
        Term t;
        t.head = ident();
        skip();
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            while (true) {
                t.args.push_back(term());
                skip();
                if (pos < s.size() && s[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (pos < s.size() && s[pos] == ')') {
                    ++pos;
                    break;
                }
                throw ParseError(1, "expected ',' or ')' in term");
            }
            if (t.args.empty())
                throw ParseError(1, "empty argument list");
        }
        return t;
    }
};

} // namespace

bool Identity::is_linear() const
{
    return count_ops(lhs) <= 1 && count_ops(rhs) <= 1;
}

bool Identity::is_balanced() const
{
    std::set<std::string> ops;
    std::vector<std::string> lv, rv;
    collect_symbols(lhs, ops, lv);
    collect_symbols(rhs, ops, rv);
    return std::set<std::string>(lv.begin(), lv.end()) == std::set<std::string>(rv.begin(), rv.end());
}

Identity parse_identity(const std::string& text)
{
    std::string body = text;
    // optional leading keyword
    std::size_t start = body.find_first_not_of(" \t");
    if (start != std::string::npos && body.compare(start, 8, "identity") == 0
        && (start + 8 == body.size() || std::isspace(static_cast<unsigned char>(body[start + 8]))))
        body = body.substr(start + 8);

    auto eq = body.find('=');
    if (eq == std::string::npos)
        throw ParseError(1, "identity must contain '='");
    TermParser left{body.substr(0, eq)};
    TermParser right{body.substr(eq + 1)};
    Identity idt{left.term(), right.term()};
    left.skip();
    if (left.pos != left.s.size())
        throw ParseError(1, "trailing text after the left term");
    right.skip();
    if (right.pos != right.s.size())
        throw ParseError(1, "trailing text after the right term");
    return idt;
}

std::string term_str(const Term& t)
{
    if (t.is_variable())
        return t.head;
    std::string s = t.head + "(";
    for (std::size_t i = 0; i < t.args.size(); ++i)
        s += (i ? "," : "") + term_str(t.args[i]);
    return s + ")";
}

std::string identity_str(const Identity& idt)
{
    return term_str(idt.lhs) + " = " + term_str(idt.rhs);
}

bool check_identity(const Identity& idt, const std::map<std::string, Operation>& interpretation)
{
    std::set<std::string> ops;
    std::vector<std::string> vars;
    collect_symbols(idt.lhs, ops, vars);
    collect_symbols(idt.rhs, ops, vars);

    const Domain* domain = nullptr;
    for (const auto& sym : ops) {
        auto it = interpretation.find(sym);
        if (it == interpretation.end())
            throw UnknownSymbol("no operation bound to symbol '" + sym + "'");
        if (domain && it->second.domain != *domain)
            throw DomainMismatch("interpretation operations use different domains");
        domain = &it->second.domain;
    }
    if (!domain) // no operation symbols at all
        return term_str(idt.lhs) == term_str(idt.rhs);

    const std::size_t d = domain->size();
    checked_pow(d, static_cast<unsigned>(vars.size()), 20'000'000);
    std::vector<std::size_t> labels(vars.size(), 0);
    while (true) {
        std::map<std::string, std::size_t> assignment;
        for (std::size_t i = 0; i < vars.size(); ++i)
            assignment[vars[i]] = labels[i];
        if (eval_term(idt.lhs, interpretation, assignment)
            != eval_term(idt.rhs, interpretation, assignment))
            return false;
        std::size_t pos = vars.size();
        while (pos > 0) {
            if (++labels[pos - 1] < d)
                break;
            labels[--pos] = 0;
        }
        if (pos == 0)
            break;
    }
    return true;
}

IdentityFamily family_from_name(std::string_view name)
{
    if (name == "idempotent")
        return IdentityFamily::Idempotent;
    if (name == "wnu")
        return IdentityFamily::Wnu;
    if (name == "cyclic")
        return IdentityFamily::Cyclic;
    if (name == "symmetric")
        return IdentityFamily::Symmetric;
    if (name == "edge")
        return IdentityFamily::Edge;
    throw SemanticError("unknown identity family '" + std::string(name) + "'");
}

std::string family_name(IdentityFamily f)
{
    switch (f) {
    case IdentityFamily::Idempotent: return "idempotent";
    case IdentityFamily::Wnu: return "wnu";
    case IdentityFamily::Cyclic: return "cyclic";
    case IdentityFamily::Symmetric: return "symmetric";
    case IdentityFamily::Edge: return "edge";
    }
    throw Error("bad family");
}

namespace {

Term var(const std::string& name) { return Term{name, {}}; }

Term apply_f(unsigned arity, const std::vector<std::pair<unsigned, std::string>>& special,
    const std::string& rest)
{
    // rest everywhere except the listed 1-based positions
    Term t{"f", {}};
    t.args.assign(arity, var(rest));
    for (const auto& [pos, name] : special)
        t.args[pos - 1] = var(name);
    return t;
}

} // namespace

std::vector<Identity> family_identities(IdentityFamily family, unsigned arity)
{
    std::vector<Identity> out;
    switch (family) {
    case IdentityFamily::Idempotent: {
        if (arity < 1)
            throw ArityMismatch("idempotency needs arity >= 1");
        out.push_back(Identity{apply_f(arity, {}, "x"), var("x")});
        break;
    }
    case IdentityFamily::Wnu: {
        if (arity < 2)
            throw ArityMismatch("weak near unanimity needs arity >= 2");
        out.push_back(Identity{apply_f(arity, {}, "x"), var("x")});
        for (unsigned i = 2; i <= arity; ++i)
            out.push_back(Identity{
                apply_f(arity, {{i - 1, "y"}}, "x"), apply_f(arity, {{i, "y"}}, "x")});
        break;
    }
    case IdentityFamily::Cyclic: {
        if (arity < 2)
            throw ArityMismatch("cyclic needs arity >= 2");
        Term lhs{"f", {}}, rhs{"f", {}};
        for (unsigned i = 1; i <= arity; ++i) {
            lhs.args.push_back(var("x" + std::to_string(i)));
            rhs.args.push_back(var("x" + std::to_string(i % arity + 1)));
        }
        out.push_back(Identity{lhs, rhs});
        break;
    }
    case IdentityFamily::Symmetric: {
        if (arity < 2)
            throw ArityMismatch("symmetric needs arity >= 2");
        // adjacent transpositions generate all permutations
        for (unsigned i = 1; i < arity; ++i) {
            Term lhs{"f", {}}, rhs{"f", {}};
            for (unsigned j = 1; j <= arity; ++j) {
                lhs.args.push_back(var("x" + std::to_string(j)));
                unsigned jj = j == i ? i + 1 : (j == i + 1 ? i : j);
                rhs.args.push_back(var("x" + std::to_string(jj)));
            }
            out.push_back(Identity{lhs, rhs});
        }
        break;
    }
    case IdentityFamily::Edge: {
        if (arity < 3)
            throw ArityMismatch("edge needs arity >= 3");
        out.push_back(Identity{apply_f(arity, {{1, "y"}, {2, "y"}}, "x"), var("x")});
        out.push_back(Identity{apply_f(arity, {{1, "y"}, {3, "y"}}, "x"), var("x")});
        for (unsigned i = 4; i <= arity; ++i)
            out.push_back(Identity{apply_f(arity, {{i, "y"}}, "x"), var("x")});
        break;
    }
    }
    return out;
}

bool satisfies_family(const Operation& f, IdentityFamily family)
{
    std::map<std::string, Operation> interp{{"f", f}};
    for (const auto& idt : family_identities(family, f.arity))
        if (!check_identity(idt, interp))
            return false;
    return true;
}

} // namespace vcsp
