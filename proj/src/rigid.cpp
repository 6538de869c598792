#include "vcsp/algebra.hpp"

#include <algorithm>

#include "vcsp/simplex.hpp"

namespace vcsp {

namespace {

bool endo_revise(const LeveledDigraph& g, std::vector<std::vector<char>>& cand)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [u, v] : g.edges()) {
            for (std::size_t a = 0; a < g.size(); ++a) {
                if (!cand[u][a])
                    continue;
                bool ok = false;
                for (std::size_t b : g.out(a))
                    if (cand[v][b]) { ok = true; break; }
                if (!ok) { cand[u][a] = 0; changed = true; }
            }
            for (std::size_t b = 0; b < g.size(); ++b) {
                if (!cand[v][b])
                    continue;
                bool ok = false;
                for (std::size_t a : g.in(b))
                    if (cand[u][a]) { ok = true; break; }
                if (!ok) { cand[v][b] = 0; changed = true; }
            }
        }
    }
    for (const auto& row : cand)
        if (std::find(row.begin(), row.end(), char(1)) == row.end())
            return false;
    return true;
}

void endo_search(const LeveledDigraph& g, std::vector<std::vector<char>> cand, std::size_t depth,
    std::vector<std::size_t>& image, std::vector<std::vector<std::size_t>>& found,
    std::uint64_t& nodes, std::uint64_t budget)
{
    if (++nodes > budget)
        throw BudgetExceeded("endomorphism enumeration exceeded node budget");
    if (depth == g.size()) {
        found.push_back(image);
        return;
    }
    for (std::size_t t = 0; t < g.size(); ++t) {
        if (!cand[depth][t])
            continue;
        auto next = cand;
        for (std::size_t o = 0; o < g.size(); ++o)
            next[depth][o] = (o == t);
        if (!endo_revise(g, next))
            continue;
        image[depth] = t;
        endo_search(g, std::move(next), depth + 1, image, found, nodes, budget);
    }
}

} // namespace

std::vector<Operation> digraph_endomorphisms(const LeveledDigraph& g, const EnumerationBudget& budget)
{
    Domain d;
    for (const auto& v : g.vertices())
        d.labels.push_back(v.id);

    std::vector<Operation> out;
    if (g.size() == 0)
        return out;

    std::vector<std::vector<char>> cand(g.size(), std::vector<char>(g.size(), 1));
    std::vector<std::size_t> image(g.size(), 0);
    std::vector<std::vector<std::size_t>> found;
    std::uint64_t nodes = 0;
    if (endo_revise(g, cand))
        endo_search(g, std::move(cand), 0, image, found, nodes, budget.max_nodes);

    for (std::size_t i = 0; i < found.size(); ++i)
        out.push_back(Operation{"endo" + std::to_string(i), d, 1, std::move(found[i])});
    return out;
}

namespace {

// max weight assignable to `target` over distributions on `ops` subject to
// sum_f w(f) * values[f][row] <= bound[row]
bool support_lp(const std::vector<std::vector<Rational>>& values,
    const std::vector<Rational>& bounds, std::size_t target)
{
    const std::size_t nops = values.size();
    const std::size_t rows = bounds.size();

    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<Rational> row(nops);
        for (std::size_t f = 0; f < nops; ++f)
            row[f] = values[f][r];
        a.push_back(std::move(row));
        b.push_back(bounds[r]);
    }
    // sum w = 1 as two inequalities
    a.emplace_back(nops, Rational(1));
    b.emplace_back(1);
    a.emplace_back(nops, Rational(-1));
    b.emplace_back(-1);

    std::vector<Rational> c(nops, Rational(0));
    c[target] = 1;
    LpResult lp = simplex_maximize(a, b, c);
    if (lp.status == LpResult::Status::Unbounded)
        throw InternalCheckFailed("support LP unbounded");
    return lp.status == LpResult::Status::Optimal && lp.value > 0;
}

} // namespace

bool unary_support_contains(const Operation& g, const Language& gamma, const EnumerationBudget& budget)
{
    if (g.domain != gamma.domain)
        throw DomainMismatch("operation domain differs from the language domain");
    if (g.arity != 1)
        throw ArityMismatch("unary_support_contains expects a unary operation");

    auto ops = polymorphisms(gamma, 1, budget);
    std::size_t target = ops.size();
    for (std::size_t i = 0; i < ops.size(); ++i)
        if (ops[i].table == g.table)
            target = i;
    if (target == ops.size())
        return false; // not even a polymorphism

    // rows: one inequality per function and feasible tuple
    std::vector<std::vector<Rational>> values(ops.size());
    std::vector<Rational> bounds;
    const std::size_t dsize = gamma.domain.size();
    for (const auto& phi : gamma.functions) {
        for (std::size_t idx : phi.feasible_indices()) {
            std::vector<std::size_t> t(phi.arity());
            unpack_tuple(idx, dsize, t);
            for (std::size_t f = 0; f < ops.size(); ++f) {
                std::size_t image = 0;
                for (std::size_t c = 0; c < t.size(); ++c)
                    image = image * dsize + ops[f].table[t[c]];
                const ExtValue& v = phi.at_index(image);
                if (v.is_infinite())
                    throw InternalCheckFailed("polymorphism image leaves Feas");
                values[f].push_back(v.rational());
            }
            bounds.push_back(phi.at_index(idx).rational());
        }
    }
    return support_lp(values, bounds, target);
}

bool is_rigid_core(const Language& gamma, const EnumerationBudget& budget)
{
    auto ops = polymorphisms(gamma, 1, budget);
    Operation id = identity_operation(gamma.domain);
    for (const auto& g : ops)
        if (g.table != id.table && unary_support_contains(g, gamma, budget))
            return false;
    return true;
}

bool is_rigid_core_extdual(const ExtDualLanguage& e, const EnumerationBudget& budget)
{
    auto ops = digraph_endomorphisms(e.digraph, budget);
    const CostFunction& mu = e.mu();
    const std::size_t n = e.digraph.size();

    // the binary relation contributes no inequalities; mu is total, one row
    // per vertex
    std::vector<std::vector<Rational>> values(ops.size());
    std::vector<Rational> bounds;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t f = 0; f < ops.size(); ++f)
            values[f].push_back(mu.at_index(ops[f].table[v]).rational());
        bounds.push_back(mu.at_index(v).rational());
    }

    std::vector<std::size_t> id(n);
    for (std::size_t v = 0; v < n; ++v)
        id[v] = v;
    for (std::size_t g = 0; g < ops.size(); ++g) {
        if (ops[g].table == id)
            continue;
        if (support_lp(values, bounds, g))
            return false;
    }
    return true;
}

BaseRestriction restrict_to_base(const Operation& fe, const ExtDualLanguage& e)
{
    const Domain& base = e.combined.source->domain;
    const std::size_t dsize = base.size();
    if (fe.domain.size() != e.digraph.size())
        throw DomainMismatch("operation is not over the extended dual vertices");

    // base vertices occupy the first |D| positions of the vertex domain
    for (std::size_t b = 0; b < dsize; ++b)
        if (e.base_vertex[b] != b || fe.domain.labels[b] != base.labels[b])
            throw DomainMismatch("vertex domain does not start with the base labels");

    const unsigned k = fe.arity;
    std::size_t size = checked_pow(dsize, k, std::uint64_t(1) << 27);
    BaseRestriction out{Operation{fe.name + "_base", base, k, std::vector<std::size_t>(size)}, false};
    std::vector<std::size_t> tuple(k);
    for (std::size_t idx = 0; idx < size; ++idx) {
        unpack_tuple(idx, dsize, tuple);
        std::size_t image = fe.table[pack_tuple(tuple, fe.domain.size())];
        if (image >= dsize)
            throw NotClosed("restriction leaves the base vertices at "
                + tuple_label(base, tuple));
        out.op.table[idx] = image;
    }
    out.in_pol_gamma = is_polymorphism(out.op, *e.combined.source);
    return out;
}

} // namespace vcsp
