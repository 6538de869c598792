#include "vcsp/extdual.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

namespace vcsp {

namespace {

std::string fresh_name(const Instance& instance, std::string base)
{
    while (instance.find_variable(base))
        base = "_" + base;
    return base;
}

std::string fresh_vertex_id(const LeveledDigraph& g, std::string base)
{
    while (g.find_vertex(base))
        base = "_" + base;
    return base;
}

// position map of the canonical fold from the path with single-edge
// segments `src` onto the one with segments `tgt`; requires src <= tgt.
// Zigzag segments fold onto single edges, everything else maps in place.
std::vector<std::size_t> fold_positions(unsigned m, const std::set<unsigned>& src,
    const std::set<unsigned>& tgt)
{
    std::vector<std::size_t> map;
    std::size_t t = 0;
    map.push_back(0);
    auto advance = [&](std::size_t steps) { t += steps; map.push_back(t); };

    advance(1); // leading edge
    for (unsigned i = 1; i <= m; ++i) {
        bool src_edge = src.count(i) > 0;
        bool tgt_edge = tgt.count(i) > 0;
        if (src_edge && !tgt_edge)
            throw InternalCheckFailed("fold target must contain the source's single-edge segments");
        if (src_edge) {
            advance(1);
        } else if (!tgt_edge) {
            advance(1); // zigzag onto zigzag, in place
            advance(1);
            advance(1);
        } else {
            // zigzag folds onto the single edge: positions p,p+1,p,p+1
            std::size_t base = t;
            map.push_back(base + 1);
            map.push_back(base);
            map.push_back(base + 1);
            t = base + 1;
        }
    }
    advance(1); // trailing edge
    return map;
}

} // namespace

ExtDualInstance extdual_encode(const ExtDualLanguage& e, const Instance& instance)
{
    if (!instance.language || !same_language(*instance.language, *e.combined.combined))
        throw WrongLanguage("extdual_encode expects an instance over {phi_gamma}");

    const unsigned m = e.m();
    ExtDualInstance out;
    out.instance = Instance{e.as_language, instance.name + "_extdual", {}, {}};

    for (const auto& v : instance.variables) {
        out.instance.variables.push_back(fresh_name(out.instance, v));
        out.variable_of_original.push_back(out.instance.variables.size() - 1);
    }
    for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
        out.instance.variables.push_back(fresh_name(out.instance, "x'" + std::to_string(i + 1)));
        out.top_of_constraint.push_back(out.instance.variables.size() - 1);
    }

    out.path_chains.assign(instance.constraints.size(), {});
    for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
        const auto& scope = instance.constraints[i].scope;
        out.path_chains[i].assign(m, {});
        for (unsigned j = 1; j <= m; ++j) {
            OrientedPath q = oriented_path(m, {j});
            std::vector<std::size_t> chain(q.vertex_count());
            chain.front() = out.variable_of_original[scope[j - 1]];
            chain.back() = out.top_of_constraint[i];
            for (std::size_t k = 1; k + 1 < q.vertex_count(); ++k) {
                out.instance.variables.push_back(fresh_name(out.instance,
                    "q" + std::to_string(i + 1) + "_" + std::to_string(j) + "_" + std::to_string(k)));
                chain[k] = out.instance.variables.size() - 1;
            }
            for (const auto& [a, b] : q.edges)
                out.instance.add_constraint("d_gamma", std::vector<std::size_t>{chain[a], chain[b]});
            out.path_chains[i][j - 1] = std::move(chain);
        }
    }
    for (std::size_t i = 0; i < instance.constraints.size(); ++i)
        out.instance.add_constraint("mu", std::vector<std::size_t>{out.top_of_constraint[i]});
    return out;
}

Assignment extdual_assignment(const ExtDualLanguage& e, const Instance& original,
    const ExtDualInstance& encoded, const Assignment& a)
{
    const unsigned m = e.m();
    const std::size_t dsize = e.combined.source->domain.size();
    Assignment out(encoded.instance.variables.size(), 0);

    for (std::size_t v = 0; v < original.variables.size(); ++v)
        out[encoded.variable_of_original[v]] = e.base_vertex[a[v]];

    for (std::size_t i = 0; i < original.constraints.size(); ++i) {
        const auto& scope = original.constraints[i].scope;
        std::vector<std::size_t> tuple;
        for (std::size_t v : scope)
            tuple.push_back(a[v]);
        std::size_t ti = e.dprime_tuples.size();
        for (std::size_t t = 0; t < e.dprime_tuples.size(); ++t)
            if (e.dprime_tuples[t] == tuple)
                ti = t;
        if (ti == e.dprime_tuples.size())
            throw SemanticError("assignment is infeasible: scope tuple outside Feas(phi_gamma)");
        out[encoded.top_of_constraint[i]] = e.tuple_vertex[ti];

        for (unsigned j = 1; j <= m; ++j) {
            std::size_t d = a[scope[j - 1]];
            auto fold = fold_positions(m, {j}, e.forced_segments(ti, d));
            const auto& target_chain = e.path_vertices[ti][d];
            const auto& source_chain = encoded.path_chains[i][j - 1];
            for (std::size_t k = 0; k < source_chain.size(); ++k)
                out[source_chain[k]] = target_chain[fold[k]];
        }
    }
    (void)dsize;
    return out;
}

bool level_hom_exists(const LeveledDigraph& source, const OrientedPath& q)
{
    const std::size_t n = source.size();
    const std::size_t t = q.vertex_count();
    if (n == 0)
        return true;
    std::vector<std::vector<char>> cand(n, std::vector<char>(t, 0));
    for (std::size_t v = 0; v < n; ++v) {
        bool any = false;
        for (std::size_t p = 0; p < t; ++p)
            if (q.levels[p] == source.vertex(v).level) {
                cand[v][p] = 1;
                any = true;
            }
        if (!any)
            return false;
    }

    std::vector<std::vector<char>> qadj(t, std::vector<char>(t, 0));
    for (const auto& [a, b] : q.edges)
        qadj[a][b] = 1;

    auto revise = [&](std::vector<std::vector<char>>& state) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& [u, v] : source.edges()) {
                for (std::size_t p = 0; p < t; ++p) {
                    if (state[u][p]) {
                        bool ok = false;
                        for (std::size_t r = 0; r < t; ++r)
                            if (qadj[p][r] && state[v][r]) { ok = true; break; }
                        if (!ok) { state[u][p] = 0; changed = true; }
                    }
                    if (state[v][p]) {
                        bool ok = false;
                        for (std::size_t r = 0; r < t; ++r)
                            if (qadj[r][p] && state[u][r]) { ok = true; break; }
                        if (!ok) { state[v][p] = 0; changed = true; }
                    }
                }
            }
        }
        for (const auto& row : state)
            if (std::find(row.begin(), row.end(), char(1)) == row.end())
                return false;
        return true;
    };

    auto search = [&](auto&& self, std::vector<std::vector<char>> state, std::size_t depth) -> bool {
        if (depth == n)
            return true;
        for (std::size_t p = 0; p < t; ++p) {
            if (!state[depth][p])
                continue;
            auto next = state;
            for (std::size_t r = 0; r < t; ++r)
                next[depth][r] = (r == p);
            if (revise(next) && self(self, std::move(next), depth + 1))
                return true;
        }
        return false;
    };

    if (!revise(cand))
        return false;
    return search(search, std::move(cand), 0);
}

std::set<unsigned> compute_s0(const LeveledDigraph& anchored_component, unsigned m)
{
    std::set<unsigned> all;
    for (unsigned i = 1; i <= m; ++i)
        all.insert(i);
    if (!level_hom_exists(anchored_component, oriented_path(m, all)))
        throw NotApplicable("component does not map into any oriented path of the target");

    std::set<unsigned> s0;
    for (unsigned i = 1; i <= m; ++i) {
        std::set<unsigned> without = all;
        without.erase(i);
        if (!level_hom_exists(anchored_component, oriented_path(m, without)))
            s0.insert(i);
    }
    return s0;
}

namespace {

struct ScopeGraph {
    LeveledDigraph graph; // vertex ids are instance variable names
    std::vector<std::size_t> instance_var; // graph vertex -> instance variable
};

std::vector<std::size_t> mu_counts(const Instance& instance)
{
    std::vector<std::size_t> counts(instance.variables.size(), 0);
    for (const auto& c : instance.constraints)
        if (instance.language->functions[c.function].arity() == 1)
            ++counts[c.scope[0]];
    return counts;
}

// exact solve of one scope-graph component as a minimum-cost homomorphism
// into the full target digraph (the never-wrong fallback)
Solution exact_component_solve(const ExtDualLanguage& e, const ScopeGraph& sg,
    const std::vector<std::size_t>& comp, const std::vector<std::size_t>& mu_count,
    const SolveBudget& budget)
{
    LeveledDigraph source = sg.graph.induced(comp);
    std::vector<std::vector<ExtValue>> costs(comp.size(),
        std::vector<ExtValue>(e.digraph.size(), ExtValue(0)));
    for (std::size_t i = 0; i < comp.size(); ++i) {
        std::size_t occ = mu_count[sg.instance_var[comp[i]]];
        if (occ == 0)
            continue;
        for (std::size_t t = 0; t < e.digraph.size(); ++t)
            costs[i][t] = e.mu().at_index(t).scaled(Rational(occ));
    }
    return min_cost_hom(source, e.digraph, costs, budget);
}

struct BandSolve {
    bool feasible = false;
    ExtValue optimum{0};
    std::vector<std::pair<std::size_t, std::size_t>> labels; // (instance var, target vertex)
    bool fallback = false;
};

// component height strictly below the target's: try every level offset and
// every connected band of the target; each band restriction is solved by
// the chain min-cut, with the exact homomorphism solver as fallback.
BandSolve solve_low_component(const ExtDualLanguage& e, const ScopeGraph& sg,
    const std::vector<std::size_t>& comp, const std::vector<long>& levels, long height,
    const std::vector<std::size_t>& mu_count, const SolveBudget& budget)
{
    BandSolve best;
    const LeveledDigraph& target = e.digraph;
    const long target_height = static_cast<long>(e.m()) + 2;

    // chain key: level, then owning path, then distance along it
    std::vector<std::tuple<long, std::size_t, std::size_t>> key(target.size(),
        {0, static_cast<std::size_t>(-1), static_cast<std::size_t>(-1)});
    for (std::size_t t = 0; t < e.path_vertices.size(); ++t)
        for (std::size_t b = 0; b < e.path_vertices[t].size(); ++b) {
            const auto& chain = e.path_vertices[t][b];
            std::size_t path_id = t * e.path_vertices[t].size() + b;
            for (std::size_t pos = 0; pos < chain.size(); ++pos) {
                auto& k = key[chain[pos]];
                if (std::get<1>(k) == static_cast<std::size_t>(-1)
                    || std::make_pair(path_id, pos)
                        < std::make_pair(std::get<1>(k), std::get<2>(k)))
                    k = {target.vertex(chain[pos]).level, path_id, pos};
            }
        }

    bool declined_somewhere = false;
    for (long offset = 0; offset + height <= target_height; ++offset) {
        std::vector<std::size_t> band;
        for (std::size_t v = 0; v < target.size(); ++v)
            if (target.vertex(v).level >= offset && target.vertex(v).level <= offset + height)
                band.push_back(v);
        if (band.empty())
            continue;
        LeveledDigraph banded = target.induced(band);
        for (const auto& piece : component_vertex_sets(banded)) {
            std::vector<std::size_t> chain;
            for (std::size_t local : piece)
                chain.push_back(band[local]);
            std::sort(chain.begin(), chain.end(),
                [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });

            bool usable = true;
            for (std::size_t ci : comp) {
                long want = offset + levels[ci];
                bool any = false;
                for (std::size_t v : chain)
                    if (target.vertex(v).level == want) { any = true; break; }
                if (!any) { usable = false; break; }
            }
            if (!usable)
                continue;

            Domain kd;
            for (std::size_t v : chain)
                kd.labels.push_back(target.vertex(v).id);
            const std::size_t ks = kd.size();

            CostFunction edge_rel = CostFunction::filled("edge", kd, 2, ExtValue::infinity());
            for (std::size_t i = 0; i < ks; ++i)
                for (std::size_t j = 0; j < ks; ++j)
                    if (target.has_edge(chain[i], chain[j]))
                        edge_rel.at_index(i * ks + j) = ExtValue(0);
            CostFunction mu_k = CostFunction::filled("mu", kd, 1, ExtValue(0));
            for (std::size_t i = 0; i < ks; ++i)
                mu_k.at_index(i) = e.mu().at_index(chain[i]);

            std::vector<CostFunction> fns{edge_rel, mu_k};
            std::map<long, std::size_t> level_fn;
            for (std::size_t ci : comp) {
                long want = offset + levels[ci];
                if (level_fn.count(want))
                    continue;
                CostFunction lv = CostFunction::filled("level" + std::to_string(want), kd, 1,
                    ExtValue::infinity());
                for (std::size_t i = 0; i < ks; ++i)
                    if (target.vertex(chain[i]).level == want)
                        lv.at_index(i) = ExtValue(0);
                level_fn[want] = fns.size();
                fns.push_back(std::move(lv));
            }

            LanguagePtr rl = make_language("band", kd, std::move(fns),
                LanguageOptions{.allow_identically_infinite = true});
            Instance restricted{rl, "band", {}, {}};
            std::vector<std::size_t> rvar(sg.graph.size(), static_cast<std::size_t>(-1));
            for (std::size_t ci : comp) {
                restricted.variables.push_back(sg.graph.vertex(ci).id);
                rvar[ci] = restricted.variables.size() - 1;
            }
            for (const auto& [u, v] : sg.graph.edges())
                if (rvar[u] != static_cast<std::size_t>(-1) && rvar[v] != static_cast<std::size_t>(-1))
                    restricted.add_constraint("edge", std::vector<std::size_t>{rvar[u], rvar[v]});
            for (std::size_t ci : comp) {
                restricted.add_constraint(rl->functions[level_fn[offset + levels[ci]]].name(),
                    std::vector<std::size_t>{rvar[ci]});
                for (std::size_t occ = 0; occ < mu_count[sg.instance_var[ci]]; ++occ)
                    restricted.add_constraint("mu", std::vector<std::size_t>{rvar[ci]});
            }

            std::vector<std::size_t> identity_order(ks);
            std::iota(identity_order.begin(), identity_order.end(), 0);

            Solution sol;
            bool solved = false;
            if (check_chain_submodular(edge_rel, identity_order)) {
                MincutResult mc = mincut_solve(restricted, identity_order);
                if (!mc.declined) {
                    sol = std::move(mc.solution);
                    solved = true;
                }
            }
            if (!solved) {
                declined_somewhere = true;
                continue; // handled by the exact fallback below
            }
            if (!sol.feasible)
                continue;
            if (!best.feasible || sol.optimum < best.optimum) {
                best.feasible = true;
                best.optimum = sol.optimum;
                best.labels.clear();
                for (std::size_t ci : comp)
                    best.labels.emplace_back(sg.instance_var[ci], chain[sol.assignment[rvar[ci]]]);
            }
        }
    }

    if (declined_somewhere) {
        // a band declined the chain solver: redo the whole component exactly
        Solution sol = exact_component_solve(e, sg, comp, mu_count, budget);
        BandSolve redo;
        redo.fallback = true;
        if (sol.feasible) {
            redo.feasible = true;
            redo.optimum = sol.optimum;
            for (std::size_t i = 0; i < comp.size(); ++i)
                redo.labels.emplace_back(sg.instance_var[comp[i]], sol.assignment[i]);
        }
        return redo;
    }
    return best;
}

// dual-side contribution of one full-height component
struct DualContribution {
    std::vector<std::size_t> tops; // scope-graph vertices, one dual variable each
    // (match k, match l, top a, top b) with canonical orientation
    std::vector<std::tuple<unsigned, unsigned, std::size_t, std::size_t>> matches;
    std::vector<ComponentAnalysis> analyses;
    bool infeasible = false;
    std::string reason;
    bool needs_exact_fallback = false;
};

DualContribution analyze_full_height_component(const ExtDualLanguage& e, const ScopeGraph& sg,
    const std::vector<std::size_t>& comp, const std::vector<long>& levels)
{
    const unsigned m = e.m();
    const long full_height = static_cast<long>(m) + 2;
    const std::size_t dsize = e.combined.source->domain.size();

    DualContribution out;
    std::vector<std::size_t> bottoms, middle;
    for (std::size_t v : comp) {
        if (levels[v] == full_height)
            out.tops.push_back(v);
        else if (levels[v] == 0)
            bottoms.push_back(v);
        else
            middle.push_back(v);
    }

    std::set<std::tuple<unsigned, unsigned, std::size_t, std::size_t>> emitted;
    auto emit = [&](unsigned k, unsigned l, std::size_t a, std::size_t b) {
        if (a > b || (a == b && k > l)) {
            std::swap(k, l);
            std::swap(a, b);
        }
        if (a == b && k == l)
            return; // trivially satisfied
        if (emitted.insert({k, l, a, b}).second)
            out.matches.emplace_back(k, l, a, b);
    };

    LeveledDigraph mid = sg.graph.induced(middle);
    for (const auto& mcomp : component_vertex_sets(mid)) {
        ComponentAnalysis ca;
        for (std::size_t local : mcomp)
            ca.vertices.push_back(middle[local]);

        std::set<std::size_t> members(ca.vertices.begin(), ca.vertices.end());
        std::set<std::size_t> tset, bset;
        std::set<std::size_t> bottom_attached, top_attached; // inside the component
        for (const auto& [a, b] : sg.graph.edges()) {
            if (members.count(a) && levels[b] == full_height) {
                tset.insert(b);
                top_attached.insert(a);
            }
            if (members.count(b) && levels[a] == 0) {
                bset.insert(a);
                bottom_attached.insert(b);
            }
        }
        ca.top_neighbors.assign(tset.begin(), tset.end());
        ca.bottom_neighbors.assign(bset.begin(), bset.end());

        // anchored copy: one synthetic source below, one synthetic sink above
        ca.anchored = sg.graph.induced(ca.vertices);
        for (std::size_t i = 0; i < ca.vertices.size(); ++i)
            ca.anchored.vertex(i).level = levels[ca.vertices[i]];
        if (!bottom_attached.empty()) {
            std::size_t b = ca.anchored.add_vertex(DigraphVertex{
                fresh_vertex_id(ca.anchored, "_bottom"), VertexRole::Internal, 0,
                std::nullopt, std::nullopt});
            for (std::size_t c : bottom_attached)
                ca.anchored.add_edge(b, ca.anchored.vertex_index(sg.graph.vertex(c).id));
        }
        if (!top_attached.empty()) {
            std::size_t t = ca.anchored.add_vertex(DigraphVertex{
                fresh_vertex_id(ca.anchored, "_top"), VertexRole::Internal, full_height,
                std::nullopt, std::nullopt});
            for (std::size_t c : top_attached)
                ca.anchored.add_edge(ca.anchored.vertex_index(sg.graph.vertex(c).id), t);
        }
        ca.s0 = compute_s0(ca.anchored, m);
        out.analyses.push_back(std::move(ca));
    }

    // rule 1: a component touching two tops forces equal labels
    for (const auto& ca : out.analyses)
        for (std::size_t i = 0; i < ca.top_neighbors.size(); ++i)
            for (std::size_t j = i + 1; j < ca.top_neighbors.size(); ++j)
                for (unsigned k = 1; k <= m; ++k)
                    emit(k, k, ca.top_neighbors[i], ca.top_neighbors[j]);

    // rule 2: two forced segments tie two coordinates of one label
    for (const auto& ca : out.analyses)
        if (ca.s0.size() >= 2)
            for (std::size_t t : ca.top_neighbors)
                for (auto ki = ca.s0.begin(); ki != ca.s0.end(); ++ki)
                    for (auto li = std::next(ki); li != ca.s0.end(); ++li)
                        emit(*ki, *li, t, t);

    // linking: bottoms feeding one component share their label
    std::map<std::size_t, std::size_t> link;
    for (std::size_t b : bottoms)
        link[b] = b;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (link[x] != x) {
            link[x] = link[link[x]];
            x = link[x];
        }
        return x;
    };
    for (const auto& ca : out.analyses)
        for (std::size_t i = 1; i < ca.bottom_neighbors.size(); ++i) {
            std::size_t a = find(ca.bottom_neighbors[0]), b = find(ca.bottom_neighbors[i]);
            if (a != b)
                link[std::max(a, b)] = std::min(a, b);
        }

    // cross links through a linked class
    std::map<std::size_t, std::vector<std::pair<std::size_t, unsigned>>> reach;
    std::map<std::size_t, std::vector<const ComponentAnalysis*>> bottom_only;
    for (const auto& ca : out.analyses) {
        if (ca.bottom_neighbors.empty() || ca.s0.empty())
            continue;
        std::size_t cls = find(ca.bottom_neighbors[0]);
        if (ca.top_neighbors.empty()) {
            bottom_only[cls].push_back(&ca);
            continue;
        }
        unsigned k = *ca.s0.begin();
        for (std::size_t t : ca.top_neighbors) {
            auto entry = std::make_pair(t, k);
            auto& vec = reach[cls];
            if (std::find(vec.begin(), vec.end(), entry) == vec.end())
                vec.push_back(entry);
        }
    }
    for (const auto& [cls, entries] : reach)
        for (std::size_t i = 0; i < entries.size(); ++i)
            for (std::size_t j = i + 1; j < entries.size(); ++j)
                emit(entries[i].second, entries[j].second, entries[i].first, entries[j].first);

    // a bottom-only component with forced segments restricts its class's
    // label to {d | some tuple agrees with d on the forced set}
    for (const auto& [cls, comps] : bottom_only) {
        std::vector<char> allowed(dsize, 1);
        for (const ComponentAnalysis* ca : comps)
            for (std::size_t d = 0; d < dsize; ++d) {
                if (!allowed[d])
                    continue;
                bool ok = false;
                for (std::size_t t = 0; t < e.dprime_tuples.size() && !ok; ++t) {
                    bool match = true;
                    for (unsigned k : ca->s0)
                        if (e.dprime_tuples[t][k - 1] != d) { match = false; break; }
                    ok = match;
                }
                if (!ok)
                    allowed[d] = 0;
            }
        if (std::find(allowed.begin(), allowed.end(), char(1)) == allowed.end()) {
            out.infeasible = true;
            out.reason = "no base label realizes a bottom-only component's forced set";
            return out;
        }
        bool restricted = std::find(allowed.begin(), allowed.end(), char(0)) != allowed.end();
        if (restricted && reach.count(cls)) {
            // the restriction also touches a top: not expressible with
            // match constraints, so this component is solved exactly
            out.needs_exact_fallback = true;
            return out;
        }
    }
    return out;
}

} // namespace

ReverseVerdict reverse_reduce(const ExtDualLanguage& e, const Instance& instance,
    const SolveBudget& budget)
{
    for (const auto& c : instance.constraints) {
        const auto& f = instance.language->functions[c.function];
        if (f.arity() == 2) {
            if (f.table() != e.relation().table())
                throw WrongLanguage("binary constraint '" + f.name() + "' is not the target relation");
        } else if (f.arity() == 1) {
            if (f.table() != e.mu().table())
                throw WrongLanguage("unary constraint '" + f.name() + "' is not the unary cost");
        } else {
            throw WrongLanguage("constraint arity " + std::to_string(f.arity()));
        }
    }

    const unsigned m = e.m();
    const long full_height = static_cast<long>(m) + 2;
    auto mu_count = mu_counts(instance);

    ReverseVerdict out;

    ScopeGraph sg;
    std::vector<char> in_graph(instance.variables.size(), 0);
    for (const auto& c : instance.constraints) {
        if (instance.language->functions[c.function].arity() != 2)
            continue;
        if (c.scope[0] == c.scope[1]) {
            out.reason = "self edge in the scope digraph (the target has no loops)";
            return out;
        }
        for (std::size_t v : c.scope)
            if (!in_graph[v]) {
                in_graph[v] = 1;
                sg.graph.add_vertex(DigraphVertex{instance.variables[v], VertexRole::Internal, 0,
                    std::nullopt, std::nullopt});
                sg.instance_var.push_back(v);
            }
        std::size_t a = sg.graph.vertex_index(instance.variables[c.scope[0]]);
        std::size_t b = sg.graph.vertex_index(instance.variables[c.scope[1]]);
        if (!sg.graph.has_edge(a, b))
            sg.graph.add_edge(a, b);
    }

    ExtValue offset(0);
    Assignment full_assignment(instance.variables.size(), 0);

    // isolated variables: only their unary constraints matter
    for (std::size_t v = 0; v < instance.variables.size(); ++v) {
        if (in_graph[v] || mu_count[v] == 0)
            continue;
        std::size_t arg = 0;
        ExtValue lo = ExtValue::infinity();
        for (std::size_t t = 0; t < e.digraph.size(); ++t) {
            ExtValue total = e.mu().at_index(t).scaled(Rational(mu_count[v]));
            if (total < lo) {
                lo = total;
                arg = t;
            }
        }
        offset += lo;
        full_assignment[v] = arg;
    }

    LevelResult lv = compute_levels(sg.graph);
    if (!lv.balanced) {
        out.reason = "scope digraph is unbalanced";
        return out;
    }

    DualLanguage dual = dual_language(e.combined);
    Instance dual_instance{dual.language, instance.name + "_reverse", {}, {}};

    for (const auto& comp : component_vertex_sets(sg.graph)) {
        long lo_level = lv.levels[comp.front()], hi_level = lo_level;
        for (std::size_t v : comp) {
            lo_level = std::min(lo_level, lv.levels[v]);
            hi_level = std::max(hi_level, lv.levels[v]);
        }
        std::vector<long> levels(sg.graph.size(), 0);
        for (std::size_t v : comp)
            levels[v] = lv.levels[v] - lo_level;
        long height = hi_level - lo_level;

        if (height > full_height) {
            out.reason = "scope digraph is higher than the target";
            return out;
        }

        if (height < full_height) {
            BandSolve sol = solve_low_component(e, sg, comp, levels, height, mu_count, budget);
            out.fallback = out.fallback || sol.fallback;
            if (!sol.feasible) {
                out.reason = "component admits no level-respecting embedding";
                return out;
            }
            offset += sol.optimum;
            for (const auto& [var, vertex] : sol.labels)
                full_assignment[var] = vertex;
            continue;
        }

        DualContribution dc = analyze_full_height_component(e, sg, comp, levels);
        if (dc.infeasible) {
            out.reason = dc.reason;
            return out;
        }
        if (dc.needs_exact_fallback) {
            Solution sol = exact_component_solve(e, sg, comp, mu_count, budget);
            out.fallback = true;
            if (!sol.feasible) {
                out.reason = "component is infeasible (exact fallback)";
                return out;
            }
            offset += sol.optimum;
            for (std::size_t i = 0; i < comp.size(); ++i)
                full_assignment[sg.instance_var[comp[i]]] = sol.assignment[i];
            continue;
        }

        std::map<std::size_t, std::size_t> dualvar;
        for (std::size_t t : dc.tops) {
            dual_instance.variables.push_back(sg.graph.vertex(t).id);
            dualvar[t] = dual_instance.variables.size() - 1;
            out.dual_variable_map.emplace_back(sg.graph.vertex(t).id, sg.graph.vertex(t).id);
            for (std::size_t occ = 0; occ < mu_count[sg.instance_var[t]]; ++occ)
                dual_instance.add_constraint("phi_prime", std::vector<std::size_t>{dualvar[t]});
        }
        for (const auto& [k, l, a, b] : dc.matches)
            dual_instance.add_constraint(dual.match(k, l).name(),
                std::vector<std::size_t>{dualvar[a], dualvar[b]});
        for (auto& ca : dc.analyses)
            out.analyses.push_back(std::move(ca));
    }

    if (dual_instance.variables.empty()) {
        if (offset.is_infinite()) {
            out.reason = "unary costs are infinite on every label";
            return out;
        }
        out.kind = ReverseVerdict::Kind::Solved;
        out.solution.feasible = true;
        out.solution.optimum = offset;
        out.solution.assignment = std::move(full_assignment);
        return out;
    }

    out.kind = ReverseVerdict::Kind::Dual;
    out.dual_language = std::move(dual);
    out.dual = std::move(dual_instance);
    out.offset = offset;
    return out;
}

} // namespace vcsp
