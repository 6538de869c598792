#include "vcsp/digraph.hpp"

#include <algorithm>
#include <deque>

namespace vcsp {

std::string role_name(VertexRole r)
{
    switch (r) {
    case VertexRole::Base: return "base";
    case VertexRole::Tuple: return "tuple";
    case VertexRole::Internal: return "internal";
    }
    throw Error("bad role");
}

VertexRole role_from_name(std::string_view s)
{
    if (s == "base")
        return VertexRole::Base;
    if (s == "tuple")
        return VertexRole::Tuple;
    if (s == "internal")
        return VertexRole::Internal;
    throw SemanticError("bad vertex role '" + std::string(s) + "'");
}

std::size_t LeveledDigraph::add_vertex(DigraphVertex v)
{
    if (find_vertex(v.id))
        throw SemanticError("duplicate vertex id '" + v.id + "'");
    vertices_.push_back(std::move(v));
    out_.emplace_back();
    in_.emplace_back();
    return vertices_.size() - 1;
}

void LeveledDigraph::add_edge(std::size_t from, std::size_t to)
{
    if (from >= size() || to >= size())
        throw IndexOutOfRange("edge endpoint out of range");
    if (from == to)
        throw SemanticError("self edge on '" + vertices_[from].id + "'");
    if (has_edge(from, to))
        throw SemanticError("parallel edge " + vertices_[from].id + " -> " + vertices_[to].id);
    edges_.emplace_back(from, to);
    out_[from].push_back(to);
    in_[to].push_back(from);
}

void LeveledDigraph::add_edge(std::string_view from, std::string_view to)
{
    add_edge(vertex_index(from), vertex_index(to));
}

std::optional<std::size_t> LeveledDigraph::find_vertex(std::string_view id) const
{
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].id == id)
            return i;
    return std::nullopt;
}

std::size_t LeveledDigraph::vertex_index(std::string_view id) const
{
    if (auto i = find_vertex(id))
        return *i;
    throw SemanticError("unknown vertex '" + std::string(id) + "'");
}

bool LeveledDigraph::has_edge(std::size_t from, std::size_t to) const
{
    return std::find(out_[from].begin(), out_[from].end(), to) != out_[from].end();
}

LeveledDigraph LeveledDigraph::induced(const std::vector<std::size_t>& keep) const
{
    LeveledDigraph g;
    g.name = name;
    std::vector<std::size_t> where(size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        where[keep[i]] = i;
        g.add_vertex(vertices_[keep[i]]);
    }
    for (const auto& [a, b] : edges_)
        if (where[a] != static_cast<std::size_t>(-1) && where[b] != static_cast<std::size_t>(-1))
            g.add_edge(where[a], where[b]);
    return g;
}

LevelResult compute_levels(const LeveledDigraph& g)
{
    LevelResult r;
    r.balanced = true;
    r.levels.assign(g.size(), 0);
    std::vector<char> seen(g.size(), 0);

    for (std::size_t root = 0; root < g.size(); ++root) {
        if (seen[root])
            continue;
        std::deque<std::size_t> queue{root};
        seen[root] = 1;
        r.levels[root] = 0;
        std::vector<std::size_t> comp{root};
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            auto visit = [&](std::size_t w, long lvl) {
                if (!seen[w]) {
                    seen[w] = 1;
                    r.levels[w] = lvl;
                    comp.push_back(w);
                    queue.push_back(w);
                } else if (r.levels[w] != lvl) {
                    r.balanced = false;
                }
            };
            for (std::size_t w : g.out(v))
                visit(w, r.levels[v] + 1);
            for (std::size_t w : g.in(v))
                visit(w, r.levels[v] - 1);
        }
        long lo = r.levels[comp.front()];
        for (std::size_t v : comp)
            lo = std::min(lo, r.levels[v]);
        for (std::size_t v : comp)
            r.levels[v] -= lo;
    }
    if (!r.balanced)
        return r;
    r.height = 0;
    for (long l : r.levels)
        r.height = std::max(r.height, l);
    return r;
}

std::vector<std::vector<std::size_t>> component_vertex_sets(const LeveledDigraph& g)
{
    std::vector<std::vector<std::size_t>> comps;
    std::vector<char> seen(g.size(), 0);
    for (std::size_t root = 0; root < g.size(); ++root) {
        if (seen[root])
            continue;
        std::vector<std::size_t> comp;
        std::deque<std::size_t> queue{root};
        seen[root] = 1;
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (std::size_t w : g.out(v))
                if (!seen[w]) { seen[w] = 1; queue.push_back(w); }
            for (std::size_t w : g.in(v))
                if (!seen[w]) { seen[w] = 1; queue.push_back(w); }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end(), [&](const auto& a, const auto& b) {
        return g.vertex(a.front()).id < g.vertex(b.front()).id;
    });
    return comps;
}

std::vector<LeveledDigraph> connected_components(const LeveledDigraph& g)
{
    std::vector<LeveledDigraph> out;
    for (const auto& comp : component_vertex_sets(g))
        out.push_back(g.induced(comp));
    return out;
}

OrientedPath oriented_path(unsigned m, const std::set<unsigned>& single_edge_segments)
{
    for (unsigned i : single_edge_segments)
        if (i < 1 || i > m)
            throw IndexOutOfRange("segment index " + std::to_string(i) + " outside 1.." + std::to_string(m));

    OrientedPath p;
    p.m = m;
    p.single_edge_segments = single_edge_segments;
    p.levels.push_back(0);

    long level = 0;
    auto forward = [&]() {
        std::size_t a = p.levels.size() - 1;
        p.levels.push_back(++level);
        p.edges.emplace_back(a, a + 1);
    };
    auto backward = [&]() {
        std::size_t a = p.levels.size() - 1;
        p.levels.push_back(--level);
        p.edges.emplace_back(a + 1, a);
    };

    forward(); // leading edge
    for (unsigned i = 1; i <= m; ++i) {
        if (single_edge_segments.count(i)) {
            forward();
        } else {
            forward();
            backward();
            forward();
        }
    }
    forward(); // trailing edge
    return p;
}

std::string tuple_label(const Domain& d, std::span<const std::size_t> tuple)
{
    std::string s = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i)
            s += ",";
        s += d.labels[tuple[i]];
    }
    return s + ")";
}

std::set<unsigned> ExtDualLanguage::forced_segments(std::size_t tuple_index, std::size_t base_label) const
{
    std::set<unsigned> s;
    const auto& tuple = dprime_tuples[tuple_index];
    for (unsigned i = 0; i < tuple.size(); ++i)
        if (tuple[i] == base_label)
            s.insert(i + 1);
    return s;
}

ExtDualLanguage extended_dual_language(const CombinedLanguage& c)
{
    ExtDualLanguage out;
    out.combined = c;
    const Domain& d = c.source->domain;
    const CostFunction& phi = c.phi();
    const unsigned m = phi.arity();

    auto feas = phi.feasible_indices();
    if (feas.empty())
        throw EmptyFeas("phi_gamma has empty Feas");
    for (std::size_t idx : feas) {
        std::vector<std::size_t> tuple(m);
        unpack_tuple(idx, d.size(), tuple);
        out.dprime_tuples.push_back(std::move(tuple));
    }

    LeveledDigraph& g = out.digraph;
    g.name = c.source->name + "_extdual";
    for (std::size_t b = 0; b < d.size(); ++b)
        out.base_vertex.push_back(g.add_vertex(DigraphVertex{
            d.labels[b], VertexRole::Base, 0, d.labels[b], ExtValue(0)}));
    for (std::size_t t = 0; t < out.dprime_tuples.size(); ++t) {
        std::string id = tuple_label(d, out.dprime_tuples[t]);
        out.tuple_vertex.push_back(g.add_vertex(DigraphVertex{
            id, VertexRole::Tuple, static_cast<long>(m) + 2, id, phi.at(out.dprime_tuples[t])}));
    }

    out.path_vertices.assign(out.dprime_tuples.size(), {});
    for (std::size_t t = 0; t < out.dprime_tuples.size(); ++t) {
        out.path_vertices[t].assign(d.size(), {});
        const std::string tid = tuple_label(d, out.dprime_tuples[t]);
        for (std::size_t b = 0; b < d.size(); ++b) {
            OrientedPath q = oriented_path(m, out.forced_segments(t, b));
            std::vector<std::size_t> chain(q.vertex_count());
            chain.front() = out.base_vertex[b];
            chain.back() = out.tuple_vertex[t];
            for (std::size_t k = 1; k + 1 < q.vertex_count(); ++k) {
                std::string id = "p:" + d.labels[b] + ":" + tid + ":" + std::to_string(k);
                chain[k] = g.add_vertex(DigraphVertex{
                    id, VertexRole::Internal, q.levels[k], std::nullopt, ExtValue(0)});
            }
            for (const auto& [a, z] : q.edges)
                g.add_edge(chain[a], chain[z]);
            out.path_vertices[t][b] = std::move(chain);
        }
    }

    // Gamma_e as a plain language over the vertex-id domain
    Domain vdomain;
    for (const auto& v : g.vertices())
        vdomain.labels.push_back(v.id);
    CostFunction rel = CostFunction::filled("d_gamma", vdomain, 2, ExtValue::infinity());
    for (const auto& [a, b] : g.edges())
        rel.at_index(a * g.size() + b) = ExtValue(0);
    CostFunction mu = CostFunction::filled("mu", vdomain, 1, ExtValue(0));
    for (std::size_t t = 0; t < out.tuple_vertex.size(); ++t)
        mu.at_index(out.tuple_vertex[t]) = phi.at(out.dprime_tuples[t]);
    out.as_language = make_language(c.source->name + "_extdual",
        std::move(vdomain), {std::move(rel), std::move(mu)});
    return out;
}

long expected_extdual_vertices(std::size_t dsize, std::size_t dprime, unsigned m)
{
    long n = m, D = static_cast<long>(dsize), P = static_cast<long>(dprime);
    return (3 * n + 1) * P * D + (1 - 2 * n) * P + D;
}

long expected_extdual_edges(std::size_t dsize, std::size_t dprime, unsigned m)
{
    long n = m, D = static_cast<long>(dsize), P = static_cast<long>(dprime);
    return (3 * n + 2) * P * D - 2 * n * P;
}

} // namespace vcsp
