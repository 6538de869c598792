#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vcsp/combine.hpp"
#include "vcsp/core.hpp"

namespace vcsp {

enum class VertexRole { Base, Tuple, Internal };

std::string role_name(VertexRole r);
VertexRole role_from_name(std::string_view s);

struct DigraphVertex {
    std::string id;
    VertexRole role = VertexRole::Internal;
    long level = 0;                  // declared/built level
    std::optional<std::string> label; // payload text (io round-trip)
    std::optional<ExtValue> cost;     // unary cost annotation (io round-trip)
};

// Digraph with named vertices; no self or parallel edges.
class LeveledDigraph {
public:
    std::string name;

    std::size_t add_vertex(DigraphVertex v);
    void add_edge(std::size_t from, std::size_t to);
    void add_edge(std::string_view from, std::string_view to);

    std::size_t size() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<DigraphVertex>& vertices() const { return vertices_; }
    const DigraphVertex& vertex(std::size_t i) const { return vertices_[i]; }
    DigraphVertex& vertex(std::size_t i) { return vertices_[i]; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    std::optional<std::size_t> find_vertex(std::string_view id) const;
    std::size_t vertex_index(std::string_view id) const;

    const std::vector<std::size_t>& out(std::size_t v) const { return out_[v]; }
    const std::vector<std::size_t>& in(std::size_t v) const { return in_[v]; }
    bool has_edge(std::size_t from, std::size_t to) const;

    // induced subgraph on the given vertices (kept in the given order)
    LeveledDigraph induced(const std::vector<std::size_t>& keep) const;

private:
    std::vector<DigraphVertex> vertices_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::vector<std::size_t>> out_, in_;
};

// Level assignment for a balanced digraph: lvl(b) = lvl(a) + 1 along every
// edge, normalized to minimum 0 per connected component. `balanced` is false
// when some oriented cycle has non-zero length; that is a result, not an
// error (the reverse reduction reads it as "infeasible").
struct LevelResult {
    bool balanced = false;
    std::vector<long> levels;
    long height = 0;
};
LevelResult compute_levels(const LeveledDigraph& g);

// Vertex index sets of the weakly connected components, each sorted; the
// component list is ordered by smallest vertex id.
std::vector<std::vector<std::size_t>> component_vertex_sets(const LeveledDigraph& g);
std::vector<LeveledDigraph> connected_components(const LeveledDigraph& g);

// The oriented path with a leading edge, one segment per coordinate (a
// single edge for members of `single_edge_segments`, otherwise a zigzag),
// and a trailing edge. Height is m + 2; edge count is 2 + |S| + 3(m - |S|).
struct OrientedPath {
    unsigned m = 0;
    std::set<unsigned> single_edge_segments; // 1-based
    std::vector<std::pair<std::size_t, std::size_t>> edges; // along the path
    std::vector<long> levels; // per path-local vertex 0..vertex_count-1

    std::size_t vertex_count() const { return levels.size(); }
    std::size_t edge_count() const { return edges.size(); }
    long height() const { return static_cast<long>(m) + 2; }
};

OrientedPath oriented_path(unsigned m, const std::set<unsigned>& single_edge_segments);

// The single binary relation of the extended dual: one oriented path per
// (base label, feasible tuple) pair, plus the unary cost placing phi_gamma's
// value on tuple vertices and 0 elsewhere.
struct ExtDualLanguage {
    CombinedLanguage combined;
    LeveledDigraph digraph;
    LanguagePtr as_language; // functions: d_gamma (binary crisp), mu (unary)

    std::vector<std::vector<std::size_t>> dprime_tuples; // feasible tuples of phi_gamma
    std::vector<std::size_t> base_vertex;  // D index -> digraph vertex
    std::vector<std::size_t> tuple_vertex; // D' index -> digraph vertex
    // [tuple][base] -> vertices along that path, bottom to top, endpoints included
    std::vector<std::vector<std::vector<std::size_t>>> path_vertices;

    unsigned m() const { return combined.total_arity(); }
    const CostFunction& relation() const { return as_language->functions[0]; }
    const CostFunction& mu() const { return as_language->functions[1]; }

    // {i | tuple[i] = d}, 1-based
    std::set<unsigned> forced_segments(std::size_t tuple_index, std::size_t base_label) const;
};

ExtDualLanguage extended_dual_language(const CombinedLanguage& c);

// serialized form of a D' tuple: "(l1,l2,...,lm)"
std::string tuple_label(const Domain& d, std::span<const std::size_t> tuple);

// Closed-form sizes of the extended dual digraph:
// vertices (3m+1)|D'||D| + (1-2m)|D'| + |D|, edges (3m+2)|D'||D| - 2m|D'|.
long expected_extdual_vertices(std::size_t dsize, std::size_t dprime, unsigned m);
long expected_extdual_edges(std::size_t dsize, std::size_t dprime, unsigned m);

} // namespace vcsp
