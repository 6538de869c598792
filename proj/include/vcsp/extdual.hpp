#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vcsp/digraph.hpp"
#include "vcsp/dual.hpp"
#include "vcsp/solve.hpp"

namespace vcsp {

// Instance over {d_gamma, mu} built from an instance over {phi_gamma}:
// one oriented path per constraint coordinate, from the coordinate's
// variable up to the constraint's top variable.
struct ExtDualInstance {
    Instance instance;

    std::vector<std::size_t> variable_of_original; // input var -> instance var (level 0)
    std::vector<std::size_t> top_of_constraint;    // input constraint -> instance var (level m+2)
    // [constraint][coordinate] -> instance vars along the path, bottom to top
    std::vector<std::vector<std::vector<std::size_t>>> path_chains;
};

ExtDualInstance extdual_encode(const ExtDualLanguage& e, const Instance& instance);

// Transport an assignment of the input instance to the encoded instance
// (paths fold onto the target's paths); objective values agree.
Assignment extdual_assignment(const ExtDualLanguage& e, const Instance& original,
    const ExtDualInstance& encoded, const Assignment& a);

// Level-respecting homomorphism test: every vertex of `source` must map to
// a path vertex at the same level with all edges preserved. Complete
// (arc consistency + backtracking).
bool level_hom_exists(const LeveledDigraph& source, const OrientedPath& q);

// Smallest S such that the (anchored) component maps level-respectingly
// into the path with single-edge segments S; the component maps into
// exactly the paths whose segment sets contain the result.
std::set<unsigned> compute_s0(const LeveledDigraph& anchored_component, unsigned m);

// One middle component of a full-height scope digraph: its vertices, the
// synthetic-anchored graph the homomorphism tests run on, its S0, and the
// top/bottom vertices it touches.
struct ComponentAnalysis {
    std::vector<std::size_t> vertices; // scope-graph vertex indices
    LeveledDigraph anchored;
    std::set<unsigned> s0;
    std::vector<std::size_t> top_neighbors;
    std::vector<std::size_t> bottom_neighbors;
};

// Merged outcome of the reverse reduction over all scope-graph components.
struct ReverseVerdict {
    enum class Kind { Infeasible, Solved, Dual };
    Kind kind = Kind::Infeasible;
    std::string reason; // Infeasible only

    // Solved: every component had height below the target's and was solved
    // directly (plus isolated variables); the assignment covers all input
    // variables.
    Solution solution;

    // Dual: instance over the dual language; its optimum plus `offset`
    // equals the input's optimum.
    std::optional<DualLanguage> dual_language;
    std::optional<Instance> dual;
    std::vector<std::pair<std::string, std::string>> dual_variable_map; // dual var -> input var
    ExtValue offset{0};

    bool fallback = false; // some subproblem fell back to the exact general solver
    std::vector<ComponentAnalysis> analyses;
};

ReverseVerdict reverse_reduce(const ExtDualLanguage& e, const Instance& instance,
    const SolveBudget& budget = {});

} // namespace vcsp
