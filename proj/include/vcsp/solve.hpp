#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vcsp/core.hpp"
#include "vcsp/digraph.hpp"

namespace vcsp {

// Optimal value plus one optimal assignment (the lexicographically least
// one; lexicographic in label position, by variable declaration order).
struct Solution {
    bool feasible = false;
    ExtValue optimum = ExtValue::infinity();
    Assignment assignment;
};

struct SolveBudget {
    std::uint64_t max_assignments = 10'000'000;
    std::uint64_t max_nodes = 10'000'000; // branch-and-bound node guard
};

// Exhaustive minimum; the oracle the reduction suites are checked against.
Solution brute_force(const Instance& instance, const SolveBudget& budget = {});
Solution brute_force_serial(const Instance& instance, const SolveBudget& budget = {});

// phi unary, or binary with Feas closed under coordinatewise min/max for the
// given label order and phi(x^y) + phi(xvy) <= phi(x) + phi(y) on all pairs
// (an infinite right side is trivially satisfied).
bool check_chain_submodular(const CostFunction& phi, std::span<const std::size_t> order);

struct MincutResult {
    bool declined = false;
    std::string reason;
    Solution solution;
};

// Exact minimum of an instance of unary/binary constraints, all
// chain-submodular w.r.t. `order`, via a threshold min-cut network with
// rational capacities. Infinite table entries are replaced by a Big-M
// before differencing; if some pairwise capacity still comes out negative
// the call declines instead of guessing.
MincutResult mincut_solve(const Instance& instance, std::span<const std::size_t> order);

// Exact minimum-cost homomorphism from `source` into `target` where
// costs[v][t] prices mapping source vertex v to target vertex t.
// Arc-consistency preprocessing plus branch-and-bound with the sum of
// per-vertex candidate minima as the bound.
Solution min_cost_hom(const LeveledDigraph& source, const LeveledDigraph& target,
    const std::vector<std::vector<ExtValue>>& costs, const SolveBudget& budget = {});

} // namespace vcsp
