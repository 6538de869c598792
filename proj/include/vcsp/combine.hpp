#pragma once

#include <utility>

#include "vcsp/core.hpp"

namespace vcsp {

// Coordinate block of one source function inside the combined function.
struct BlockLayout {
    std::string function_name;
    unsigned offset = 0; // 0-based first coordinate
    unsigned arity = 0;
    bool operator==(const BlockLayout&) const = default;
};

// A finite language folded into the single cost function
// phi_gamma(x_1..x_M) = phi_1(block 1) + ... + phi_q(block q).
struct CombinedLanguage {
    LanguagePtr source;
    LanguagePtr combined; // exactly one function, named "phi_gamma"
    std::vector<BlockLayout> layout;
    std::vector<ExtValue> block_minima; // finite minimum of each source function

    const CostFunction& phi() const { return combined->functions[0]; }
    unsigned total_arity() const { return phi().arity(); }
};

CombinedLanguage combine_language(const LanguagePtr& gamma);

// Instance over the source language -> instance over {phi_gamma} plus the
// offset by which the optimum shifts: opt(out) = opt(in) + offset.
// Padding variables are fresh and constrained only through the blocks they
// fill, so restricting an optimal assignment to the original variables is
// optimal for the input.
std::pair<Instance, ExtValue> to_combined_instance(const CombinedLanguage& c, const Instance& instance);

// Inverse direction: every phi_gamma constraint splits into one constraint
// per block; objective values agree pointwise on every assignment.
Instance from_combined_instance(const CombinedLanguage& c, const Instance& instance);

} // namespace vcsp
