#pragma once

#include <string>
#include <vector>

#include "vcsp/combine.hpp"
#include "vcsp/core.hpp"

namespace vcsp {

// The binary language over D' = Feas(phi_gamma): the finite-valued unary
// phi_prime plus one crisp match_{k,l} relation per coordinate pair,
// match_{k,l}(x,y) = 0 iff x[k] = y[l].
struct DualLanguage {
    CombinedLanguage combined;
    LanguagePtr language; // functions: phi_prime, match_1_1 .. match_m_m
    std::vector<std::vector<std::size_t>> dprime_tuples; // D' as label tuples over the source domain

    unsigned m() const { return combined.total_arity(); }
    std::size_t dprime_size() const { return dprime_tuples.size(); }
    const CostFunction& phi_prime() const { return language->functions[0]; }
    // 1-based coordinate pair
    const CostFunction& match(unsigned k, unsigned l) const;
    std::size_t match_function_index(unsigned k, unsigned l) const;
};

DualLanguage dual_language(const CombinedLanguage& c);
DualLanguage dual_language(const LanguagePtr& gamma);

struct DualInstanceResult {
    Instance instance; // over the dual language
    // dual variable i (in instance variable order) encodes this constraint of the input
    std::vector<std::size_t> constraint_of_dualvar;
    std::vector<std::string> dropped_variables; // input variables in no scope
};

// One dual variable per constraint, phi_prime on each, and a match for
// every coordinate pair holding the same input variable (across two
// constraints, and inside a single scope with a repeated variable).
// opt(result) = opt(input) exactly.
DualInstanceResult dual_encode(const DualLanguage& d, const Instance& instance);

// Read an optimal dual assignment back onto the input instance's variables.
Assignment decode_dual_assignment(const DualLanguage& d, const Instance& original,
    const DualInstanceResult& encoded, const Assignment& dual_assignment);

struct UndualResult {
    Instance instance; // over {phi_gamma, feas_phi_gamma}
    LanguagePtr language;
    // block of m fresh variables per dual variable, post variable merging
    std::vector<std::vector<std::size_t>> block_variables;
};

// Reverse direction: m fresh variables per dual variable; phi_gamma on the
// block when the dual variable carries a unary constraint, the Feas
// relation otherwise; match constraints merge block coordinates.
UndualResult undual_instance(const DualLanguage& d, const Instance& instance);

struct EliminateFeasResult {
    Instance instance; // over {phi_gamma} only
    BigInt multiplicity; // N: copies of each non-Feas constraint
    Rational granularity; // g: every objective value is a multiple of g
    Rational surcharge_low; // least possible total of the replaced Feas constraints

    // opt of the input from the opt of the rewritten instance
    ExtValue recover(const ExtValue& optimum) const;
};

// Replace each Feas(phi_gamma) constraint by phi_gamma and repeat every
// phi_gamma constraint N times, N chosen so the replacement surcharge can
// never bridge the gap g between distinct objective values.
EliminateFeasResult eliminate_feas(const Instance& instance);

} // namespace vcsp
