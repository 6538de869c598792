#pragma once

// Seeded random generators for the property suites.

#include <random>
#include <string>
#include <vector>

#include "vcsp/combine.hpp"
#include "vcsp/core.hpp"

namespace testutil {

using Rng = std::mt19937_64;

inline vcsp::Domain random_domain(Rng& rng, std::size_t max_size = 3)
{
    std::uniform_int_distribution<std::size_t> size(2, max_size);
    std::vector<std::string> labels;
    std::size_t n = size(rng);
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    return vcsp::Domain{labels};
}

// finite values in {0..5}, infinity with the given probability, at least
// one finite entry per function
inline vcsp::CostFunction random_cost_function(Rng& rng, const std::string& name,
    const vcsp::Domain& d, unsigned arity, double inf_probability = 0.25)
{
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<long> val(0, 5);
    vcsp::CostFunction f = vcsp::CostFunction::filled(name, d, arity, vcsp::ExtValue(0));
    bool any_finite = false;
    for (std::size_t i = 0; i < f.table_size(); ++i) {
        if (coin(rng) < inf_probability) {
            f.at_index(i) = vcsp::ExtValue::infinity();
        } else {
            f.at_index(i) = vcsp::ExtValue(val(rng));
            any_finite = true;
        }
    }
    if (!any_finite) {
        std::uniform_int_distribution<std::size_t> pos(0, f.table_size() - 1);
        f.at_index(pos(rng)) = vcsp::ExtValue(val(rng));
    }
    return f;
}

// 1..2 functions with total arity <= max_total_arity
inline vcsp::LanguagePtr random_language(Rng& rng, std::size_t max_domain = 3,
    unsigned max_total_arity = 3, double inf_probability = 0.25)
{
    vcsp::Domain d = random_domain(rng, max_domain);
    std::uniform_int_distribution<unsigned> fcount(1, 2);
    unsigned q = fcount(rng);
    std::vector<vcsp::CostFunction> functions;
    unsigned left = max_total_arity;
    for (unsigned i = 0; i < q && left > 0; ++i) {
        unsigned hi = (i + 1 < q) ? left - (q - i - 1) : left;
        std::uniform_int_distribution<unsigned> ar(1, hi);
        unsigned arity = ar(rng);
        left -= arity;
        functions.push_back(random_cost_function(rng, "g" + std::to_string(i), d, arity, inf_probability));
    }
    return vcsp::make_language("rand", d, std::move(functions));
}

// rejection-sample until |Feas(phi_gamma)| is within the given bound
inline vcsp::LanguagePtr random_language_small_feas(Rng& rng, std::size_t max_feas,
    std::size_t max_domain = 3, unsigned max_total_arity = 3)
{
    while (true) {
        vcsp::LanguagePtr lang = random_language(rng, max_domain, max_total_arity, 0.55);
        vcsp::CombinedLanguage c = vcsp::combine_language(lang);
        std::size_t feas = c.phi().feasible_indices().size();
        if (feas >= 1 && feas <= max_feas)
            return lang;
    }
}

inline vcsp::Instance random_instance(Rng& rng, const vcsp::LanguagePtr& lang,
    std::size_t max_vars = 4, std::size_t max_constraints = 4)
{
    std::uniform_int_distribution<std::size_t> vcount(1, max_vars);
    std::uniform_int_distribution<std::size_t> ccount(1, max_constraints);
    vcsp::Instance inst{lang, "rand", {}, {}};
    std::size_t n = vcount(rng);
    for (std::size_t i = 0; i < n; ++i)
        inst.variables.push_back("v" + std::to_string(i + 1));
    std::uniform_int_distribution<std::size_t> fpick(0, lang->functions.size() - 1);
    std::uniform_int_distribution<std::size_t> vpick(0, n - 1);
    std::size_t q = ccount(rng);
    for (std::size_t i = 0; i < q; ++i) {
        std::size_t f = fpick(rng);
        std::vector<std::size_t> scope;
        for (unsigned j = 0; j < lang->functions[f].arity(); ++j)
            scope.push_back(vpick(rng));
        inst.add_constraint(lang->functions[f].name(), scope);
    }
    return inst;
}

} // namespace testutil
