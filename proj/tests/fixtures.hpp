#pragma once

// Shared fixtures: the worked examples used across the test suites.

#include <string>
#include <vector>

#include "vcsp/core.hpp"

namespace fixtures {

inline vcsp::Domain boolean_domain()
{
    return vcsp::Domain{{"0", "1"}};
}

inline vcsp::Domain chain_domain(std::size_t n)
{
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    return vcsp::Domain{labels};
}

// rho(0,1)=2, rho(1,0)=1, inf otherwise
inline vcsp::CostFunction rho()
{
    using vcsp::ExtValue;
    vcsp::CostFunction f = vcsp::CostFunction::filled("rho", boolean_domain(), 2, ExtValue::infinity());
    f.at_index(0b01) = ExtValue(2);
    f.at_index(0b10) = ExtValue(1);
    return f;
}

// phi_sum(x,y,z) = x + 2y + 3z when x+y+z = 1, inf otherwise
inline vcsp::CostFunction phi_sum()
{
    using vcsp::ExtValue;
    vcsp::CostFunction f = vcsp::CostFunction::filled("phi_sum", boolean_domain(), 3, ExtValue::infinity());
    f.at_index(0b100) = ExtValue(1);
    f.at_index(0b010) = ExtValue(2);
    f.at_index(0b001) = ExtValue(3);
    return f;
}

// equality relation on a domain of the given size
inline vcsp::CostFunction phi_eq(std::size_t domain_size = 2)
{
    using vcsp::ExtValue;
    vcsp::Domain d = chain_domain(domain_size);
    vcsp::CostFunction f = vcsp::CostFunction::filled("phi_eq", d, 2, ExtValue::infinity());
    for (std::size_t a = 0; a < domain_size; ++a)
        f.at_index(a * domain_size + a) = ExtValue(0);
    return f;
}

// u(0)=0, u(1)=5 (unary padding example)
inline vcsp::CostFunction unary_u()
{
    using vcsp::ExtValue;
    vcsp::CostFunction f = vcsp::CostFunction::filled("u", boolean_domain(), 1, ExtValue(0));
    f.at_index(1) = ExtValue(5);
    return f;
}

inline vcsp::LanguagePtr rho_language()
{
    return vcsp::make_language("ex1", boolean_domain(), {rho()});
}

inline vcsp::LanguagePtr phi_sum_language()
{
    return vcsp::make_language("onein3", boolean_domain(), {phi_sum()});
}

inline vcsp::LanguagePtr phi_eq_language(std::size_t domain_size = 2)
{
    return vcsp::make_language("eq", chain_domain(domain_size), {phi_eq(domain_size)});
}

// Max-Cut style function: phi(x,x)=1, phi(x,y)=0 for x!=y (finite-valued)
inline vcsp::CostFunction maxcut_phi()
{
    using vcsp::ExtValue;
    vcsp::CostFunction f = vcsp::CostFunction::filled("cut", boolean_domain(), 2, ExtValue(0));
    f.at_index(0b00) = ExtValue(1);
    f.at_index(0b11) = ExtValue(1);
    return f;
}

} // namespace fixtures
