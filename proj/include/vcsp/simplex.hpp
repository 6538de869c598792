#pragma once

#include <vector>

#include "vcsp/value.hpp"

namespace vcsp {

// maximize c.x subject to A x <= b, x >= 0, in exact rational arithmetic.
// Two-phase dense tableau with Bland's rule, so it always terminates.
// Small by design: the support-membership queries it backs have a handful
// of variables and a few dozen rows.
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rational value{0};
    std::vector<Rational> x;
};

LpResult simplex_maximize(const std::vector<std::vector<Rational>>& a,
    const std::vector<Rational>& b, const std::vector<Rational>& c);

} // namespace vcsp
