#pragma once

#include <set>
#include <string>
#include <vector>

#include "vcsp/core.hpp"
#include "vcsp/solve.hpp"

namespace vcsp {

struct StageReport {
    std::string stage;
    std::size_t variables = 0;
    std::size_t constraints = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    bool feasible = false;
    ExtValue optimum = ExtValue::infinity();   // raw optimum at this stage
    ExtValue normalized = ExtValue::infinity(); // after offset/scale normalization
    std::string note;
};

struct PipelineReport {
    std::vector<StageReport> stages;
    bool ok = false;
    std::string mismatch; // first disagreeing stage

    std::string text() const;
};

// Run the reductions stage by stage, solve each stage exactly, normalize by
// the recorded offsets and scales, and compare everything against the
// source optimum. Stages: combine, dual, extdual, reverse.
PipelineReport verify_pipeline(const Instance& instance,
    const std::set<std::string>& stages = {"combine", "dual", "extdual", "reverse"},
    const SolveBudget& budget = {});

// |D|, arities, |D'|, digraph sizes against the closed-form counts,
// crisp/finite-valued classification, rigid-core verdict.
std::string language_info(const LanguagePtr& language);

} // namespace vcsp
