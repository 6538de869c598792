#include "vcsp/verify.hpp"

#include <sstream>

#include "vcsp/algebra.hpp"
#include "vcsp/combine.hpp"
#include "vcsp/digraph.hpp"
#include "vcsp/dual.hpp"
#include "vcsp/extdual.hpp"

namespace vcsp {

namespace {

StageReport sized_report(std::string stage, const Instance& inst)
{
    StageReport r;
    r.stage = std::move(stage);
    r.variables = inst.variables.size();
    r.constraints = inst.constraints.size();
    return r;
}

bool agrees(const StageReport& a, const StageReport& b)
{
    if (a.feasible != b.feasible)
        return false;
    return !a.feasible || a.normalized == b.normalized;
}

} // namespace

std::string PipelineReport::text() const
{
    std::ostringstream out;
    for (const auto& s : stages) {
        out << s.stage << ": ";
        if (s.feasible)
            out << "optimum " << s.optimum.str() << " normalized " << s.normalized.str();
        else
            out << "infeasible";
        out << " [vars " << s.variables << " constraints " << s.constraints;
        if (s.vertices)
            out << " vertices " << s.vertices << " edges " << s.edges;
        out << "]";
        if (!s.note.empty())
            out << " " << s.note;
        out << "\n";
    }
    out << (ok ? "verify: all stages agree\n" : "verify: MISMATCH at " + mismatch + "\n");
    return out.str();
}

PipelineReport verify_pipeline(const Instance& instance, const std::set<std::string>& stages,
    const SolveBudget& budget)
{
    PipelineReport report;

    StageReport source = sized_report("source", instance);
    Solution base = brute_force(instance, budget);
    source.feasible = base.feasible;
    source.optimum = base.optimum;
    source.normalized = base.optimum;
    report.stages.push_back(source);

    report.ok = true;
    auto push = [&](StageReport r) {
        if (!agrees(report.stages.front(), r) && report.ok) {
            report.ok = false;
            report.mismatch = r.stage;
        }
        report.stages.push_back(std::move(r));
    };

    CombinedLanguage combined = combine_language(instance.language);
    auto [combined_instance, offset] = to_combined_instance(combined, instance);

    if (stages.count("combine")) {
        StageReport r = sized_report("combine", combined_instance);
        Solution s = brute_force(combined_instance, budget);
        r.feasible = s.feasible;
        r.optimum = s.optimum;
        if (s.feasible)
            r.normalized = s.optimum - offset;
        r.note = "offset " + offset.str();
        push(std::move(r));
    }

    DualLanguage dual = dual_language(combined);
    if (stages.count("dual")) {
        DualInstanceResult enc = dual_encode(dual, combined_instance);
        StageReport r = sized_report("dual", enc.instance);
        Solution s = brute_force(enc.instance, budget);
        r.feasible = s.feasible;
        r.optimum = s.optimum;
        if (s.feasible) {
            r.normalized = s.optimum - offset;
            // the decoded assignment must reproduce the optimum
            Assignment decoded = decode_dual_assignment(dual, combined_instance, enc, s.assignment);
            if (evaluate(combined_instance, decoded) != s.optimum)
                r.note = "decode mismatch";
        }
        push(std::move(r));
    }

    if (stages.count("extdual") || stages.count("reverse")) {
        ExtDualLanguage ext = extended_dual_language(combined);
        ExtDualInstance enc = extdual_encode(ext, combined_instance);

        if (stages.count("extdual")) {
            StageReport r = sized_report("extdual", enc.instance);
            r.vertices = ext.digraph.size();
            r.edges = ext.digraph.edge_count();
            // exact minimum-cost homomorphism into the target digraph
            LeveledDigraph source_graph;
            for (const auto& v : enc.instance.variables)
                source_graph.add_vertex(DigraphVertex{v, VertexRole::Internal, 0,
                    std::nullopt, std::nullopt});
            for (const auto& c : enc.instance.constraints)
                if (enc.instance.language->functions[c.function].arity() == 2
                    && !source_graph.has_edge(c.scope[0], c.scope[1]))
                    source_graph.add_edge(c.scope[0], c.scope[1]);
            std::vector<std::vector<ExtValue>> costs(enc.instance.variables.size(),
                std::vector<ExtValue>(ext.digraph.size(), ExtValue(0)));
            for (const auto& c : enc.instance.constraints)
                if (enc.instance.language->functions[c.function].arity() == 1)
                    for (std::size_t t = 0; t < ext.digraph.size(); ++t)
                        costs[c.scope[0]][t] += ext.mu().at_index(t);
            Solution s = min_cost_hom(source_graph, ext.digraph, costs, budget);
            r.feasible = s.feasible;
            r.optimum = s.optimum;
            if (s.feasible)
                r.normalized = s.optimum - offset;
            push(std::move(r));
        }

        if (stages.count("reverse")) {
            ReverseVerdict verdict = reverse_reduce(ext, enc.instance, budget);
            StageReport r;
            r.stage = "reverse";
            if (verdict.kind == ReverseVerdict::Kind::Infeasible) {
                r.note = verdict.reason;
            } else if (verdict.kind == ReverseVerdict::Kind::Solved) {
                r.feasible = true;
                r.optimum = verdict.solution.optimum;
                r.normalized = r.optimum - offset;
            } else {
                r.variables = verdict.dual->variables.size();
                r.constraints = verdict.dual->constraints.size();
                Solution s = brute_force(*verdict.dual, budget);
                r.feasible = s.feasible;
                r.optimum = s.feasible ? s.optimum + verdict.offset : s.optimum;
                if (s.feasible)
                    r.normalized = r.optimum - offset;
                push(r);

                // continue the chain: undual, then Feas elimination
                UndualResult undualed = undual_instance(*verdict.dual_language, *verdict.dual);
                StageReport ru = sized_report("undual", undualed.instance);
                Solution su = brute_force(undualed.instance, budget);
                ru.feasible = su.feasible;
                ru.optimum = su.optimum;
                if (su.feasible)
                    ru.normalized = su.optimum + verdict.offset - offset;
                push(std::move(ru));

                EliminateFeasResult elim = eliminate_feas(undualed.instance);
                StageReport re = sized_report("eliminate-feas", elim.instance);
                Solution se = brute_force(elim.instance, budget);
                re.feasible = se.feasible;
                re.optimum = se.optimum;
                if (se.feasible)
                    re.normalized = elim.recover(se.optimum) + verdict.offset - offset;
                re.note = "multiplicity " + elim.multiplicity.str();
                push(std::move(re));
                return report;
            }
            push(std::move(r));
        }
    }

    return report;
}

std::string language_info(const LanguagePtr& language)
{
    std::ostringstream out;
    out << "language " << language->name << "\n";
    out << "domain size " << language->domain.size() << "\n";
    for (const auto& f : language->functions) {
        out << "function " << f.name() << " arity " << f.arity();
        if (f.is_crisp())
            out << " crisp";
        if (f.is_finite_valued())
            out << " finite-valued";
        out << "\n";
    }

    CombinedLanguage combined = combine_language(language);
    out << "combined arity " << combined.total_arity() << "\n";
    const auto feas = combined.phi().feasible_indices();
    out << "dual domain size " << feas.size() << "\n";

    ExtDualLanguage ext = extended_dual_language(combined);
    long ev = expected_extdual_vertices(language->domain.size(), feas.size(), combined.total_arity());
    long ee = expected_extdual_edges(language->domain.size(), feas.size(), combined.total_arity());
    out << "extended dual vertices " << ext.digraph.size() << " (formula " << ev << ")\n";
    out << "extended dual edges " << ext.digraph.edge_count() << " (formula " << ee << ")\n";
    LevelResult lv = compute_levels(ext.digraph);
    out << "extended dual balanced " << (lv.balanced ? "yes" : "no")
        << " height " << lv.height << "\n";
    out << "rigid core " << (is_rigid_core(*language) ? "yes" : "no") << "\n";
    return out.str();
}

} // namespace vcsp
