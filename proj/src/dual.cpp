#include "vcsp/dual.hpp"

#include <algorithm>
#include <numeric>

#include "vcsp/digraph.hpp" // tuple_label

namespace vcsp {

const CostFunction& DualLanguage::match(unsigned k, unsigned l) const
{
    return language->functions[match_function_index(k, l)];
}

std::size_t DualLanguage::match_function_index(unsigned k, unsigned l) const
{
    if (k < 1 || k > m() || l < 1 || l > m())
        throw IndexOutOfRange("match coordinate outside 1..m");
    return 1 + (k - 1) * m() + (l - 1);
}

DualLanguage dual_language(const CombinedLanguage& c)
{
    DualLanguage out;
    out.combined = c;

    const Domain& d = c.source->domain;
    const CostFunction& phi = c.phi();
    const unsigned m = phi.arity();

    auto feas = phi.feasible_indices();
    if (feas.empty())
        throw EmptyFeas("phi_gamma has empty Feas; the dual domain would be empty");
    for (std::size_t idx : feas) {
        std::vector<std::size_t> tuple(m);
        unpack_tuple(idx, d.size(), tuple);
        out.dprime_tuples.push_back(std::move(tuple));
    }

    Domain dprime;
    for (const auto& tuple : out.dprime_tuples)
        dprime.labels.push_back(tuple_label(d, tuple));

    const std::size_t p = out.dprime_tuples.size();
    std::vector<CostFunction> functions;
    CostFunction phi_prime("phi_prime", dprime, 1, std::vector<ExtValue>(p));
    for (std::size_t i = 0; i < p; ++i)
        phi_prime.at_index(i) = phi.at(out.dprime_tuples[i]);
    functions.push_back(std::move(phi_prime));

    for (unsigned k = 1; k <= m; ++k)
        for (unsigned l = 1; l <= m; ++l) {
            CostFunction match("match_" + std::to_string(k) + "_" + std::to_string(l),
                dprime, 2, std::vector<ExtValue>(p * p));
            const std::int64_t total = static_cast<std::int64_t>(p * p);
#pragma omp parallel for schedule(static)
            for (std::int64_t e = 0; e < total; ++e) {
                std::size_t i = static_cast<std::size_t>(e) / p, j = static_cast<std::size_t>(e) % p;
                bool agree = out.dprime_tuples[i][k - 1] == out.dprime_tuples[j][l - 1];
                match.at_index(e) = agree ? ExtValue(0) : ExtValue::infinity();
            }
            functions.push_back(std::move(match));
        }

    out.language = make_language(c.source->name + "_dual", std::move(dprime), std::move(functions),
        LanguageOptions{.allow_identically_infinite = true});
    return out;
}

DualLanguage dual_language(const LanguagePtr& gamma)
{
    return dual_language(combine_language(gamma));
}

DualInstanceResult dual_encode(const DualLanguage& d, const Instance& instance)
{
    if (!instance.language || !same_language(*instance.language, *d.combined.combined))
        throw WrongLanguage("dual_encode expects an instance over {phi_gamma}");

    DualInstanceResult out;
    out.instance = Instance{d.language, instance.name + "_dual", {}, {}};

    const unsigned m = d.m();
    for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
        out.instance.variables.push_back("x'" + std::to_string(i + 1));
        out.constraint_of_dualvar.push_back(i);
    }
    for (std::size_t i = 0; i < instance.constraints.size(); ++i)
        out.instance.add_constraint("phi_prime", std::vector<std::size_t>{i});

    // matches for every coordinate pair sharing a variable; i < j across
    // constraints, k < l inside a single scope
    for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
        const auto& si = instance.constraints[i].scope;
        for (std::size_t j = i; j < instance.constraints.size(); ++j) {
            const auto& sj = instance.constraints[j].scope;
            for (unsigned k = 1; k <= m; ++k)
                for (unsigned l = (i == j ? k + 1 : 1); l <= m; ++l)
                    if (si[k - 1] == sj[l - 1])
                        out.instance.add_constraint(d.match(k, l).name(), std::vector<std::size_t>{i, j});
        }
    }

    std::vector<char> used(instance.variables.size(), 0);
    for (const auto& c : instance.constraints)
        for (std::size_t v : c.scope)
            used[v] = 1;
    for (std::size_t v = 0; v < instance.variables.size(); ++v)
        if (!used[v])
            out.dropped_variables.push_back(instance.variables[v]);
    return out;
}

Assignment decode_dual_assignment(const DualLanguage& d, const Instance& original,
    const DualInstanceResult& encoded, const Assignment& dual_assignment)
{
    Assignment a(original.variables.size(), 0);
    for (std::size_t dv = 0; dv < encoded.constraint_of_dualvar.size(); ++dv) {
        const auto& scope = original.constraints[encoded.constraint_of_dualvar[dv]].scope;
        const auto& tuple = d.dprime_tuples[dual_assignment[dv]];
        for (unsigned k = 0; k < scope.size(); ++k)
            a[scope[k]] = tuple[k];
    }
    return a;
}

UndualResult undual_instance(const DualLanguage& d, const Instance& instance)
{
    if (instance.language != d.language
        && !(instance.language && same_language(*instance.language, *d.language)))
        throw WrongLanguage("undual_instance expects an instance over the dual language");

    const unsigned m = d.m();
    const std::size_t q = instance.variables.size();

    // union-find over the m*q block slots
    std::vector<std::size_t> parent(m * q);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b); // keep the least slot as root
    };
    auto slot = [&](std::size_t dualvar, unsigned coord) { return dualvar * m + (coord - 1); };

    std::vector<char> has_unary(q, 0);
    struct MatchUse { std::size_t i, j; unsigned k, l; };
    for (const auto& c : instance.constraints) {
        const auto& fname = instance.language->functions[c.function].name();
        if (fname == "phi_prime") {
            has_unary[c.scope[0]] = 1;
            continue;
        }
        if (fname.rfind("match_", 0) != 0)
            throw WrongLanguage("constraint uses '" + fname + "'");
        auto sep = fname.find('_', 6);
        unsigned k = static_cast<unsigned>(std::stoul(fname.substr(6, sep - 6)));
        unsigned l = static_cast<unsigned>(std::stoul(fname.substr(sep + 1)));
        unite(slot(c.scope[0], k), slot(c.scope[1], l));
    }

    // language {phi_gamma, feas_phi_gamma}
    const CostFunction& phi = d.combined.phi();
    LanguagePtr lang = make_language(d.combined.combined->name + "_feas",
        phi.domain(), {phi, feasibility_relation(phi, "feas_phi_gamma")});

    UndualResult out;
    out.language = lang;
    out.instance = Instance{lang, instance.name + "_undual", {}, {}};

    std::vector<std::size_t> var_of_root(m * q, static_cast<std::size_t>(-1));
    out.block_variables.assign(q, std::vector<std::size_t>(m));
    for (std::size_t dv = 0; dv < q; ++dv)
        for (unsigned k = 1; k <= m; ++k) {
            std::size_t root = find(slot(dv, k));
            if (var_of_root[root] == static_cast<std::size_t>(-1)) {
                out.instance.variables.push_back(
                    "b" + std::to_string(root / m + 1) + "_" + std::to_string(root % m + 1));
                var_of_root[root] = out.instance.variables.size() - 1;
            }
            out.block_variables[dv][k - 1] = var_of_root[root];
        }

    for (std::size_t dv = 0; dv < q; ++dv) {
        if (has_unary[dv]) {
            // one phi_gamma per phi_prime occurrence
            for (const auto& c : instance.constraints)
                if (instance.language->functions[c.function].name() == "phi_prime" && c.scope[0] == dv)
                    out.instance.add_constraint("phi_gamma", out.block_variables[dv]);
        } else {
            out.instance.add_constraint("feas_phi_gamma", out.block_variables[dv]);
        }
    }
    return out;
}

EliminateFeasResult eliminate_feas(const Instance& instance)
{
    const Language& lang = *instance.language;

    // identify the value function and its feasibility relation
    std::size_t phi_index = static_cast<std::size_t>(-1);
    std::size_t feas_index = static_cast<std::size_t>(-1);
    if (lang.functions.size() == 1) {
        phi_index = 0;
    } else if (lang.functions.size() == 2) {
        for (std::size_t a = 0; a < 2; ++a) {
            std::size_t b = 1 - a;
            if (lang.functions[b].is_crisp()
                && feasibility_relation(lang.functions[a]).table() == lang.functions[b].table()) {
                phi_index = a;
                feas_index = b;
                break;
            }
        }
        if (phi_index == static_cast<std::size_t>(-1))
            throw WrongLanguage("language is not of the form {phi, Feas(phi)}");
    } else {
        throw WrongLanguage("language is not of the form {phi, Feas(phi)}");
    }

    const CostFunction& phi = lang.functions[phi_index];

    // g = 1 / lcm of the denominators of all finite values
    BigInt lcm_den = 1;
    for (const auto& f : lang.functions)
        for (const auto& v : f.table())
            if (v.is_finite())
                lcm_den = boost::multiprecision::lcm(lcm_den, v.denominator());
    Rational g(1, lcm_den);

    std::size_t feas_count = 0;
    for (const auto& c : instance.constraints)
        if (c.function == feas_index)
            ++feas_count;

    Rational high(0), low(0);
    if (feas_count > 0) {
        Rational max_fin = phi.max_finite().rational();
        Rational min_fin = phi.min_finite().rational();
        high = Rational(feas_count) * std::max(Rational(0), max_fin);
        low = Rational(feas_count) * std::min(Rational(0), min_fin);
    }
    BigInt n = rational_floor((high - low) / g);
    if (Rational(n) * g < high - low)
        ++n; // ceil
    ++n;

    EliminateFeasResult out;
    out.multiplicity = n;
    out.granularity = g;
    out.surcharge_low = low;

    LanguagePtr plain = make_language(lang.name + "_plain", lang.domain, {phi});
    out.instance = Instance{plain, instance.name + "_scaled", instance.variables, {}};
    for (const auto& c : instance.constraints) {
        if (c.function == feas_index) {
            out.instance.add_constraint(phi.name(), c.scope);
        } else {
            for (BigInt copy = 0; copy < n; ++copy)
                out.instance.add_constraint(phi.name(), c.scope);
        }
    }
    return out;
}

ExtValue EliminateFeasResult::recover(const ExtValue& optimum) const
{
    if (optimum.is_infinite())
        return optimum;
    Rational scaled = (optimum.rational() - surcharge_low) / (Rational(multiplicity) * granularity);
    return ExtValue(Rational(rational_floor(scaled)) * granularity);
}

} // namespace vcsp
