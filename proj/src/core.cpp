#include "vcsp/core.hpp"

#include <algorithm>
#include <set>

namespace vcsp {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > limit / base)
            throw BudgetExceeded("size " + std::to_string(base) + "^" + std::to_string(exp)
                + " exceeds budget " + std::to_string(limit));
        r *= base;
        if (r > limit)
            throw BudgetExceeded("size " + std::to_string(base) + "^" + std::to_string(exp)
                + " exceeds budget " + std::to_string(limit));
    }
    return r;
}

std::size_t pack_tuple(std::span<const std::size_t> tuple, std::size_t radix)
{
    std::size_t idx = 0;
    for (std::size_t v : tuple) {
        if (v >= radix)
            throw IndexOutOfRange("tuple component out of range");
        idx = idx * radix + v;
    }
    return idx;
}

void unpack_tuple(std::size_t index, std::size_t radix, std::span<std::size_t> out)
{
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = index % radix;
        index /= radix;
    }
}

std::optional<std::size_t> Domain::find(std::string_view label) const
{
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label)
            return i;
    return std::nullopt;
}

std::size_t Domain::index_of(std::string_view label) const
{
    if (auto i = find(label))
        return *i;
    throw UnknownLabel("unknown label '" + std::string(label) + "'");
}

void Domain::validate() const
{
    if (labels.empty())
        throw SemanticError("domain must be non-empty");
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty() || l == ":" || l == "#" || l.find_first_of(" \t\r\n#") != std::string::npos)
            throw SemanticError("bad label '" + l + "'");
        if (!seen.insert(l).second)
            throw SemanticError("duplicate label '" + l + "'");
    }
}

CostFunction::CostFunction(std::string name, Domain domain, unsigned arity, std::vector<ExtValue> table)
    : name_(std::move(name)), domain_(std::move(domain)), arity_(arity), table_(std::move(table))
{
    if (arity_ < 1)
        throw SemanticError("cost function arity must be at least 1");
    std::size_t want = checked_pow(domain_.size(), arity_, std::size_t(1) << 28);
    if (table_.size() != want)
        throw SemanticError("cost function '" + name_ + "': table has " + std::to_string(table_.size())
            + " entries, expected " + std::to_string(want));
}

CostFunction CostFunction::filled(std::string name, Domain domain, unsigned arity, const ExtValue& fill)
{
    std::size_t n = checked_pow(domain.size(), arity, std::size_t(1) << 28);
    return CostFunction(std::move(name), std::move(domain), arity, std::vector<ExtValue>(n, fill));
}

const ExtValue& CostFunction::at(std::span<const std::size_t> tuple) const
{
    if (tuple.size() != arity_)
        throw ArityMismatch("cost function '" + name_ + "' expects " + std::to_string(arity_)
            + " arguments, got " + std::to_string(tuple.size()));
    return table_[pack_tuple(tuple, domain_.size())];
}

bool CostFunction::is_crisp() const
{
    return std::all_of(table_.begin(), table_.end(),
        [](const ExtValue& v) { return v.is_infinite() || v == ExtValue(0); });
}

bool CostFunction::is_finite_valued() const
{
    return std::all_of(table_.begin(), table_.end(), [](const ExtValue& v) { return v.is_finite(); });
}

bool CostFunction::is_identically_infinite() const
{
    return std::all_of(table_.begin(), table_.end(), [](const ExtValue& v) { return v.is_infinite(); });
}

std::vector<std::size_t> CostFunction::feasible_indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < table_.size(); ++i)
        if (table_[i].is_finite())
            out.push_back(i);
    return out;
}

ExtValue CostFunction::min_finite() const
{
    const ExtValue* best = nullptr;
    for (const auto& v : table_)
        if (v.is_finite() && (!best || v < *best))
            best = &v;
    if (!best)
        throw EmptyFeas("cost function '" + name_ + "' has empty Feas");
    return *best;
}

ExtValue CostFunction::max_finite() const
{
    const ExtValue* best = nullptr;
    for (const auto& v : table_)
        if (v.is_finite() && (!best || v > *best))
            best = &v;
    if (!best)
        throw EmptyFeas("cost function '" + name_ + "' has empty Feas");
    return *best;
}

CostFunction feasibility_relation(const CostFunction& phi, std::string name)
{
    if (name.empty())
        name = "feas_" + phi.name();
    std::vector<ExtValue> table(phi.table_size());
    for (std::size_t i = 0; i < table.size(); ++i)
        table[i] = phi.at_index(i).is_finite() ? ExtValue(0) : ExtValue::infinity();
    return CostFunction(std::move(name), phi.domain(), phi.arity(), std::move(table));
}

std::optional<std::size_t> Language::function_index(std::string_view fname) const
{
    for (std::size_t i = 0; i < functions.size(); ++i)
        if (functions[i].name() == fname)
            return i;
    return std::nullopt;
}

const CostFunction& Language::function(std::string_view fname) const
{
    if (auto i = function_index(fname))
        return functions[*i];
    throw UnknownFunction("unknown function '" + std::string(fname) + "'");
}

LanguagePtr make_language(std::string name, Domain domain, std::vector<CostFunction> functions,
    const LanguageOptions& options)
{
    domain.validate();
    std::set<std::string> names;
    for (const auto& f : functions) {
        if (f.domain() != domain)
            throw DomainMismatch("function '" + f.name() + "' is not over the language domain");
        if (!names.insert(f.name()).second)
            throw SemanticError("duplicate function name '" + f.name() + "'");
        if (!options.allow_identically_infinite && f.is_identically_infinite())
            throw SemanticError("function '" + f.name() + "' is identically infinite");
    }
    auto lang = std::make_shared<Language>();
    lang->name = std::move(name);
    lang->domain = std::move(domain);
    lang->functions = std::move(functions);
    return lang;
}

std::optional<std::size_t> Instance::find_variable(std::string_view v) const
{
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == v)
            return i;
    return std::nullopt;
}

std::size_t Instance::variable_index(std::string_view v) const
{
    if (auto i = find_variable(v))
        return *i;
    throw UnknownVariable("unknown variable '" + std::string(v) + "'");
}

void Instance::add_constraint(std::string_view fname, std::span<const std::size_t> scope)
{
    auto fi = language->function_index(fname);
    if (!fi)
        throw UnknownFunction("unknown function '" + std::string(fname) + "'");
    const auto& f = language->functions[*fi];
    if (scope.size() != f.arity())
        throw ArityMismatch("constraint on '" + std::string(fname) + "': scope has "
            + std::to_string(scope.size()) + " variables, arity is " + std::to_string(f.arity()));
    for (std::size_t v : scope)
        if (v >= variables.size())
            throw UnknownVariable("scope variable index out of range");
    constraints.push_back(Constraint{*fi, std::vector<std::size_t>(scope.begin(), scope.end())});
}

void Instance::add_constraint_by_names(std::string_view fname, std::span<const std::string> scope)
{
    std::vector<std::size_t> idx;
    idx.reserve(scope.size());
    for (const auto& v : scope)
        idx.push_back(variable_index(v));
    add_constraint(fname, idx);
}

ExtValue evaluate(const CostFunction& phi, std::span<const std::size_t> labels)
{
    return phi.at(labels);
}

ExtValue evaluate(const CostFunction& phi, std::span<const std::string> labels)
{
    std::vector<std::size_t> idx;
    idx.reserve(labels.size());
    for (const auto& l : labels)
        idx.push_back(phi.domain().index_of(l));
    return phi.at(idx);
}

bool same_language(const Language& a, const Language& b)
{
    if (a.domain != b.domain || a.functions.size() != b.functions.size())
        return false;
    for (std::size_t i = 0; i < a.functions.size(); ++i)
        if (a.functions[i] != b.functions[i])
            return false;
    return true;
}

ExtValue evaluate(const Instance& instance, const Assignment& a)
{
    if (a.size() != instance.variables.size())
        throw ArityMismatch("assignment is not total on the instance variables");
    ExtValue total(0);
    std::vector<std::size_t> tuple;
    for (const auto& c : instance.constraints) {
        const auto& f = instance.language->functions[c.function];
        tuple.clear();
        for (std::size_t v : c.scope)
            tuple.push_back(a[v]);
        total += f.at(tuple);
        if (total.is_infinite())
            return total;
    }
    return total;
}

} // namespace vcsp
