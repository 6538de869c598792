#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vcsp/value.hpp"

namespace vcsp {

// base^exp, throwing BudgetExceeded past `limit` (guards table allocations
// and enumeration counts).
std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit);

// Tuples over a domain of size `radix` are encoded as indices with the
// first coordinate most significant, so index order is lexicographic order.
std::size_t pack_tuple(std::span<const std::size_t> tuple, std::size_t radix);
void unpack_tuple(std::size_t index, std::size_t radix, std::span<std::size_t> out);

// Ordered list of distinct labels; the position is the canonical encoding.
struct Domain {
    std::vector<std::string> labels;

    std::size_t size() const { return labels.size(); }
    std::size_t index_of(std::string_view label) const;
    std::optional<std::size_t> find(std::string_view label) const;
    bool operator==(const Domain&) const = default;

    // non-empty, labels unique and token-safe
    void validate() const;
};

// Total table D^m -> ExtValue.
class CostFunction {
public:
    CostFunction(std::string name, Domain domain, unsigned arity, std::vector<ExtValue> table);

    // table filled with one value
    static CostFunction filled(std::string name, Domain domain, unsigned arity, const ExtValue& fill);

    const std::string& name() const { return name_; }
    const Domain& domain() const { return domain_; }
    unsigned arity() const { return arity_; }
    std::size_t table_size() const { return table_.size(); }

    const ExtValue& at_index(std::size_t i) const { return table_[i]; }
    ExtValue& at_index(std::size_t i) { return table_[i]; }
    const ExtValue& at(std::span<const std::size_t> tuple) const;
    const std::vector<ExtValue>& table() const { return table_; }

    bool is_crisp() const;
    bool is_finite_valued() const;
    bool is_identically_infinite() const;

    // indices of Feas(phi), ascending
    std::vector<std::size_t> feasible_indices() const;

    ExtValue min_finite() const; // throws EmptyFeas when Feas is empty
    ExtValue max_finite() const;

    void rename(std::string name) { name_ = std::move(name); }

    bool operator==(const CostFunction&) const = default;

private:
    std::string name_;
    Domain domain_;
    unsigned arity_;
    std::vector<ExtValue> table_;
};

// 0 where phi is finite, inf elsewhere
CostFunction feasibility_relation(const CostFunction& phi, std::string name = "");

struct Language {
    std::string name;
    Domain domain;
    std::vector<CostFunction> functions;

    std::optional<std::size_t> function_index(std::string_view fname) const;
    const CostFunction& function(std::string_view fname) const;
};

using LanguagePtr = std::shared_ptr<const Language>;

// Validates: non-empty domain, functions share the domain, names unique,
// no function is identically infinite. Derived languages (the dual's match
// relations can be identically infinite when D' is degenerate) may lift the
// last check; loading from text never does.
struct LanguageOptions {
    bool allow_identically_infinite = false;
};
LanguagePtr make_language(std::string name, Domain domain, std::vector<CostFunction> functions,
    const LanguageOptions& options = {});

struct Constraint {
    std::size_t function; // index into language->functions
    std::vector<std::size_t> scope; // variable indices, repeats allowed
    bool operator==(const Constraint&) const = default;
};

struct Instance {
    LanguagePtr language;
    std::string name;
    std::vector<std::string> variables;
    std::vector<Constraint> constraints;

    std::size_t variable_index(std::string_view v) const;
    std::optional<std::size_t> find_variable(std::string_view v) const;

    // appends, checking arity and variable indices
    void add_constraint(std::string_view fname, std::span<const std::size_t> scope);
    void add_constraint_by_names(std::string_view fname, std::span<const std::string> scope);
};

// Label index per variable, aligned with Instance::variables.
using Assignment = std::vector<std::size_t>;

ExtValue evaluate(const CostFunction& phi, std::span<const std::size_t> labels);
// Label-name variant; throws ArityMismatch / UnknownLabel.
ExtValue evaluate(const CostFunction& phi, std::span<const std::string> labels);
ExtValue evaluate(const Instance& instance, const Assignment& a);

// Structural equality up to language name: same domain, same functions
// (names, arities, tables) in the same order.
bool same_language(const Language& a, const Language& b);

} // namespace vcsp
