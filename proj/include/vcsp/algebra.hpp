#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vcsp/core.hpp"
#include "vcsp/digraph.hpp"
#include "vcsp/dual.hpp"

namespace vcsp {

// k-ary operation D^k -> D as a total table (same packing as cost tables).
struct Operation {
    std::string name;
    Domain domain;
    unsigned arity = 1;
    std::vector<std::size_t> table; // entries are label indices

    std::size_t apply(std::span<const std::size_t> args) const;
    // equality of the map, ignoring the name
    bool same_map(const Operation& o) const
    {
        return domain == o.domain && arity == o.arity && table == o.table;
    }
};

Operation projection_operation(const Domain& d, unsigned k, unsigned i); // 1-based i
Operation identity_operation(const Domain& d);
Operation min_operation(const Domain& d); // w.r.t. label order
Operation max_operation(const Domain& d);

struct EnumerationBudget {
    unsigned max_positions = 9;              // table size |D|^k
    std::uint64_t max_candidates = 20'000'000; // |D|^(|D|^k)
    std::uint64_t max_nodes = 5'000'000;       // backtracking guard
};

bool is_polymorphism(const Operation& f, const Language& gamma);

// All k-ary polymorphisms, in lexicographic table order.
std::vector<Operation> polymorphisms(const Language& gamma, unsigned k,
    const EnumerationBudget& budget = {});
std::vector<Operation> polymorphisms_serial(const Language& gamma, unsigned k,
    const EnumerationBudget& budget = {});

// Rational-weighted distribution over same-arity operations; weights are
// positive and sum to one.
struct FractionalPolymorphism {
    std::vector<std::pair<Operation, Rational>> terms;

    unsigned arity() const;
    void validate() const;
};

// omega_sub = {min: 1/2, max: 1/2} for the label order
FractionalPolymorphism submodular_fpol(const Domain& d);

struct FpolCheckResult {
    bool ok = false;
    std::string reason; // first violated inequality, or the failing support op
};

// Every support operation must be a polymorphism, and the weighted average
// inequality must hold on every Feas-tuple block, in exact arithmetic.
FpolCheckResult check_fractional_polymorphism(const FractionalPolymorphism& w, const Language& gamma);

// Componentwise transport of a polymorphism of Gamma onto the dual domain;
// the result is verified to be a polymorphism of the dual language.
Operation lift_to_dual(const Operation& f, const DualLanguage& d);
FractionalPolymorphism lift_to_dual(const FractionalPolymorphism& w, const DualLanguage& d);

// ---- identities ----

// Terms are variables (no arguments) or symbol applications.
struct Term {
    std::string head;
    std::vector<Term> args;
    bool is_variable() const { return args.empty(); }
};

struct Identity {
    Term lhs, rhs;

    bool is_linear() const;   // at most one operation symbol per side
    bool is_balanced() const; // both sides use the same variable set
};

// "f(x,y) = f(y,x)", nested applications allowed; bare identifiers are
// variables. An optional leading keyword "identity" is accepted.
Identity parse_identity(const std::string& text);
std::string term_str(const Term& t);
std::string identity_str(const Identity& idt);

// Holds under all assignments of the variables over the interpretation's
// domain.
bool check_identity(const Identity& idt, const std::map<std::string, Operation>& interpretation);

enum class IdentityFamily { Idempotent, Wnu, Cyclic, Symmetric, Edge };
IdentityFamily family_from_name(std::string_view name);
std::string family_name(IdentityFamily f);

// Defining identities of the family for symbol "f" of the given arity.
std::vector<Identity> family_identities(IdentityFamily family, unsigned arity);
bool satisfies_family(const Operation& f, IdentityFamily family);

// ---- endomorphisms and rigid cores ----

// All edge-preserving self-maps, as unary operations over the vertex-id
// domain, by arc-consistent backtracking; deterministic (lexicographic
// table) order.
std::vector<Operation> digraph_endomorphisms(const LeveledDigraph& g,
    const EnumerationBudget& budget = {});

// Does some unary fractional polymorphism of gamma put positive weight on
// g? Decided by an exact LP over the unary polymorphisms.
bool unary_support_contains(const Operation& g, const Language& gamma,
    const EnumerationBudget& budget = {});

// Only the identity appears in the unary part of supp(gamma).
bool is_rigid_core(const Language& gamma, const EnumerationBudget& budget = {});

// Same question for the extended dual language: its unary polymorphisms are
// the digraph endomorphisms, and only mu contributes inequalities.
bool is_rigid_core_extdual(const ExtDualLanguage& e, const EnumerationBudget& budget = {});

struct BaseRestriction {
    Operation op;       // over the source domain
    bool in_pol_gamma = false;
};

// Restrict an operation on the extended dual's vertices to the base
// vertices; throws NotClosed when the restriction leaves them.
BaseRestriction restrict_to_base(const Operation& fe, const ExtDualLanguage& e);

} // namespace vcsp
