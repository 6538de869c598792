#include "vcsp/algebra.hpp"

#include <algorithm>
#include <set>

#include "vcsp/simplex.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vcsp {

std::size_t Operation::apply(std::span<const std::size_t> args) const
{
    if (args.size() != arity)
        throw ArityMismatch("operation '" + name + "' expects " + std::to_string(arity) + " arguments");
    return table[pack_tuple(args, domain.size())];
}

Operation projection_operation(const Domain& d, unsigned k, unsigned i)
{
    if (i < 1 || i > k)
        throw IndexOutOfRange("projection index outside 1..k");
    std::size_t size = checked_pow(d.size(), k, std::uint64_t(1) << 28);
    Operation op{"proj" + std::to_string(k) + "_" + std::to_string(i), d, k, std::vector<std::size_t>(size)};
    std::vector<std::size_t> tuple(k);
    for (std::size_t idx = 0; idx < size; ++idx) {
        unpack_tuple(idx, d.size(), tuple);
        op.table[idx] = tuple[i - 1];
    }
    return op;
}

Operation identity_operation(const Domain& d)
{
    Operation op = projection_operation(d, 1, 1);
    op.name = "id";
    return op;
}

Operation min_operation(const Domain& d)
{
    Operation op{"min", d, 2, std::vector<std::size_t>(d.size() * d.size())};
    for (std::size_t a = 0; a < d.size(); ++a)
        for (std::size_t b = 0; b < d.size(); ++b)
            op.table[a * d.size() + b] = std::min(a, b);
    return op;
}

Operation max_operation(const Domain& d)
{
    Operation op = min_operation(d);
    op.name = "max";
    for (std::size_t a = 0; a < d.size(); ++a)
        for (std::size_t b = 0; b < d.size(); ++b)
            op.table[a * d.size() + b] = std::max(a, b);
    return op;
}

namespace {

// Feasibility data extracted once per language for fast polymorphism checks.
struct FeasContext {
    struct PerFunction {
        unsigned arity;
        bool trivial; // finite-valued: closure is automatic
        std::vector<std::vector<std::size_t>> tuples; // unpacked Feas
        std::vector<char> feasible;                   // indexed by packed tuple
    };
    std::size_t dsize;
    std::vector<PerFunction> functions;

    explicit FeasContext(const Language& lang) : dsize(lang.domain.size())
    {
        for (const auto& f : lang.functions) {
            PerFunction pf;
            pf.arity = f.arity();
            pf.trivial = f.is_finite_valued();
            if (!pf.trivial) {
                pf.feasible.assign(f.table_size(), 0);
                for (std::size_t idx : f.feasible_indices()) {
                    pf.feasible[idx] = 1;
                    std::vector<std::size_t> t(f.arity());
                    unpack_tuple(idx, dsize, t);
                    pf.tuples.push_back(std::move(t));
                }
            }
            functions.push_back(std::move(pf));
        }
    }

    // is `table` (a k-ary operation) a polymorphism of every function?
    bool check(const std::vector<std::size_t>& table, unsigned k) const
    {
        std::vector<std::size_t> pick(k), args(k);
        for (const auto& pf : functions) {
            if (pf.trivial)
                continue;
            const std::size_t f = pf.tuples.size();
            if (f == 0)
                continue;
            // all k-tuples of feasible tuples
            std::fill(pick.begin(), pick.end(), 0);
            while (true) {
                std::size_t image = 0;
                for (unsigned c = 0; c < pf.arity; ++c) {
                    for (unsigned i = 0; i < k; ++i)
                        args[i] = pf.tuples[pick[i]][c];
                    image = image * dsize + table[pack_tuple(args, dsize)];
                }
                if (!pf.feasible[image])
                    return false;
                unsigned pos = k;
                while (pos > 0) {
                    if (++pick[pos - 1] < f)
                        break;
                    pick[--pos] = 0;
                }
                if (pos == 0)
                    break;
            }
        }
        return true;
    }
};

std::uint64_t candidate_count(const Language& gamma, unsigned k, const EnumerationBudget& budget)
{
    std::uint64_t positions = checked_pow(gamma.domain.size(), k, budget.max_positions);
    return checked_pow(gamma.domain.size(), static_cast<unsigned>(positions), budget.max_candidates);
}

std::vector<std::size_t> decode_candidate(std::uint64_t c, std::size_t dsize, std::size_t positions)
{
    std::vector<std::size_t> table(positions);
    for (std::size_t i = positions; i-- > 0;) {
        table[i] = c % dsize;
        c /= dsize;
    }
    return table;
}

} // namespace

bool is_polymorphism(const Operation& f, const Language& gamma)
{
    if (f.domain != gamma.domain)
        throw DomainMismatch("operation domain differs from the language domain");
    return FeasContext(gamma).check(f.table, f.arity);
}

std::vector<Operation> polymorphisms_serial(const Language& gamma, unsigned k,
    const EnumerationBudget& budget)
{
    const std::uint64_t total = candidate_count(gamma, k, budget);
    const std::size_t positions = static_cast<std::size_t>(
        checked_pow(gamma.domain.size(), k, budget.max_positions));
    FeasContext ctx(gamma);
    std::vector<Operation> out;
    for (std::uint64_t c = 0; c < total; ++c) {
        auto table = decode_candidate(c, gamma.domain.size(), positions);
        if (ctx.check(table, k))
            out.push_back(Operation{"f" + std::to_string(out.size()), gamma.domain, k, std::move(table)});
    }
    return out;
}

std::vector<Operation> polymorphisms(const Language& gamma, unsigned k,
    const EnumerationBudget& budget)
{
    const std::uint64_t total = candidate_count(gamma, k, budget);
    if (total < 8192)
        return polymorphisms_serial(gamma, k, budget);
    const std::size_t positions = static_cast<std::size_t>(
        checked_pow(gamma.domain.size(), k, budget.max_positions));
    FeasContext ctx(gamma);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    const int chunks = std::max(1, threads * 4);
    const std::uint64_t step = (total + chunks - 1) / chunks;
    std::vector<std::vector<std::vector<std::size_t>>> found(chunks);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < chunks; ++i) {
        std::uint64_t lo = step * i, hi = std::min<std::uint64_t>(total, lo + step);
        for (std::uint64_t c = lo; c < hi; ++c) {
            auto table = decode_candidate(c, gamma.domain.size(), positions);
            if (ctx.check(table, k))
                found[i].push_back(std::move(table));
        }
    }

    std::vector<Operation> out;
    for (auto& chunk : found)
        for (auto& table : chunk)
            out.push_back(Operation{"f" + std::to_string(out.size()), gamma.domain, k, std::move(table)});
    return out;
}

unsigned FractionalPolymorphism::arity() const
{
    if (terms.empty())
        throw SemanticError("empty fractional polymorphism");
    return terms.front().first.arity;
}

void FractionalPolymorphism::validate() const
{
    if (terms.empty())
        throw SemanticError("empty fractional polymorphism");
    Rational sum(0);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [op, w] = terms[i];
        if (w <= 0)
            throw SemanticError("weight of '" + op.name + "' is not positive");
        if (op.arity != terms.front().first.arity || op.domain != terms.front().first.domain)
            throw SemanticError("operations of a fractional polymorphism must share arity and domain");
        for (std::size_t j = 0; j < i; ++j)
            if (terms[j].first.same_map(op))
                throw SemanticError("duplicate operation in fractional polymorphism");
        sum += w;
    }
    if (sum != 1)
        throw SemanticError("weights sum to " + rational_str(sum) + ", expected 1");
}

FractionalPolymorphism submodular_fpol(const Domain& d)
{
    FractionalPolymorphism w;
    w.terms.emplace_back(min_operation(d), Rational(1, 2));
    w.terms.emplace_back(max_operation(d), Rational(1, 2));
    return w;
}

FpolCheckResult check_fractional_polymorphism(const FractionalPolymorphism& w, const Language& gamma)
{
    w.validate();
    const unsigned k = w.arity();
    if (w.terms.front().first.domain != gamma.domain)
        throw DomainMismatch("fractional polymorphism domain differs from the language domain");

    for (const auto& [op, weight] : w.terms)
        if (!is_polymorphism(op, gamma))
            return {false, "support operation '" + op.name + "' is not a polymorphism"};

    const std::size_t dsize = gamma.domain.size();
    std::vector<std::size_t> pick(k), args(k);
    for (const auto& phi : gamma.functions) {
        auto feas = phi.feasible_indices();
        std::vector<std::vector<std::size_t>> tuples;
        for (std::size_t idx : feas) {
            std::vector<std::size_t> t(phi.arity());
            unpack_tuple(idx, dsize, t);
            tuples.push_back(std::move(t));
        }
        if (tuples.empty())
            continue;
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            // rhs: (1/k) sum phi(x_i); lhs: sum_f w(f) phi(f-bar(x_1..x_k))
            Rational rhs(0);
            for (unsigned i = 0; i < k; ++i)
                rhs += phi.at_index(feas[pick[i]]).rational();
            rhs /= k;
            Rational lhs(0);
            for (const auto& [op, weight] : w.terms) {
                std::size_t image = 0;
                for (unsigned c = 0; c < phi.arity(); ++c) {
                    for (unsigned i = 0; i < k; ++i)
                        args[i] = tuples[pick[i]][c];
                    image = image * dsize + op.table[pack_tuple(args, dsize)];
                }
                const ExtValue& v = phi.at_index(image);
                if (v.is_infinite())
                    return {false, "image of '" + op.name + "' leaves Feas(" + phi.name() + ")"};
                lhs += weight * v.rational();
            }
            if (lhs > rhs) {
                std::string where = "phi=" + phi.name() + " tuples=(";
                for (unsigned i = 0; i < k; ++i)
                    where += (i ? "," : "") + tuple_label(gamma.domain, tuples[pick[i]]);
                return {false, "inequality violated at " + where + "): "
                    + rational_str(lhs) + " > " + rational_str(rhs)};
            }
            unsigned pos = k;
            while (pos > 0) {
                if (++pick[pos - 1] < tuples.size())
                    break;
                pick[--pos] = 0;
            }
            if (pos == 0)
                break;
        }
    }
    return {true, ""};
}

Operation lift_to_dual(const Operation& f, const DualLanguage& d)
{
    if (!is_polymorphism(f, *d.combined.combined))
        throw NotAPolymorphism("'" + f.name + "' is not a polymorphism of phi_gamma");

    const std::size_t dsize = d.combined.source->domain.size();
    const std::size_t p = d.dprime_size();
    const unsigned k = f.arity;
    const unsigned m = d.m();

    // packed source tuple -> D' index
    std::vector<std::size_t> where(checked_pow(dsize, m, std::uint64_t(1) << 27),
        static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < p; ++i)
        where[pack_tuple(d.dprime_tuples[i], dsize)] = i;

    std::size_t size = checked_pow(p, k, std::uint64_t(1) << 27);
    Operation fd{f.name + "_d", d.language->domain, k, std::vector<std::size_t>(size)};
    std::vector<std::size_t> pick(k), args(k);
    for (std::size_t idx = 0; idx < size; ++idx) {
        unpack_tuple(idx, p, pick);
        std::size_t image = 0;
        for (unsigned c = 0; c < m; ++c) {
            for (unsigned i = 0; i < k; ++i)
                args[i] = d.dprime_tuples[pick[i]][c];
            image = image * dsize + f.table[pack_tuple(args, dsize)];
        }
        if (where[image] == static_cast<std::size_t>(-1))
            throw InternalCheckFailed("componentwise image leaves D'");
        fd.table[idx] = where[image];
    }

    if (!is_polymorphism(fd, *d.language))
        throw InternalCheckFailed("dual lift is not a polymorphism of the dual language");
    return fd;
}

FractionalPolymorphism lift_to_dual(const FractionalPolymorphism& w, const DualLanguage& d)
{
    w.validate();
    FractionalPolymorphism out;
    for (const auto& [op, weight] : w.terms)
        out.terms.emplace_back(lift_to_dual(op, d), weight);
    auto verdict = check_fractional_polymorphism(out, *d.language);
    if (!verdict.ok)
        throw InternalCheckFailed("dual lift fails the fractional polymorphism check: " + verdict.reason);
    return out;
}

} // namespace vcsp
