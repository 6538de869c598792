#include "vcsp/solve.hpp"

#include <algorithm>
#include <deque>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vcsp {

namespace {

// best (value, code) over one contiguous range of assignment codes
void brute_range(const Instance& instance, std::uint64_t begin, std::uint64_t end,
    ExtValue& best, std::uint64_t& best_code)
{
    const std::size_t n = instance.variables.size();
    const std::size_t d = instance.language->domain.size();
    Assignment a(n);
    best = ExtValue::infinity();
    best_code = end;
    for (std::uint64_t code = begin; code < end; ++code) {
        unpack_tuple(code, d, a);
        ExtValue v = evaluate(instance, a);
        if (v < best) {
            best = v;
            best_code = code;
        }
    }
}

Solution solution_from(const Instance& instance, const ExtValue& best, std::uint64_t code)
{
    Solution s;
    if (best.is_infinite())
        return s;
    s.feasible = true;
    s.optimum = best;
    s.assignment.assign(instance.variables.size(), 0);
    unpack_tuple(code, instance.language->domain.size(), s.assignment);
    return s;
}

} // namespace

Solution brute_force_serial(const Instance& instance, const SolveBudget& budget)
{
    const std::uint64_t total = checked_pow(instance.language->domain.size(),
        instance.variables.size(), budget.max_assignments);
    ExtValue best;
    std::uint64_t code;
    brute_range(instance, 0, total, best, code);
    return solution_from(instance, best, code);
}

Solution brute_force(const Instance& instance, const SolveBudget& budget)
{
    const std::uint64_t total = checked_pow(instance.language->domain.size(),
        instance.variables.size(), budget.max_assignments);
    if (total < 4096)
        return brute_force_serial(instance, budget);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    const int chunks = std::max(1, threads * 4);
    std::vector<ExtValue> best(chunks, ExtValue::infinity());
    std::vector<std::uint64_t> code(chunks, total);
    const std::uint64_t step = (total + chunks - 1) / chunks;

#pragma omp parallel for schedule(static)
    for (int i = 0; i < chunks; ++i) {
        std::uint64_t lo = step * i;
        std::uint64_t hi = std::min(total, lo + step);
        if (lo < hi)
            brute_range(instance, lo, hi, best[i], code[i]);
    }

    // deterministic reduction: least value, then least code
    int pick = 0;
    for (int i = 1; i < chunks; ++i)
        if (best[i] < best[pick] || (best[i] == best[pick] && code[i] < code[pick]))
            pick = i;
    return solution_from(instance, best[pick], code[pick]);
}

bool check_chain_submodular(const CostFunction& phi, std::span<const std::size_t> order)
{
    if (phi.arity() == 1)
        return true;
    if (phi.arity() != 2)
        return false;

    const std::size_t k = phi.domain().size();
    if (order.size() != k)
        throw PreconditionFailed("order must be a permutation of the domain");
    std::vector<std::size_t> rank(k, k);
    for (std::size_t pos = 0; pos < k; ++pos) {
        if (order[pos] >= k || rank[order[pos]] != k)
            throw PreconditionFailed("order must be a permutation of the domain");
        rank[order[pos]] = pos;
    }

    auto meet = [&](std::size_t a, std::size_t b) { return rank[a] <= rank[b] ? a : b; };
    auto join = [&](std::size_t a, std::size_t b) { return rank[a] <= rank[b] ? b : a; };

    for (std::size_t x0 = 0; x0 < k; ++x0)
        for (std::size_t x1 = 0; x1 < k; ++x1)
            for (std::size_t y0 = 0; y0 < k; ++y0)
                for (std::size_t y1 = 0; y1 < k; ++y1) {
                    const ExtValue& fx = phi.at_index(x0 * k + x1);
                    const ExtValue& fy = phi.at_index(y0 * k + y1);
                    if (fx.is_infinite() || fy.is_infinite())
                        continue;
                    const ExtValue& lo = phi.at_index(meet(x0, y0) * k + meet(x1, y1));
                    const ExtValue& hi = phi.at_index(join(x0, y0) * k + join(x1, y1));
                    if (lo.is_infinite() || hi.is_infinite())
                        return false; // Feas not closed under min/max
                    if (lo + hi > fx + fy)
                        return false;
                }
    return true;
}

namespace {

// Threshold min-cut network: node (v,a) carries the indicator "label of v
// is at least a" (positions 1..K-1 of the chain); monotonicity is enforced
// by infinite arcs (v,a+1) -> (v,a).
class FlowNetwork {
public:
    explicit FlowNetwork(std::size_t nodes) : head_(nodes + 2) {}

    static constexpr std::size_t source = 0;
    static constexpr std::size_t sink = 1;

    void add_arc(std::size_t from, std::size_t to, ExtValue cap)
    {
        if (cap.is_finite() && cap.rational() < 0)
            throw InternalCheckFailed("negative capacity");
        if (cap == ExtValue(0))
            return;
        arcs_.push_back(Arc{to, cap, Rational(0), 0});
        arcs_.push_back(Arc{from, ExtValue(0), Rational(0), 0});
        std::size_t fwd = arcs_.size() - 2;
        arcs_[fwd].rev = fwd + 1;
        arcs_[fwd + 1].rev = fwd;
        head_[from].push_back(fwd);
        head_[to].push_back(fwd + 1);
    }

    Rational max_flow()
    {
        Rational total(0);
        while (true) {
            // BFS over positive residuals
            std::vector<std::size_t> parent_arc(head_.size(), npos);
            std::vector<char> seen(head_.size(), 0);
            std::deque<std::size_t> queue{source};
            seen[source] = 1;
            while (!queue.empty() && !seen[sink]) {
                std::size_t v = queue.front();
                queue.pop_front();
                for (std::size_t ai : head_[v]) {
                    const Arc& a = arcs_[ai];
                    if (!seen[a.to] && residual_positive(a)) {
                        seen[a.to] = 1;
                        parent_arc[a.to] = ai;
                        queue.push_back(a.to);
                    }
                }
            }
            if (!seen[sink])
                break;
            // bottleneck (always finite: source arcs are finite)
            Rational bottleneck;
            bool have = false;
            for (std::size_t v = sink; v != source;) {
                const Arc& a = arcs_[parent_arc[v]];
                if (a.cap.is_finite()) {
                    Rational r = a.cap.rational() - a.flow;
                    if (!have || r < bottleneck) {
                        bottleneck = r;
                        have = true;
                    }
                }
                v = arcs_[a.rev].to;
            }
            if (!have)
                throw InternalCheckFailed("unbounded augmenting path");
            for (std::size_t v = sink; v != source;) {
                Arc& a = arcs_[parent_arc[v]];
                a.flow += bottleneck;
                arcs_[a.rev].flow -= bottleneck;
                v = arcs_[a.rev].to;
            }
            total += bottleneck;
        }
        check_conservation(total);
        return total;
    }

    // source side of the minimum cut (reachable in the residual graph)
    std::vector<char> min_cut_source_side() const
    {
        std::vector<char> side(head_.size(), 0);
        std::deque<std::size_t> queue{source};
        side[source] = 1;
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t ai : head_[v]) {
                const Arc& a = arcs_[ai];
                if (!side[a.to] && residual_positive(a)) {
                    side[a.to] = 1;
                    queue.push_back(a.to);
                }
            }
        }
        return side;
    }

    // cut value must equal the flow value; no infinite arc may cross
    void check_cut(const std::vector<char>& side, const Rational& flow) const
    {
        Rational cut(0);
        for (std::size_t v = 0; v < head_.size(); ++v) {
            if (!side[v])
                continue;
            for (std::size_t ai : head_[v]) {
                if (ai % 2 != 0)
                    continue; // reverse arc
                const Arc& a = arcs_[ai];
                if (side[a.to])
                    continue;
                if (a.cap.is_infinite())
                    throw InternalCheckFailed("infinite arc crosses the minimum cut");
                cut += a.cap.rational();
            }
        }
        if (cut != flow)
            throw InternalCheckFailed("cut value differs from flow value");
    }

private:
    struct Arc {
        std::size_t to;
        ExtValue cap;
        Rational flow;
        std::size_t rev;
    };
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool residual_positive(const Arc& a) const
    {
        if (a.cap.is_infinite())
            return true;
        return a.cap.rational() - a.flow > 0;
    }

    void check_conservation(const Rational& total) const
    {
        std::vector<Rational> net(head_.size(), Rational(0));
        for (std::size_t v = 0; v < head_.size(); ++v)
            for (std::size_t ai : head_[v])
                if (ai % 2 == 0)
                    net[v] += arcs_[ai].flow;
        for (std::size_t v = 0; v < head_.size(); ++v)
            for (std::size_t ai : head_[v])
                if (ai % 2 == 0)
                    net[arcs_[ai].to] -= arcs_[ai].flow;
        for (std::size_t v = 2; v < head_.size(); ++v)
            if (net[v] != 0)
                throw InternalCheckFailed("flow not conserved");
        if (net[source] != total || net[sink] != -total)
            throw InternalCheckFailed("flow not conserved at terminals");
    }

    std::vector<std::vector<std::size_t>> head_;
    std::vector<Arc> arcs_;
};

} // namespace

MincutResult mincut_solve(const Instance& instance, std::span<const std::size_t> order)
{
    MincutResult out;
    const std::size_t k = instance.language->domain.size();
    const std::size_t n = instance.variables.size();

    std::vector<std::size_t> rank(k);
    {
        std::vector<char> seen(k, 0);
        if (order.size() != k)
            throw PreconditionFailed("order must be a permutation of the domain");
        for (std::size_t pos = 0; pos < k; ++pos) {
            if (order[pos] >= k || seen[order[pos]])
                throw PreconditionFailed("order must be a permutation of the domain");
            seen[order[pos]] = 1;
            rank[order[pos]] = pos;
        }
    }

    // Collapse to per-variable unary tables (position space) and per-pair
    // binary tables; a binary constraint on a repeated variable folds into
    // a unary one on its diagonal.
    std::vector<std::vector<Rational>> unary(n, std::vector<Rational>(k, Rational(0)));
    std::vector<std::vector<char>> unary_inf(n, std::vector<char>(k, 0));
    struct BinaryTerm {
        std::size_t u, v;
        std::vector<ExtValue> table; // position-space, k*k
    };
    std::vector<BinaryTerm> binaries;

    Rational finite_mass(0); // sum of |finite| entries over all constraints
    for (const auto& c : instance.constraints) {
        const auto& f = instance.language->functions[c.function];
        for (const auto& v : f.table())
            if (v.is_finite())
                finite_mass += boost::multiprecision::abs(v.rational());
        if (f.arity() == 1) {
            for (std::size_t pos = 0; pos < k; ++pos) {
                const ExtValue& v = f.at_index(order[pos]);
                if (v.is_infinite())
                    unary_inf[c.scope[0]][pos] = 1;
                else
                    unary[c.scope[0]][pos] += v.rational();
            }
        } else if (f.arity() == 2) {
            if (!check_chain_submodular(f, order))
                throw PreconditionFailed("constraint on '" + f.name() + "' is not chain-submodular");
            if (c.scope[0] == c.scope[1]) {
                for (std::size_t pos = 0; pos < k; ++pos) {
                    const ExtValue& v = f.at_index(order[pos] * k + order[pos]);
                    if (v.is_infinite())
                        unary_inf[c.scope[0]][pos] = 1;
                    else
                        unary[c.scope[0]][pos] += v.rational();
                }
            } else {
                BinaryTerm term{c.scope[0], c.scope[1], std::vector<ExtValue>(k * k)};
                for (std::size_t a = 0; a < k; ++a)
                    for (std::size_t b = 0; b < k; ++b)
                        term.table[a * k + b] = f.at_index(order[a] * k + order[b]);
                binaries.push_back(std::move(term));
            }
        } else {
            throw PreconditionFailed("constraint arity above 2");
        }
    }

    // Infinite entries become Big-M; chosen so that any assignment touching
    // one costs more than every all-finite assignment even with negative
    // finite values present.
    const Rational big_m = 1 + 2 * finite_mass;
    auto materialize = [&](const ExtValue& v) { return v.is_finite() ? v.rational() : big_m; };

    const std::size_t levels = k - 1; // threshold positions per variable
    FlowNetwork net(n * levels);
    auto node = [&](std::size_t v, std::size_t a) { return 2 + v * levels + (a - 1); };

    Rational constant(0);
    auto add_unary = [&](std::size_t v, const std::vector<Rational>& u) {
        constant += u[0];
        for (std::size_t a = 1; a < k; ++a) {
            Rational delta = u[a] - u[a - 1];
            if (delta >= 0)
                net.add_arc(node(v, a), FlowNetwork::sink, ExtValue(delta));
            else {
                net.add_arc(FlowNetwork::source, node(v, a), ExtValue(Rational(-delta)));
                constant += delta;
            }
        }
    };

    for (std::size_t v = 0; v < n; ++v) {
        std::vector<Rational> u(k);
        for (std::size_t pos = 0; pos < k; ++pos)
            u[pos] = unary[v][pos] + (unary_inf[v][pos] ? big_m : Rational(0));
        for (std::size_t a = 2; a <= levels; ++a)
            net.add_arc(node(v, a), node(v, a - 1), ExtValue::infinity());
        add_unary(v, u);
    }

    for (const auto& term : binaries) {
        std::vector<Rational> phi(k * k);
        for (std::size_t i = 0; i < k * k; ++i)
            phi[i] = materialize(term.table[i]);
        // pairwise part: theta(a,b) = phi(a,b-1)+phi(a-1,b)-phi(a,b)-phi(a-1,b-1)
        for (std::size_t a = 1; a < k; ++a)
            for (std::size_t b = 1; b < k; ++b) {
                Rational theta = phi[a * k + (b - 1)] + phi[(a - 1) * k + b]
                    - phi[a * k + b] - phi[(a - 1) * k + (b - 1)];
                if (theta < 0) {
                    out.declined = true;
                    out.reason = "pairwise capacity negative after Big-M substitution";
                    return out;
                }
                if (theta > 0)
                    net.add_arc(node(term.u, a), node(term.v, b), ExtValue(theta));
            }
        // unary remainders phi(i, K-1) on u and phi(0, j) on v, constant -phi(0, K-1)
        std::vector<Rational> left(k), right(k);
        for (std::size_t i = 0; i < k; ++i)
            left[i] = phi[i * k + (k - 1)];
        for (std::size_t j = 0; j < k; ++j)
            right[j] = phi[j];
        add_unary(term.u, left);
        add_unary(term.v, right);
        constant -= phi[k - 1];
    }

    Rational flow = net.max_flow();
    auto side = net.min_cut_source_side();
    net.check_cut(side, flow);

    Assignment assignment(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t pos = 0;
        for (std::size_t a = 1; a <= levels; ++a)
            if (side[node(v, a)])
                ++pos;
        // monotone by the infinite arcs; decode position back to a label
        assignment[v] = order[pos];
    }

    ExtValue value = evaluate(instance, assignment);
    if (value.is_finite()) {
        if (value.rational() != flow + constant)
            throw InternalCheckFailed("mincut objective mismatch");
        out.solution = Solution{true, value, std::move(assignment)};
        return out;
    }
    // the minimum itself pays a Big-M entry: no all-finite assignment exists
    if (flow + constant <= finite_mass)
        throw InternalCheckFailed("mincut objective mismatch");
    out.solution = Solution{};
    return out;
}

namespace {

bool revise(const LeveledDigraph& source, const LeveledDigraph& target,
    std::vector<std::vector<char>>& cand)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [u, v] : source.edges()) {
            for (std::size_t a = 0; a < target.size(); ++a) {
                if (!cand[u][a])
                    continue;
                bool supported = false;
                for (std::size_t b : target.out(a))
                    if (cand[v][b]) { supported = true; break; }
                if (!supported) {
                    cand[u][a] = 0;
                    changed = true;
                }
            }
            for (std::size_t b = 0; b < target.size(); ++b) {
                if (!cand[v][b])
                    continue;
                bool supported = false;
                for (std::size_t a : target.in(b))
                    if (cand[u][a]) { supported = true; break; }
                if (!supported) {
                    cand[v][b] = 0;
                    changed = true;
                }
            }
        }
    }
    for (const auto& row : cand) {
        bool any = false;
        for (char c : row)
            if (c) { any = true; break; }
        if (!any)
            return false;
    }
    return true;
}

struct HomSearch {
    const LeveledDigraph& source;
    const LeveledDigraph& target;
    const std::vector<std::vector<ExtValue>>& costs;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool found = false;
    Rational best{0};
    Assignment best_assignment;

    // minimal cost over surviving candidates, infinite if a domain is empty
    ExtValue bound(const std::vector<std::vector<char>>& cand, std::size_t from) const
    {
        ExtValue total(0);
        for (std::size_t v = from; v < source.size(); ++v) {
            const ExtValue* lo = nullptr;
            for (std::size_t t = 0; t < target.size(); ++t)
                if (cand[v][t] && (!lo || costs[v][t] < *lo))
                    lo = &costs[v][t];
            if (!lo)
                return ExtValue::infinity();
            total += *lo;
        }
        return total;
    }

    void run(std::vector<std::vector<char>> cand, std::size_t depth, Rational sofar,
        Assignment& partial)
    {
        if (++nodes > budget)
            throw BudgetExceeded("homomorphism search exceeded node budget");
        if (depth == source.size()) {
            if (!found || sofar < best) {
                found = true;
                best = sofar;
                best_assignment = partial;
            }
            return;
        }
        ExtValue rest = bound(cand, depth);
        if (rest.is_infinite())
            return;
        if (found && ExtValue(sofar) + rest >= ExtValue(best))
            return;
        for (std::size_t t = 0; t < target.size(); ++t) {
            if (!cand[depth][t] || costs[depth][t].is_infinite())
                continue;
            auto next = cand;
            for (std::size_t o = 0; o < target.size(); ++o)
                next[depth][o] = (o == t);
            if (!revise(source, target, next))
                continue;
            partial[depth] = t;
            run(std::move(next), depth + 1, sofar + costs[depth][t].rational(), partial);
        }
    }
};

} // namespace

Solution min_cost_hom(const LeveledDigraph& source, const LeveledDigraph& target,
    const std::vector<std::vector<ExtValue>>& costs, const SolveBudget& budget)
{
    if (costs.size() != source.size())
        throw ArityMismatch("one cost table per source vertex expected");
    for (const auto& row : costs)
        if (row.size() != target.size())
            throw ArityMismatch("cost tables must range over the target vertices");

    std::vector<std::vector<char>> cand(source.size(), std::vector<char>(target.size(), 1));
    for (std::size_t v = 0; v < source.size(); ++v)
        for (std::size_t t = 0; t < target.size(); ++t)
            if (costs[v][t].is_infinite())
                cand[v][t] = 0;

    Solution out;
    if (!revise(source, target, cand))
        return out;

    HomSearch search{source, target, costs, budget.max_nodes, 0, false, Rational(0), {}};
    Assignment partial(source.size(), 0);
    search.run(std::move(cand), 0, Rational(0), partial);
    if (!search.found)
        return out;
    out.feasible = true;
    out.optimum = ExtValue(search.best);
    out.assignment = std::move(search.best_assignment);
    return out;
}

} // namespace vcsp
