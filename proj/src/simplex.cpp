#include "vcsp/simplex.hpp"

#include <cstddef>

namespace vcsp {

namespace {

struct Tableau {
    std::size_t rows, cols; // cols excludes the rhs column
    std::vector<std::vector<Rational>> t; // rows x (cols + 1)
    std::vector<std::size_t> basis; // basic column per row

    Rational& rhs(std::size_t i) { return t[i][cols]; }

    void pivot(std::size_t pr, std::size_t pc)
    {
        Rational p = t[pr][pc];
        for (auto& x : t[pr])
            x /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pr || t[i][pc] == 0)
                continue;
            Rational f = t[i][pc];
            for (std::size_t j = 0; j <= cols; ++j)
                t[i][j] -= f * t[pr][j];
        }
        basis[pr] = pc;
    }

    // maximize sum(c[basis]) with Bland's rule; c has one entry per column.
    // Returns false when unbounded.
    bool solve(const std::vector<Rational>& c, Rational& value)
    {
        while (true) {
            // priced-out reduced costs
            std::vector<Rational> red(c);
            for (std::size_t i = 0; i < rows; ++i) {
                if (c[basis[i]] == 0)
                    continue;
                for (std::size_t j = 0; j < cols; ++j)
                    red[j] -= c[basis[i]] * t[i][j];
            }
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j)
                if (red[j] > 0) { enter = j; break; }
            if (enter == cols)
                break;
            std::size_t leave = rows;
            Rational best;
            for (std::size_t i = 0; i < rows; ++i) {
                if (t[i][enter] <= 0)
                    continue;
                Rational ratio = rhs(i) / t[i][enter];
                if (leave == rows || ratio < best
                    || (ratio == best && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == rows)
                return false;
            pivot(leave, enter);
        }
        value = 0;
        for (std::size_t i = 0; i < rows; ++i)
            value += c[basis[i]] * rhs(i);
        return true;
    }
};

} // namespace

LpResult simplex_maximize(const std::vector<std::vector<Rational>>& a,
    const std::vector<Rational>& b, const std::vector<Rational>& c)
{
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    for (const auto& row : a)
        if (row.size() != n)
            throw Error("simplex: ragged constraint matrix");
    if (b.size() != m)
        throw Error("simplex: wrong rhs size");

    // columns: n structural, m slacks, then one artificial per negative row
    std::size_t artificials = 0;
    for (const auto& v : b)
        if (v < 0)
            ++artificials;

    Tableau tab;
    tab.rows = m;
    tab.cols = n + m + artificials;
    tab.t.assign(m, std::vector<Rational>(tab.cols + 1, Rational(0)));
    tab.basis.assign(m, 0);

    std::size_t next_art = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j)
            tab.t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
        tab.t[i][n + i] = flip ? Rational(-1) : Rational(1);
        tab.rhs(i) = flip ? Rational(-b[i]) : b[i];
        if (flip) {
            tab.t[i][next_art] = 1;
            tab.basis[i] = next_art++;
        } else {
            tab.basis[i] = n + i;
        }
    }

    LpResult out;
    if (artificials > 0) {
        std::vector<Rational> phase1(tab.cols, Rational(0));
        for (std::size_t j = n + m; j < tab.cols; ++j)
            phase1[j] = -1;
        Rational v;
        if (!tab.solve(phase1, v))
            throw Error("simplex: phase one unbounded");
        if (v != 0) {
            out.status = LpResult::Status::Infeasible;
            return out;
        }
        // drive leftover artificials out of the basis
        for (std::size_t i = 0; i < tab.rows; ++i) {
            if (tab.basis[i] < n + m)
                continue;
            std::size_t col = tab.cols;
            for (std::size_t j = 0; j < n + m; ++j)
                if (tab.t[i][j] != 0) { col = j; break; }
            if (col != tab.cols)
                tab.pivot(i, col);
        }
        // drop redundant rows still held by an artificial
        for (std::size_t i = tab.rows; i-- > 0;) {
            if (tab.basis[i] >= n + m) {
                tab.t.erase(tab.t.begin() + i);
                tab.basis.erase(tab.basis.begin() + i);
                --tab.rows;
            }
        }
        for (auto& row : tab.t)
            row.erase(row.begin() + (n + m), row.begin() + tab.cols);
        tab.cols = n + m;
    }

    std::vector<Rational> full(tab.cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
        full[j] = c[j];
    Rational value;
    if (!tab.solve(full, value)) {
        out.status = LpResult::Status::Unbounded;
        return out;
    }

    out.status = LpResult::Status::Optimal;
    out.value = value;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.rows; ++i)
        if (tab.basis[i] < n)
            out.x[tab.basis[i]] = tab.rhs(i);
    return out;
}

} // namespace vcsp
