#include "arakelov/convex/lp.hpp"

#include "arakelov/error.hpp"

#include <cmath>
#include <limits>

namespace arakelov::convex {

namespace {

constexpr double pivot_eps = 1e-11;

struct Tableau {
    std::size_t rows = 0;
    std::size_t cols = 0; // excluding the right-hand side
    std::vector<std::vector<double>> a;
    std::vector<std::size_t> basis;
    std::vector<bool> blocked;

    double& rhs(std::size_t i) { return a[i][cols]; }

    void pivot(std::size_t r, std::size_t c)
    {
        const double p = a[r][c];
        for (double& v : a[r])
            v /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0.0)
                continue;
            const double f = a[i][c];
            for (std::size_t j = 0; j <= cols; ++j)
                a[i][j] -= f * a[r][j];
            a[i][c] = 0.0;
        }
        basis[r] = c;
    }

    // returns false when unbounded
    bool optimize(const std::vector<double>& cost)
    {
        for (std::size_t iter = 0; iter < 100000; ++iter) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols && enter == cols; ++j) {
                if (blocked[j])
                    continue;
                double r = cost[j];
                for (std::size_t i = 0; i < rows; ++i)
                    r -= cost[basis[i]] * a[i][j];
                if (r > pivot_eps)
                    enter = j;
            }
            if (enter == cols)
                return true;
            std::size_t leave = rows;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows; ++i) {
                if (a[i][enter] <= pivot_eps)
                    continue;
                const double ratio = rhs(i) / a[i][enter];
                if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && leave < rows && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == rows)
                return false;
            pivot(leave, enter);
        }
        fail(ErrorKind::tolerance, "simplex iteration limit reached");
    }
};

} // namespace

LpResult maximize(const std::vector<double>& c,
                  const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b)
{
    const std::size_t n = c.size();
    const std::size_t m = A.size();
    if (b.size() != m)
        fail(ErrorKind::input, "LP: constraint matrix and bound vector disagree");
    for (const auto& row : A)
        if (row.size() != n)
            fail(ErrorKind::input, "LP: constraint row of wrong length");

    // columns: x+ (n), x- (n), slack (m), artificial (one per row with b < 0)
    std::size_t n_art = 0;
    for (double v : b)
        if (v < 0)
            ++n_art;
    Tableau t;
    t.rows = m;
    t.cols = 2 * n + m + n_art;
    t.a.assign(m, std::vector<double>(t.cols + 1, 0.0));
    t.basis.assign(m, 0);
    t.blocked.assign(t.cols, false);

    std::size_t art = 2 * n + m;
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = b[i] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            t.a[i][j] = sign * A[i][j];
            t.a[i][n + j] = -sign * A[i][j];
        }
        t.a[i][2 * n + i] = sign;
        t.a[i][t.cols] = sign * b[i];
        if (sign < 0) {
            t.a[i][art] = 1.0;
            t.basis[i] = art++;
        } else {
            t.basis[i] = 2 * n + i;
        }
    }

    if (n_art > 0) {
        std::vector<double> phase1(t.cols, 0.0);
        for (std::size_t j = 2 * n + m; j < t.cols; ++j)
            phase1[j] = -1.0;
        t.optimize(phase1);
        double infeas = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (t.basis[i] >= 2 * n + m)
                infeas += t.rhs(i);
        if (infeas > 1e-9)
            return {LpStatus::infeasible, {}, 0.0};
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < 2 * n + m)
                continue;
            for (std::size_t j = 0; j < 2 * n + m; ++j)
                if (std::abs(t.a[i][j]) > pivot_eps) {
                    t.pivot(i, j);
                    break;
                }
        }
        for (std::size_t j = 2 * n + m; j < t.cols; ++j)
            t.blocked[j] = true;
    }

    std::vector<double> cost(t.cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        cost[j] = c[j];
        cost[n + j] = -c[j];
    }
    if (!t.optimize(cost))
        return {LpStatus::unbounded, {}, 0.0};

    std::vector<double> y(t.cols, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        y[t.basis[i]] = t.rhs(i);
    LpResult res{LpStatus::optimal, std::vector<double>(n), 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        res.x[j] = y[j] - y[n + j];
        res.value += c[j] * res.x[j];
    }
    return res;
}

} // namespace arakelov::convex
