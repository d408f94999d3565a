#include "arakelov/convex/conjugate.hpp"

#include "arakelov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace arakelov::convex {

namespace {

void check_recession(const SlopeRange& r, double lo, double hi, std::size_t axis)
{
    const double eps = 1e-12 * std::max({1.0, std::abs(r.lo), std::abs(r.hi)});
    if (lo < r.lo - eps || hi > r.hi + eps)
        fail(ErrorKind::unbounded, "conjugate is +infinity: x range [" + std::to_string(lo) + ", "
                                       + std::to_string(hi) + "] on axis " + std::to_string(axis)
                                       + " leaves the recession range [" + std::to_string(r.lo) + ", "
                                       + std::to_string(r.hi) + "]");
}

// max_j (x s_j - u_j) for ascending x; the maximizer index is monotone for convex u
std::vector<double> sweep(const std::vector<double>& s, const std::vector<double>& u, const std::vector<double>& xs)
{
    std::vector<double> out(xs.size());
    std::size_t j = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double x = xs[k];
        while (j + 1 < s.size() && x * s[j + 1] - u[j + 1] >= x * s[j] - u[j])
            ++j;
        out[k] = x * s[j] - u[j];
    }
    return out;
}

std::vector<double> axis_points(const Axis& a)
{
    std::vector<double> p(a.count);
    for (std::size_t i = 0; i < a.count; ++i)
        p[i] = a[i];
    return p;
}

std::vector<double> lower_hull_values(const std::vector<double>& s, const std::vector<double>& u)
{
    std::vector<std::size_t> h;
    for (std::size_t i = 0; i < s.size(); ++i) {
        while (h.size() >= 2) {
            const std::size_t a = h[h.size() - 2], b = h.back();
            const double cr = (s[b] - s[a]) * (u[i] - u[a]) - (u[b] - u[a]) * (s[i] - s[a]);
            if (cr <= 0)
                h.pop_back();
            else
                break;
        }
        h.push_back(i);
    }
    std::vector<double> out(s.size());
    for (std::size_t k = 0; k + 1 < h.size(); ++k) {
        const std::size_t a = h[k], b = h[k + 1];
        for (std::size_t i = a; i <= b; ++i)
            out[i] = u[a] + (u[b] - u[a]) * (s[i] - s[a]) / (s[b] - s[a]);
    }
    if (h.size() == 1)
        out[0] = u[0];
    return out;
}

} // namespace

GridConvexFunction legendre_conjugate(const GridConvexFunction& u, const Polytope& x_domain, std::size_t resolution)
{
    if (x_domain.is_empty())
        fail(ErrorKind::input, "conjugate requested on an empty x-domain");
    if (x_domain.dimension() != u.dimension())
        fail(ErrorKind::input, "x-domain dimension differs from the potential dimension");
    const std::size_t dim = u.dimension();

    std::vector<Axis> xaxes;
    std::vector<SlopeRange> out_slopes;
    for (std::size_t k = 0; k < dim; ++k) {
        const double lo = x_domain.lower(k), hi = x_domain.upper(k);
        check_recession(u.slopes()[k], lo, hi, k);
        const std::size_t n = resolution ? resolution : u.axes()[k].count;
        xaxes.push_back({lo, hi, hi > lo ? std::max<std::size_t>(n, 2) : 1});
        out_slopes.push_back({u.axes()[k].lo, u.axes()[k].hi});
    }

    if (dim == 1) {
        const auto vals = sweep(axis_points(u.axes()[0]), u.values(), axis_points(xaxes[0]));
        return GridConvexFunction(GridFunction(xaxes, vals, out_slopes));
    }

    // separable sweep: first along s2 for each s1-row, then brute force along s1
    const auto s1 = axis_points(u.axes()[0]);
    const auto s2 = axis_points(u.axes()[1]);
    const auto x1 = axis_points(xaxes[0]);
    const auto x2 = axis_points(xaxes[1]);
    const std::size_t n1 = s1.size(), n2 = s2.size();
    std::vector<std::vector<double>> partial(n1);
    for (std::size_t j = 0; j < n1; ++j) {
        std::vector<double> row(u.values().begin() + static_cast<std::ptrdiff_t>(j * n2),
                                u.values().begin() + static_cast<std::ptrdiff_t>((j + 1) * n2));
        partial[j] = sweep(s2, row, x2);
    }
    std::vector<double> vals(x1.size() * x2.size());
    for (std::size_t a = 0; a < x1.size(); ++a)
        for (std::size_t b = 0; b < x2.size(); ++b) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n1; ++j)
                best = std::max(best, x1[a] * s1[j] + partial[j][b]);
            vals[a * x2.size() + b] = best;
        }
    return GridConvexFunction(GridFunction(xaxes, vals, out_slopes), 1e-7);
}

PiecewiseLinear conjugate_piecewise_linear(const GridConvexFunction& u, double lo, double hi)
{
    if (u.dimension() != 1)
        fail(ErrorKind::input, "piecewise-linear conjugate is one-dimensional");
    if (!(lo <= hi))
        fail(ErrorKind::precondition, "conjugate interval is inverted");
    check_recession(u.slopes()[0], lo, hi, 0);
    const auto s = axis_points(u.axes()[0]);
    const auto& v = u.values();
    std::vector<double> knots{lo};
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        const double c = (v[j + 1] - v[j]) / (s[j + 1] - s[j]);
        if (c > knots.back() && c < hi)
            knots.push_back(c);
    }
    if (hi > lo)
        knots.push_back(hi);
    auto vals = sweep(s, v, knots);
    return PiecewiseLinear(std::move(knots), std::move(vals));
}

GridConvexFunction constrained_convex_minorant(const GridFunction& u, double slope_lo, double slope_hi,
                                               const std::optional<GridFunction>& barrier)
{
    if (u.dimension() != 1)
        fail(ErrorKind::input, "constrained convex minorant is one-dimensional");
    if (!(slope_lo <= slope_hi))
        fail(ErrorKind::precondition, "slope range is inverted");
    if (barrier && !barrier->same_grid(u))
        fail(ErrorKind::input, "barrier must be sampled on the grid of u");

    const auto s = axis_points(u.axes()[0]);
    if (barrier) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double b = barrier->at(j);
            if (b > u.at(j) + 1e-9 * std::max(1.0, std::abs(b)))
                fail(ErrorKind::infeasible, "barrier exceeds u at grid point " + std::to_string(j)
                                                + " (s = " + std::to_string(s[j]) + ")");
        }
    }

    const SlopeRange r = u.slopes()[0];
    const double lo = std::max(slope_lo, r.lo);
    const double hi = std::min(slope_hi, r.hi);
    if (lo > hi + 1e-12)
        fail(ErrorKind::infeasible, "slope range [" + std::to_string(slope_lo) + ", " + std::to_string(slope_hi)
                                        + "] does not meet the recession range of u");
    const double hi_eff = std::max(lo, hi);

    const GridConvexFunction hull(GridFunction(u.axes(), lower_hull_values(s, u.values()), u.slopes()));
    const PiecewiseLinear conj = conjugate_piecewise_linear(hull, lo, hi_eff);

    // conjugate back: max over the kinks of the restricted conjugate
    const auto& xk = conj.knots();
    const auto& yk = conj.values();
    std::vector<double> h(s.size());
    std::size_t k = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        while (k + 1 < xk.size() && xk[k + 1] * s[j] - yk[k + 1] >= xk[k] * s[j] - yk[k])
            ++k;
        h[j] = xk[k] * s[j] - yk[k];
    }

    if (barrier) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double b = barrier->at(j);
            if (b > h[j] + 1e-9 * std::max(1.0, std::abs(b)))
                fail(ErrorKind::infeasible, "barrier exceeds the greatest slope-constrained minorant at grid point "
                                                + std::to_string(j) + " (s = " + std::to_string(s[j]) + ")");
        }
    }
    return GridConvexFunction(GridFunction(u.axes(), std::move(h), {{lo, hi_eff}}));
}

} // namespace arakelov::convex
