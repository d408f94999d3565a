#include "arakelov/convex/concave.hpp"

#include "arakelov/convex/optimize.hpp"
#include "arakelov/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace arakelov::convex {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::pair<double, double> slice_bounds(const Polytope& P, double x1)
{
    double lo = -inf, hi = inf;
    for (const auto& h : P.halfspaces()) {
        const double n2 = h.normal[1];
        if (std::abs(n2) < 1e-14)
            continue;
        const double v = (h.offset - h.normal[0] * x1) / n2;
        if (n2 > 0)
            hi = std::min(hi, v);
        else
            lo = std::max(lo, v);
    }
    return {lo, hi};
}

double positive_1d(const std::function<double(double)>& g, double a, double b, double tol)
{
    if (!(b > a))
        return 0.0;
    const auto iv = superlevel_interval(g, a, b, 0.0);
    if (!iv || !(iv->second > iv->first))
        return 0.0;
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [&g](double t) { return g(t); };
    return integrator.integrate(f, iv->first, iv->second, tol);
}

struct Plane {
    double c0, c1, c2;
    double operator()(const Point& p) const { return c0 + c1 * p[0] + c2 * p[1]; }
};

Plane fit_plane(const Point& a, double va, const Point& b, double vb, const Point& c, double vc)
{
    const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    const double c1 = ((vb - va) * (c[1] - a[1]) - (vc - va) * (b[1] - a[1])) / det;
    const double c2 = ((b[0] - a[0]) * (vc - va) - (c[0] - a[0]) * (vb - va)) / det;
    return {va - c1 * a[0] - c2 * a[1], c1, c2};
}

std::vector<Point> clip_polygon(const std::vector<Point>& poly, const Point& n, double offset)
{
    std::vector<Point> out;
    const std::size_t m = poly.size();
    for (std::size_t k = 0; k < m; ++k) {
        const Point& p = poly[k];
        const Point& q = poly[(k + 1) % m];
        const double sp = n[0] * p[0] + n[1] * p[1] - offset;
        const double sq = n[0] * q[0] + n[1] * q[1] - offset;
        if (sp <= 0)
            out.push_back(p);
        if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)) {
            const double t = sp / (sp - sq);
            out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return out;
}

double integrate_plane(const std::vector<Point>& poly, const Plane& f)
{
    double s = 0.0;
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        const Point& a = poly[0];
        const Point& b = poly[k];
        const Point& c = poly[k + 1];
        const double area = 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
        s += area * (f(a) + f(b) + f(c)) / 3.0;
    }
    return s;
}

double integrate_grid_triangle(const std::vector<Point>& tri, const double* vals, const Polytope& P, double offset)
{
    const Plane plane = fit_plane(tri[0], vals[0] + offset, tri[1], vals[1] + offset, tri[2], vals[2] + offset);
    std::vector<Point> poly = tri;
    for (const auto& h : P.halfspaces()) {
        poly = clip_polygon(poly, h.normal, h.offset);
        if (poly.size() < 3)
            return 0.0;
    }
    if (plane.c1 != 0.0 || plane.c2 != 0.0)
        poly = clip_polygon(poly, {-plane.c1, -plane.c2}, plane.c0);
    else if (plane.c0 < 0)
        return 0.0;
    if (poly.size() < 3)
        return 0.0;
    return integrate_plane(poly, plane);
}

double integrate_grid(const GridFunction& g, double offset, const Polytope& P)
{
    const Axis& a0 = g.axes()[0];
    const Axis& a1 = g.axes()[1];
    if (a0.count < 2 || a1.count < 2)
        return 0.0;
    const double xlo = P.lower(0), xhi = P.upper(0), ylo = P.lower(1), yhi = P.upper(1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < a0.count; ++i) {
        if (a0[i + 1] < xlo || a0[i] > xhi)
            continue;
        for (std::size_t j = 0; j + 1 < a1.count; ++j) {
            if (a1[j + 1] < ylo || a1[j] > yhi)
                continue;
            const Point p00{a0[i], a1[j]}, p10{a0[i + 1], a1[j]}, p01{a0[i], a1[j + 1]}, p11{a0[i + 1], a1[j + 1]};
            const double lower[3] = {g.at(i, j), g.at(i + 1, j), g.at(i, j + 1)};
            const double upper[3] = {g.at(i + 1, j + 1), g.at(i + 1, j), g.at(i, j + 1)};
            total += integrate_grid_triangle({p00, p10, p01}, lower, P, offset);
            total += integrate_grid_triangle({p11, p10, p01}, upper, P, offset);
        }
    }
    return total;
}

double grid_value(const GridFunction& g, const Point& x)
{
    const Axis& a0 = g.axes()[0];
    const Axis& a1 = g.axes()[1];
    auto locate = [](const Axis& a, double v, std::size_t& idx, double& frac) {
        if (a.count == 1) {
            idx = 0;
            frac = 0;
            return;
        }
        const double f = std::clamp((v - a.lo) / a.step(), 0.0, static_cast<double>(a.count - 1));
        idx = std::min(static_cast<std::size_t>(f), a.count - 2);
        frac = f - static_cast<double>(idx);
    };
    std::size_t i, j;
    double t, u;
    locate(a0, x[0], i, t);
    locate(a1, x[1], j, u);
    if (a0.count == 1 || a1.count == 1)
        return g.interpolate(x);
    if (t + u <= 1.0)
        return g.at(i, j) + t * (g.at(i + 1, j) - g.at(i, j)) + u * (g.at(i, j + 1) - g.at(i, j));
    return g.at(i + 1, j + 1) + (1 - t) * (g.at(i, j + 1) - g.at(i + 1, j + 1))
         + (1 - u) * (g.at(i + 1, j) - g.at(i + 1, j + 1));
}

} // namespace

ConcaveFunction ConcaveFunction::analytic(Polytope domain, Evaluator f)
{
    ConcaveFunction g;
    g.kind_ = Kind::analytic;
    g.domain_ = std::move(domain);
    g.eval_ = std::make_shared<const Evaluator>(std::move(f));
    return g;
}

ConcaveFunction ConcaveFunction::piecewise_linear(PiecewiseLinear pl)
{
    ConcaveFunction g;
    g.kind_ = Kind::piecewise_linear;
    g.domain_ = convex_hull({{pl.lo()}, {pl.hi()}});
    g.pl_ = std::make_shared<const PiecewiseLinear>(std::move(pl));
    return g;
}

ConcaveFunction ConcaveFunction::grid(Polytope domain, GridFunction samples)
{
    if (samples.dimension() != 2 || domain.dimension() != 2)
        fail(ErrorKind::input, "grid-backed concave functions are two-dimensional");
    ConcaveFunction g;
    g.kind_ = Kind::grid;
    g.domain_ = std::move(domain);
    g.grid_ = std::make_shared<const GridFunction>(std::move(samples));
    return g;
}

double ConcaveFunction::raw(const Point& x) const
{
    switch (kind_) {
    case Kind::analytic: return (*eval_)(x) + offset_;
    case Kind::piecewise_linear: return (*pl_)(x[0]) + offset_;
    case Kind::grid: return grid_value(*grid_, x) + offset_;
    }
    return -inf;
}

double ConcaveFunction::operator()(const Point& x) const
{
    if (!domain_.contains(x))
        return -inf;
    return raw(x);
}

ConcaveFunction ConcaveFunction::shifted(double c) const
{
    ConcaveFunction g = *this;
    g.offset_ += c;
    return g;
}

const PiecewiseLinear& ConcaveFunction::piecewise_form() const
{
    if (!pl_)
        fail(ErrorKind::precondition, "concave function has no piecewise-linear form");
    return *pl_;
}

const GridFunction& ConcaveFunction::grid_form() const
{
    if (!grid_)
        fail(ErrorKind::precondition, "concave function has no grid form");
    return *grid_;
}

bool Region::contains(const Point& x, double tol) const
{
    if (!base.contains(x, tol))
        return false;
    for (const auto& h : constraints)
        if (!h.satisfied(x, tol))
            return false;
    return !indicator || indicator(x);
}

std::optional<std::pair<double, double>> superlevel_interval(const std::function<double(double)>& g, double a,
                                                             double b, double level)
{
    const Extremum m = maximize_unimodal(g, a, b);
    if (!(m.value >= level))
        return std::nullopt;
    auto shifted = [&](double t) { return g(t) - level; };
    const double left = shifted(a) >= 0 ? a : bracketed_root(shifted, a, m.x);
    const double right = shifted(b) >= 0 ? b : bracketed_root(shifted, m.x, b);
    return std::make_pair(left, right);
}

double integrate_positive_part(const ConcaveFunction& G, const Region& region, const QuadratureOptions& opts)
{
    if (G.domain().is_empty() || region.base.is_empty())
        return 0.0;
    if (region.base.dimension() != G.dimension())
        fail(ErrorKind::input, "region and function live in different dimensions");
    std::vector<Halfspace> cuts = region.constraints;
    cuts.insert(cuts.end(), G.domain().halfspaces().begin(), G.domain().halfspaces().end());
    const Polytope P = region.base.intersect(cuts);
    if (!P.is_full_dimensional())
        return 0.0;

    if (G.dimension() == 1) {
        const double a = P.lower(0), b = P.upper(0);
        if (G.kind() == ConcaveFunction::Kind::piecewise_linear)
            return G.piecewise_form().plus(G.offset()).integral_positive(a, b);
        return positive_1d([&](double t) { return G(Point{t}); }, a, b, opts.tolerance);
    }

    if (G.kind() == ConcaveFunction::Kind::grid)
        return integrate_grid(G.grid_form(), G.offset(), P);

    std::vector<double> xs;
    for (const auto& v : P.vertices())
        xs.push_back(v[0]);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [](double p, double q) { return std::abs(p - q) < 1e-13; }),
             xs.end());

    auto inner = [&](double x1) {
        const auto [lo, hi] = slice_bounds(P, x1);
        return positive_1d([&](double t) { return G(Point{x1, t}); }, lo, hi, opts.tolerance);
    };
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inner, xs[k], xs[k + 1], 15,
                                                                              opts.tolerance * 10, &err);
    }
    return total;
}

ConcaveMaximum maximize(const ConcaveFunction& G)
{
    const Polytope& D = G.domain();
    if (D.is_empty())
        fail(ErrorKind::precondition, "maximum over an empty domain");
    if (G.kind() == ConcaveFunction::Kind::piecewise_linear) {
        const auto& pl = G.piecewise_form();
        return {{pl.argmax()}, pl.max() + G.offset()};
    }
    if (G.dimension() == 1) {
        const auto m = maximize_unimodal([&](double t) { return G(Point{t}); }, D.lower(0), D.upper(0));
        return {{m.x}, m.value};
    }
    if (G.kind() == ConcaveFunction::Kind::grid) {
        ConcaveMaximum best{D.vertices().front(), G(D.vertices().front())};
        for (const auto& v : D.vertices())
            if (G(v) > best.value)
                best = {v, G(v)};
        const GridFunction& g = G.grid_form();
        for (std::size_t k = 0; k < g.size(); ++k) {
            const Point p = g.point(k);
            if (D.contains(p) && g.values()[k] + G.offset() > best.value)
                best = {p, g.values()[k] + G.offset()};
        }
        return best;
    }
    double arg2 = 0.0;
    auto slice_max = [&](double x1, double* where) {
        const auto [lo, hi] = slice_bounds(D, x1);
        if (!(hi >= lo))
            return -inf;
        const auto m = maximize_unimodal([&](double t) { return G(Point{x1, t}); }, lo, hi);
        if (where)
            *where = m.x;
        return m.value;
    };
    const auto outer = maximize_unimodal([&](double x1) { return slice_max(x1, nullptr); }, D.lower(0), D.upper(0));
    const double v = slice_max(outer.x, &arg2);
    return {{outer.x, arg2}, v};
}

} // namespace arakelov::convex
