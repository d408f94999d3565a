#include "arakelov/convex/polytope.hpp"

#include "arakelov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace arakelov::convex {

namespace {

constexpr double clip_box = 1e6;

double dot(const Point& a, const Point& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double cross(const Point& o, const Point& a, const Point& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double scale_of(const std::vector<Point>& pts)
{
    double s = 1.0;
    for (const auto& p : pts)
        for (double v : p)
            s = std::max(s, std::abs(v));
    return s;
}

std::vector<Point> clip(const std::vector<Point>& poly, const Halfspace& h, double tol)
{
    std::vector<Point> out;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point& p = poly[k];
        const Point& q = poly[(k + 1) % n];
        const double sp = h.slack(p);
        const double sq = h.slack(q);
        const bool in_p = sp <= tol;
        const bool in_q = sq <= tol;
        if (in_p)
            out.push_back(p);
        if (in_p != in_q && std::abs(sp - sq) > 0.0) {
            const double t = sp / (sp - sq);
            if (t > 0.0 && t < 1.0)
                out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return out;
}

} // namespace

double Halfspace::slack(const Point& x) const
{
    return dot(normal, x) - offset;
}

bool Halfspace::satisfied(const Point& x, double tol) const
{
    return slack(x) <= tol;
}

Halfspace make_halfspace(Point normal, double offset)
{
    double len = std::sqrt(dot(normal, normal));
    if (!(len > 0.0))
        fail(ErrorKind::input, "halfspace with zero normal");
    for (double& v : normal)
        v /= len;
    return {std::move(normal), offset / len};
}

Polytope convex_hull(const std::vector<Point>& points)
{
    if (points.empty())
        fail(ErrorKind::input, "convex hull of an empty point set");
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
        if (p.size() != dim)
            fail(ErrorKind::input, "convex hull: points of mixed dimension");
        for (double v : p)
            if (!std::isfinite(v))
                fail(ErrorKind::input, "convex hull: non-finite coordinate");
    }
    if (dim == 0 || dim > 2)
        fail(ErrorKind::input, "convex hull supports dimension 1 or 2, got " + std::to_string(dim));

    Polytope poly;
    poly.dimension_ = dim;
    const double eps = 1e-12 * scale_of(points);

    if (dim == 1) {
        double lo = points.front()[0];
        double hi = lo;
        for (const auto& p : points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        if (hi - lo <= eps) {
            poly.affine_dimension_ = 0;
            poly.vertices_ = {{lo}};
            hi = lo;
        } else {
            poly.affine_dimension_ = 1;
            poly.vertices_ = {{lo}, {hi}};
        }
        poly.halfspaces_ = {{{1.0}, hi}, {{-1.0}, -lo}};
        return poly;
    }

    std::vector<Point> pts = points;
    std::sort(pts.begin(), pts.end());
    std::vector<Point> uniq;
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& u : uniq)
            if (std::abs(u[0] - p[0]) <= eps && std::abs(u[1] - p[1]) <= eps) {
                dup = true;
                break;
            }
        if (!dup)
            uniq.push_back(p);
    }

    std::vector<Point> hull;
    if (uniq.size() >= 3) {
        const double area_eps = eps * scale_of(uniq);
        std::vector<Point> h(2 * uniq.size());
        std::size_t k = 0;
        for (const auto& p : uniq) {
            while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= area_eps)
                --k;
            h[k++] = p;
        }
        for (std::size_t i = uniq.size() - 1, t = k + 1; i-- > 0;) {
            const auto& p = uniq[i];
            while (k >= t && cross(h[k - 2], h[k - 1], p) <= area_eps)
                --k;
            h[k++] = p;
        }
        h.resize(k - 1);
        hull = std::move(h);
    } else {
        hull = uniq;
    }

    if (hull.size() <= 1) {
        const Point& p = hull.empty() ? uniq.front() : hull.front();
        poly.affine_dimension_ = 0;
        poly.vertices_ = {p};
        poly.halfspaces_ = {{{1.0, 0.0}, p[0]}, {{-1.0, 0.0}, -p[0]},
                            {{0.0, 1.0}, p[1]}, {{0.0, -1.0}, -p[1]}};
        return poly;
    }
    if (hull.size() == 2) {
        // collinear input: the chain keeps the two extreme points
        const Point& p = hull[0];
        const Point& q = hull[1];
        const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
        const Point d{(q[0] - p[0]) / len, (q[1] - p[1]) / len};
        const Point n{-d[1], d[0]};
        poly.affine_dimension_ = 1;
        poly.vertices_ = {p, q};
        poly.halfspaces_ = {{n, dot(n, p)}, {{-n[0], -n[1]}, -dot(n, p)},
                            {d, dot(d, q)}, {{-d[0], -d[1]}, -dot(d, p)}};
        return poly;
    }

    poly.affine_dimension_ = 2;
    poly.vertices_ = hull;
    for (std::size_t k = 0; k < hull.size(); ++k) {
        const Point& p = hull[k];
        const Point& q = hull[(k + 1) % hull.size()];
        poly.halfspaces_.push_back(make_halfspace({q[1] - p[1], p[0] - q[0]},
                                                  (q[1] - p[1]) * p[0] + (p[0] - q[0]) * p[1]));
    }
    return poly;
}

Polytope Polytope::empty(std::size_t dimension)
{
    Polytope p;
    p.dimension_ = dimension;
    return p;
}

Polytope Polytope::from_vertices(std::size_t dimension, const std::vector<Point>& points)
{
    if (points.empty())
        return empty(dimension);
    Polytope p = convex_hull(points);
    if (p.dimension() != dimension)
        fail(ErrorKind::input, "vertex dimension does not match polytope dimension");
    return p;
}

Polytope Polytope::from_halfspaces(std::size_t dimension, const std::vector<Halfspace>& halfspaces)
{
    for (const auto& h : halfspaces)
        if (h.normal.size() != dimension)
            fail(ErrorKind::input, "halfspace dimension mismatch");
    const double tol = 1e-12;

    if (dimension == 1) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (const auto& h : halfspaces) {
            const double n = h.normal[0];
            if (std::abs(n) < 1e-15) {
                if (h.offset < -tol)
                    return empty(1);
                continue;
            }
            if (n > 0)
                hi = std::min(hi, h.offset / n);
            else
                lo = std::max(lo, h.offset / n);
        }
        if (!std::isfinite(lo) || !std::isfinite(hi))
            fail(ErrorKind::unbounded, "halfspace system is unbounded");
        if (lo > hi + geometric_tolerance)
            return empty(1);
        if (lo > hi)
            lo = hi = 0.5 * (lo + hi);
        return convex_hull({{lo}, {hi}});
    }
    if (dimension != 2)
        fail(ErrorKind::input, "polytopes are supported in dimension 1 or 2");

    std::vector<Point> poly{{-clip_box, -clip_box}, {clip_box, -clip_box},
                            {clip_box, clip_box}, {-clip_box, clip_box}};
    for (const auto& h : halfspaces) {
        poly = clip(poly, h, tol);
        if (poly.empty())
            return empty(2);
    }
    for (const auto& p : poly)
        if (std::abs(p[0]) > 0.5 * clip_box || std::abs(p[1]) > 0.5 * clip_box)
            fail(ErrorKind::unbounded, "halfspace system is unbounded");
    // refine: exact pairwise intersections of the constraint lines that are feasible
    std::vector<Point> merged;
    auto add = [&](const Point& p) {
        for (const auto& q : merged)
            if (std::abs(p[0] - q[0]) <= geometric_tolerance && std::abs(p[1] - q[1]) <= geometric_tolerance)
                return;
        merged.push_back(p);
    };
    for (std::size_t i = 0; i < halfspaces.size(); ++i)
        for (std::size_t j = i + 1; j < halfspaces.size(); ++j) {
            const auto& a = halfspaces[i];
            const auto& b = halfspaces[j];
            const double det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
            if (std::abs(det) < 1e-13)
                continue;
            const Point x{(a.offset * b.normal[1] - a.normal[1] * b.offset) / det,
                          (a.normal[0] * b.offset - a.offset * b.normal[0]) / det};
            bool ok = true;
            for (const auto& h : halfspaces)
                if (h.slack(x) > geometric_tolerance) {
                    ok = false;
                    break;
                }
            if (ok)
                add(x);
        }
    if (merged.empty())
        for (const auto& p : poly)
            add(p);
    return convex_hull(merged);
}

Polytope Polytope::box(const Point& lower, const Point& upper)
{
    if (lower.size() != upper.size())
        fail(ErrorKind::input, "box bounds of different dimension");
    if (lower.size() == 1)
        return convex_hull({lower, upper});
    if (lower.size() == 2)
        return convex_hull({lower, {upper[0], lower[1]}, upper, {lower[0], upper[1]}});
    fail(ErrorKind::input, "boxes are supported in dimension 1 or 2");
}

Polytope Polytope::simplex(const Point& lower, double upper_sum)
{
    double s = 0.0;
    for (double v : lower)
        s += v;
    if (upper_sum < s - geometric_tolerance)
        return empty(lower.size());
    const double r = std::max(0.0, upper_sum - s);
    if (lower.size() == 1)
        return convex_hull({lower, {lower[0] + r}});
    if (lower.size() == 2)
        return convex_hull({lower, {lower[0] + r, lower[1]}, {lower[0], lower[1] + r}});
    fail(ErrorKind::input, "simplices are supported in dimension 1 or 2");
}

bool Polytope::contains(const Point& x, double tol) const
{
    if (is_empty() || x.size() != dimension_)
        return false;
    for (const auto& h : halfspaces_)
        if (!h.satisfied(x, tol))
            return false;
    return true;
}

double Polytope::volume() const
{
    if (!is_full_dimensional())
        return 0.0;
    if (dimension_ == 1)
        return vertices_[1][0] - vertices_[0][0];
    double a = 0.0;
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        const Point& p = vertices_[k];
        const Point& q = vertices_[(k + 1) % vertices_.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

double Polytope::lower(std::size_t axis) const
{
    if (is_empty())
        fail(ErrorKind::precondition, "bounds of an empty polytope");
    double v = vertices_.front()[axis];
    for (const auto& p : vertices_)
        v = std::min(v, p[axis]);
    return v;
}

double Polytope::upper(std::size_t axis) const
{
    if (is_empty())
        fail(ErrorKind::precondition, "bounds of an empty polytope");
    double v = vertices_.front()[axis];
    for (const auto& p : vertices_)
        v = std::max(v, p[axis]);
    return v;
}

Polytope Polytope::intersect(const std::vector<Halfspace>& extra) const
{
    if (is_empty())
        return *this;
    std::vector<Halfspace> all = halfspaces_;
    all.insert(all.end(), extra.begin(), extra.end());
    return from_halfspaces(dimension_, all);
}

Polytope Polytope::scaled(double factor) const
{
    if (is_empty())
        return *this;
    std::vector<Point> pts = vertices_;
    for (auto& p : pts)
        for (double& v : p)
            v *= factor;
    return convex_hull(pts);
}

bool Polytope::same_as(const Polytope& other, double tol) const
{
    if (is_empty() || other.is_empty())
        return is_empty() && other.is_empty();
    if (dimension_ != other.dimension_ || vertices_.size() != other.vertices_.size())
        return false;
    for (const auto& p : vertices_) {
        bool found = false;
        for (const auto& q : other.vertices_) {
            double dist = 0.0;
            for (std::size_t i = 0; i < dimension_; ++i)
                dist = std::max(dist, std::abs(p[i] - q[i]));
            if (dist <= tol) {
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

} // namespace arakelov::convex
