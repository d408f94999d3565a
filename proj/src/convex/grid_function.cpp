#include "arakelov/convex/grid_function.hpp"

#include "arakelov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace arakelov::convex {

namespace {

std::size_t total_size(const std::vector<Axis>& axes)
{
    std::size_t n = 1;
    for (const auto& a : axes)
        n *= a.count;
    return n;
}

std::string grid_point_name(const GridFunction& f, std::size_t flat)
{
    std::string s = "(";
    const Point p = f.point(flat);
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? ", " : "") + std::to_string(p[i]);
    return s + ")";
}

// segment integral of max(y, 0) for the linear piece between (a, ya) and (b, yb)
double positive_trapezoid(double a, double ya, double b, double yb)
{
    const double w = b - a;
    if (w <= 0)
        return 0.0;
    if (ya >= 0 && yb >= 0)
        return 0.5 * w * (ya + yb);
    if (ya <= 0 && yb <= 0)
        return 0.0;
    const double pos = std::max(ya, yb);
    const double frac = pos / (pos - std::min(ya, yb));
    return 0.5 * w * frac * pos;
}

} // namespace

GridFunction::GridFunction(std::vector<Axis> axes, std::vector<double> values, std::vector<SlopeRange> slopes)
    : axes_(std::move(axes)), values_(std::move(values)), slopes_(std::move(slopes))
{
    if (axes_.empty() || axes_.size() > 2)
        fail(ErrorKind::input, "grid functions support dimension 1 or 2");
    if (slopes_.size() != axes_.size())
        fail(ErrorKind::input, "one recession slope range is required per axis");
    for (const auto& a : axes_) {
        if (a.count == 0 || !(a.hi >= a.lo) || (a.count > 1 && !(a.hi > a.lo)))
            fail(ErrorKind::input, "grid axis must have positive length and at least one point");
    }
    for (const auto& r : slopes_)
        if (!(r.lo <= r.hi))
            fail(ErrorKind::recession, "recession slope range is inverted");
    if (values_.size() != total_size(axes_))
        fail(ErrorKind::input, "grid value count does not match the axes");
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (!std::isfinite(values_[k]))
            fail(ErrorKind::input, "non-finite grid value at " + grid_point_name(*this, k));
}

GridFunction GridFunction::sample(std::vector<Axis> axes, std::vector<SlopeRange> slopes,
                                  const std::function<double(const Point&)>& f)
{
    std::vector<double> values;
    const std::size_t n = total_size(axes);
    values.reserve(n);
    if (axes.size() == 1) {
        for (std::size_t i = 0; i < axes[0].count; ++i)
            values.push_back(f({axes[0][i]}));
    } else {
        for (std::size_t i = 0; i < axes[0].count; ++i)
            for (std::size_t j = 0; j < axes[1].count; ++j)
                values.push_back(f({axes[0][i], axes[1][j]}));
    }
    return GridFunction(std::move(axes), std::move(values), std::move(slopes));
}

Point GridFunction::point(std::size_t flat) const
{
    if (axes_.size() == 1)
        return {axes_[0][flat]};
    return {axes_[0][flat / axes_[1].count], axes_[1][flat % axes_[1].count]};
}

double GridFunction::interpolate(const Point& x) const
{
    if (x.size() != axes_.size())
        fail(ErrorKind::input, "interpolation point has the wrong dimension");
    if (axes_.size() == 1) {
        const Axis& a = axes_[0];
        if (x[0] <= a.lo)
            return values_.front() + slopes_[0].lo * (x[0] - a.lo);
        if (x[0] >= a.hi)
            return values_.back() + slopes_[0].hi * (x[0] - a.hi);
        const double f = (x[0] - a.lo) / a.step();
        const std::size_t i = std::min(static_cast<std::size_t>(f), a.count - 2);
        const double t = f - static_cast<double>(i);
        return (1 - t) * values_[i] + t * values_[i + 1];
    }
    double frac[2];
    std::size_t idx[2];
    for (int k = 0; k < 2; ++k) {
        const Axis& a = axes_[k];
        if (a.count == 1) {
            idx[k] = 0;
            frac[k] = 0;
            continue;
        }
        const double f = std::clamp((x[k] - a.lo) / a.step(), 0.0, static_cast<double>(a.count - 1));
        idx[k] = std::min(static_cast<std::size_t>(f), a.count - 2);
        frac[k] = f - static_cast<double>(idx[k]);
    }
    const std::size_t n1 = axes_[1].count;
    auto v = [&](std::size_t i, std::size_t j) {
        return values_[std::min(i, axes_[0].count - 1) * n1 + std::min(j, n1 - 1)];
    };
    const double t = frac[0], u = frac[1];
    return (1 - t) * (1 - u) * v(idx[0], idx[1]) + t * (1 - u) * v(idx[0] + 1, idx[1])
         + (1 - t) * u * v(idx[0], idx[1] + 1) + t * u * v(idx[0] + 1, idx[1] + 1);
}

GridFunction GridFunction::plus(double c) const
{
    std::vector<double> v = values_;
    for (double& x : v)
        x += c;
    return GridFunction(axes_, std::move(v), slopes_);
}

GridFunction GridFunction::plus(const GridFunction& other) const
{
    if (!same_grid(other))
        fail(ErrorKind::input, "adding grid functions on different grids");
    std::vector<double> v = values_;
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] += other.values_[k];
    std::vector<SlopeRange> s = slopes_;
    for (std::size_t k = 0; k < s.size(); ++k)
        s[k] = {s[k].lo + other.slopes_[k].lo, s[k].hi + other.slopes_[k].hi};
    return GridFunction(axes_, std::move(v), std::move(s));
}

GridFunction GridFunction::minus(const GridFunction& other) const
{
    if (!same_grid(other))
        fail(ErrorKind::input, "subtracting grid functions on different grids");
    std::vector<double> v = values_;
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] -= other.values_[k];
    std::vector<SlopeRange> s = slopes_;
    for (std::size_t k = 0; k < s.size(); ++k)
        s[k] = {s[k].lo - other.slopes_[k].lo, s[k].hi - other.slopes_[k].hi};
    return GridFunction(axes_, std::move(v), std::move(s));
}

GridFunction GridFunction::scaled(double t) const
{
    std::vector<double> v = values_;
    for (double& x : v)
        x *= t;
    std::vector<SlopeRange> s = slopes_;
    for (auto& r : s)
        r = t >= 0 ? SlopeRange{t * r.lo, t * r.hi} : SlopeRange{t * r.hi, t * r.lo};
    return GridFunction(axes_, std::move(v), std::move(s));
}

GridConvexFunction::GridConvexFunction(GridFunction f, double tol) : GridFunction(std::move(f))
{
    const auto& ax = axes();
    const auto& v = values();
    auto scale = [](double a, double b, double c) {
        return std::max({1.0, std::abs(a), std::abs(b), std::abs(c)});
    };
    if (ax.size() == 1) {
        for (std::size_t i = 1; i + 1 < ax[0].count; ++i) {
            const double d2 = v[i - 1] - 2 * v[i] + v[i + 1];
            if (d2 < -tol * scale(v[i - 1], v[i], v[i + 1]))
                fail(ErrorKind::convexity, "sampled potential is not convex near s = " + std::to_string(ax[0][i]));
        }
        if (ax[0].count > 1) {
            const double h = ax[0].step();
            const double first = (v[1] - v[0]) / h;
            const double last = (v[v.size() - 1] - v[v.size() - 2]) / h;
            const auto& r = slopes()[0];
            if (first < r.lo - 1e-7 * std::max(1.0, std::abs(r.lo)) || last > r.hi + 1e-7 * std::max(1.0, std::abs(r.hi)))
                fail(ErrorKind::recession, "chord slopes leave the recession range [" + std::to_string(r.lo) + ", "
                                               + std::to_string(r.hi) + "]");
        }
        return;
    }
    const std::size_t n0 = ax[0].count, n1 = ax[1].count;
    for (std::size_t i = 0; i < n0; ++i)
        for (std::size_t j = 1; j + 1 < n1; ++j) {
            const double a = v[i * n1 + j - 1], b = v[i * n1 + j], c = v[i * n1 + j + 1];
            if (a - 2 * b + c < -tol * scale(a, b, c))
                fail(ErrorKind::convexity, "grid function is not convex along axis 1 at "
                                               + std::to_string(ax[0][i]) + ", " + std::to_string(ax[1][j]));
        }
    for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t i = 1; i + 1 < n0; ++i) {
            const double a = v[(i - 1) * n1 + j], b = v[i * n1 + j], c = v[(i + 1) * n1 + j];
            if (a - 2 * b + c < -tol * scale(a, b, c))
                fail(ErrorKind::convexity, "grid function is not convex along axis 0 at "
                                               + std::to_string(ax[0][i]) + ", " + std::to_string(ax[1][j]));
        }
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y))
{
    if (x_.empty() || x_.size() != y_.size())
        fail(ErrorKind::input, "piecewise-linear function needs matching, nonempty knots and values");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] >= x_[i - 1]))
            fail(ErrorKind::input, "piecewise-linear knots must be nondecreasing");
}

double PiecewiseLinear::operator()(double t) const
{
    const double eps = 1e-12 * std::max(1.0, std::abs(t));
    if (t < lo() - eps || t > hi() + eps)
        return -std::numeric_limits<double>::infinity();
    if (t <= lo())
        return y_.front();
    if (t >= hi())
        return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - x_.begin());
    const double w = x_[k] - x_[k - 1];
    if (w <= 0)
        return y_[k];
    const double s = (t - x_[k - 1]) / w;
    return (1 - s) * y_[k - 1] + s * y_[k];
}

double PiecewiseLinear::max() const
{
    return *std::max_element(y_.begin(), y_.end());
}

double PiecewiseLinear::argmax() const
{
    return x_[static_cast<std::size_t>(std::max_element(y_.begin(), y_.end()) - y_.begin())];
}

double PiecewiseLinear::integral(double a, double b) const
{
    a = std::max(a, lo());
    b = std::min(b, hi());
    double s = 0.0;
    for (std::size_t k = 1; k < x_.size(); ++k) {
        const double l = std::max(a, x_[k - 1]), r = std::min(b, x_[k]);
        if (r > l)
            s += 0.5 * (r - l) * ((*this)(l) + (*this)(r));
    }
    return s;
}

double PiecewiseLinear::integral_positive(double a, double b) const
{
    a = std::max(a, lo());
    b = std::min(b, hi());
    double s = 0.0;
    for (std::size_t k = 1; k < x_.size(); ++k) {
        const double l = std::max(a, x_[k - 1]), r = std::min(b, x_[k]);
        if (r > l)
            s += positive_trapezoid(l, (*this)(l), r, (*this)(r));
    }
    return s;
}

std::optional<std::pair<double, double>> PiecewiseLinear::superlevel(double level) const
{
    const std::size_t k = static_cast<std::size_t>(std::max_element(y_.begin(), y_.end()) - y_.begin());
    if (y_[k] < level)
        return std::nullopt;
    double left = x_.front();
    for (std::size_t i = k; i > 0; --i)
        if (y_[i - 1] < level) {
            left = x_[i - 1] + (x_[i] - x_[i - 1]) * (level - y_[i - 1]) / (y_[i] - y_[i - 1]);
            break;
        }
    double right = x_.back();
    for (std::size_t i = k; i + 1 < x_.size(); ++i)
        if (y_[i + 1] < level) {
            right = x_[i] + (x_[i + 1] - x_[i]) * (y_[i] - level) / (y_[i] - y_[i + 1]);
            break;
        }
    return std::make_pair(left, right);
}

PiecewiseLinear PiecewiseLinear::plus(double c) const
{
    std::vector<double> y = y_;
    for (double& v : y)
        v += c;
    return PiecewiseLinear(x_, std::move(y));
}

} // namespace arakelov::convex
