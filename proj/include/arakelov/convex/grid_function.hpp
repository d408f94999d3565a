#pragma once

#include "arakelov/convex/polytope.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace arakelov::convex {

inline constexpr double convexity_tolerance = 1e-9;

struct Axis {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 1;

    double step() const { return count > 1 ? (hi - lo) / static_cast<double>(count - 1) : 0.0; }
    double operator[](std::size_t i) const
    {
        return i + 1 == count ? hi : lo + static_cast<double>(i) * step();
    }
    bool operator==(const Axis&) const = default;
};

struct SlopeRange {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const SlopeRange&) const = default;
};

/// Samples on a uniform box grid (row-major, last axis fastest) together
/// with the recession slopes of the function outside the box, per axis.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(std::vector<Axis> axes, std::vector<double> values, std::vector<SlopeRange> slopes);

    static GridFunction sample(std::vector<Axis> axes, std::vector<SlopeRange> slopes,
                               const std::function<double(const Point&)>& f);

    std::size_t dimension() const { return axes_.size(); }
    const std::vector<Axis>& axes() const { return axes_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<SlopeRange>& slopes() const { return slopes_; }
    std::size_t size() const { return values_.size(); }

    double at(std::size_t i) const { return values_[i]; }
    double at(std::size_t i, std::size_t j) const { return values_[i * axes_[1].count + j]; }
    Point point(std::size_t flat) const;

    /// Linear (1-d) or bilinear (2-d) interpolation, extended by the
    /// recession slopes outside the box in 1-d.
    double interpolate(const Point& x) const;

    GridFunction plus(double c) const;
    GridFunction plus(const GridFunction& other) const;
    GridFunction minus(const GridFunction& other) const;
    GridFunction scaled(double t) const;
    bool same_grid(const GridFunction& other) const { return axes_ == other.axes_; }

private:
    std::vector<Axis> axes_;
    std::vector<double> values_;
    std::vector<SlopeRange> slopes_;
};

/// GridFunction whose samples are discretely convex along every grid line.
/// In 1-d the chord slopes must also lie inside the recession range.
class GridConvexFunction : public GridFunction {
public:
    GridConvexFunction() = default;
    explicit GridConvexFunction(GridFunction f, double tol = convexity_tolerance);
};

/// Continuous piecewise-linear function on [x.front(), x.back()].
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;
    PiecewiseLinear(std::vector<double> x, std::vector<double> y);

    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }
    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }

    double operator()(double t) const;
    double max() const;
    double argmax() const;
    double integral(double a, double b) const;
    double integral_positive(double a, double b) const;
    /// {t : f(t) >= level} for concave f, or nullopt when empty
    std::optional<std::pair<double, double>> superlevel(double level) const;

    PiecewiseLinear plus(double c) const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

} // namespace arakelov::convex
