#pragma once

#include "arakelov/convex/grid_function.hpp"
#include "arakelov/convex/polytope.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace arakelov::convex {

/// Concave function on a polytope domain in R^1 or R^2, backed either by an
/// evaluator, by an exact piecewise-linear form (1-d) or by box-grid samples
/// interpolated on the standard triangulation of each cell (2-d).
class ConcaveFunction {
public:
    enum class Kind { analytic, piecewise_linear, grid };
    using Evaluator = std::function<double(const Point&)>;

    static ConcaveFunction analytic(Polytope domain, Evaluator f);
    static ConcaveFunction piecewise_linear(PiecewiseLinear g);
    static ConcaveFunction grid(Polytope domain, GridFunction samples);

    Kind kind() const { return kind_; }
    const Polytope& domain() const { return domain_; }
    std::size_t dimension() const { return domain_.dimension(); }
    double offset() const { return offset_; }

    /// -infinity outside the domain
    double operator()(const Point& x) const;

    ConcaveFunction shifted(double c) const;

    const PiecewiseLinear& piecewise_form() const;
    const GridFunction& grid_form() const;

private:
    Kind kind_ = Kind::analytic;
    Polytope domain_;
    double offset_ = 0.0;
    std::shared_ptr<const Evaluator> eval_;
    std::shared_ptr<const PiecewiseLinear> pl_;
    std::shared_ptr<const GridFunction> grid_;

    double raw(const Point& x) const;
};

/// Base polytope cut by extra linear constraints, with an optional extra
/// membership predicate used when sampling on grids.
struct Region {
    Polytope base;
    std::vector<Halfspace> constraints;
    std::function<bool(const Point&)> indicator;

    static Region of(Polytope p) { return Region{std::move(p), {}, {}}; }
    Polytope polytope() const { return base.intersect(constraints); }
    bool contains(const Point& x, double tol = geometric_tolerance) const;
    bool is_empty() const { return polytope().is_empty(); }
};

struct QuadratureOptions {
    double tolerance = 1e-11;
};

/// Integral of max(G, 0) over region intersected with the domain of G.
double integrate_positive_part(const ConcaveFunction& G, const Region& region, const QuadratureOptions& opts = {});

struct ConcaveMaximum {
    Point x;
    double value = 0.0;
};

ConcaveMaximum maximize(const ConcaveFunction& G);

/// {t in [a, b] : g(t) >= level} for concave g; nullopt when empty.
std::optional<std::pair<double, double>> superlevel_interval(const std::function<double(double)>& g, double a,
                                                             double b, double level = 0.0);

} // namespace arakelov::convex
