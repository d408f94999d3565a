#pragma once

#include "arakelov/convex/grid_function.hpp"
#include "arakelov/convex/polytope.hpp"

#include <cstddef>
#include <optional>

namespace arakelov::convex {

/// u*(x) = sup_s (<x, s> - u(s)) for the interpolant of u extended by its
/// recession slopes, sampled on the bounding box of x_domain with
/// `resolution` points per axis (0 keeps the resolution of u).
GridConvexFunction legendre_conjugate(const GridConvexFunction& u, const Polytope& x_domain,
                                      std::size_t resolution = 0);

/// Exact conjugate of the same 1-d interpolant restricted to [lo, hi]; it is
/// piecewise linear with kinks at the chord slopes of u.
PiecewiseLinear conjugate_piecewise_linear(const GridConvexFunction& u, double lo, double hi);

/// Greatest convex h <= u on the grid with slopes in [slope_lo, slope_hi],
/// optionally required to stay above `barrier` (sampled on the same grid).
GridConvexFunction constrained_convex_minorant(const GridFunction& u, double slope_lo, double slope_hi,
                                               const std::optional<GridFunction>& barrier = std::nullopt);

} // namespace arakelov::convex
