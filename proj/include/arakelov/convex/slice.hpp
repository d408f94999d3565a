#pragma once

#include "arakelov/convex/polytope.hpp"

#include <optional>
#include <vector>

namespace arakelov::convex {

struct Ball {
    Point center;
    double radius = 0.0;
};

/// Largest ball (radius capped at 1) inside the polytope cut by the extra
/// halfspaces; nullopt when no ball of positive radius fits.
std::optional<Ball> chebyshev_ball(const Polytope& P, const std::vector<Halfspace>& extra = {});

/// Ball witnessing that {x in C : x_1 < a} has nonempty interior.
std::optional<Ball> slice_interior_witness(const Polytope& C, double a);

bool sliced_interior_nonempty(const Polytope& C, double a);

} // namespace arakelov::convex
