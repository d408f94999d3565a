#pragma once

#include <functional>

namespace arakelov::convex {

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

/// Maximum of a unimodal function on [a, b] (Brent's method, endpoints
/// included in the comparison).
Extremum maximize_unimodal(const std::function<double(double)>& f, double a, double b);

/// Golden-section search for the maximum of a unimodal function; tolerates
/// a jump at the peak, which Brent's parabolic steps do not.
Extremum golden_section_max(const std::function<double(double)>& f, double a, double b, int iterations = 100);

/// Root of f on [a, b] given f(a) and f(b) of opposite sign (TOMS 748).
double bracketed_root(const std::function<double(double)>& f, double a, double b);

} // namespace arakelov::convex
