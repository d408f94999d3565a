#pragma once

#include <vector>

namespace arakelov::convex {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double value = 0.0;
};

/// maximize c.x subject to A x <= b with x free. Dense two-phase simplex
/// with Bland's rule; meant for the handful of variables used here.
LpResult maximize(const std::vector<double>& c,
                  const std::vector<std::vector<double>>& A,
                  const std::vector<double>& b);

} // namespace arakelov::convex
