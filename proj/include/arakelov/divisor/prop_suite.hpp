#pragma once

#include "arakelov/divisor/divisor.hpp"

#include <string>
#include <vector>

namespace arakelov::divisor {

struct PropCheck {
    std::string item;
    double lhs = 0.0;
    double rhs = 0.0;
    bool applicable = true;
    bool holds = true;
    std::string note;
};

struct PropSuiteReport {
    std::vector<PropCheck> checks;
    bool all_hold() const;
};

struct PropSuiteOptions {
    std::vector<int> oracle_levels{10, 20, 40};
    double tolerance = 1e-9;
};

/// Laws for mu_R on big toric divisors: subadditivity, order, principal
/// twists, homogeneity, the oracle upper bound and vanishing on nef classes.
/// The order law is checked on E' = D + F with F = E twisted until effective.
PropSuiteReport proposition_2_1_suite(const ToricArithDivisor& D, const ToricArithDivisor& E,
                                      const std::vector<double>& phi_exponents, double a_scalar,
                                      const BaseCondition& xi, const PropSuiteOptions& opts = {});

} // namespace arakelov::divisor
