#pragma once

#include "arakelov/divisor/divisor.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace arakelov::oracle {

using divisor::BaseCondition;
using divisor::ToricArithDivisor;
using okounkov::MultiIndex;

struct SectionEntry {
    MultiIndex m;
    double log_radius = 0.0; // log R_m = -log ||z^m||
    double radius() const;
};

/// Monomials z^m of nD meeting the horizontal conditions, lexicographic in m.
struct SectionEnumeration {
    int n = 0;
    std::vector<SectionEntry> entries;
    std::vector<BaseCondition> constraints;
};

SectionEnumeration enumerate_sections(const ToricArithDivisor& D, int n, const std::vector<BaseCondition>& conditions = {});

/// Number of integers c >= 0 with c * q * ||z^m|| <= 1, i.e. floor(R_m / q).
/// Exact rational comparison when the closed form has rational data; a
/// 1e-9 guard band otherwise, ties counted in. Saturates at 2^62.
std::int64_t floor_radius(const ToricArithDivisor& D, int n, const SectionEntry& e, std::uint64_t q = 1);

/// L(n) = sum_m log(2 floor(R_m / p^ceil(n mu)) + 1): log-size of the diagonal
/// coefficient box, within O(n^d log n) of log #H^0.
double log_count(const ToricArithDivisor& D, int n, const std::vector<BaseCondition>& conditions = {});

/// (d+1)! L(n) / n^(d+1)
double normalized_log_count(const ToricArithDivisor& D, int n, const std::vector<BaseCondition>& conditions = {});

struct MuQPoint {
    int n = 0;
    std::optional<double> value;    // min over sections at level n, none if no sections
    std::optional<double> envelope; // running minimum
};

struct MuQApprox {
    std::vector<MuQPoint> points;
    bool bigness_warning = false; // no sections at any requested level
};

MuQApprox mu_Q_approx(const ToricArithDivisor& D, const BaseCondition& xi, const std::vector<int>& levels);

/// ||z^m|| by direct maximization of <m, s> - n g(s) over s = log|z|^2.
double log_sup_norm_numeric(const ToricArithDivisor& D, int n, const MultiIndex& m);
double sup_norm_numeric(const ToricArithDivisor& D, int n, const MultiIndex& m);

struct SandwichResult {
    bool evaluated = false;
    std::uint64_t box = 0; // 0 when the box exceeds the enumeration budget
    std::uint64_t members = 0;
    double exact_log_count = 0.0;
    double L = 0.0;
    double bound = 0.0;
    bool holds = false;
};

/// d = 1 only: counts every integer polynomial in the coefficient box whose
/// norm, sampled on circles, is at most 1, and compares with L(n).
SandwichResult sandwich_check(const ToricArithDivisor& D, int n, std::uint64_t max_box = 200000);

struct SuperadditivityResult {
    double lhs = 0.0; // L(n1 + n2)
    double rhs = 0.0; // L(n1) + L(n2) - slack
    double slack = 0.0;
    bool holds = false;
};

SuperadditivityResult superadditivity_check(const ToricArithDivisor& D, int n1, int n2);

} // namespace arakelov::oracle
