#pragma once

#include "arakelov/convex/polytope.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace arakelov::okounkov {

using convex::Point;
using convex::Polytope;

/// Exponent vector of a Laurent monomial in d variables.
struct MultiIndex {
    std::vector<int> e;

    std::size_t size() const { return e.size(); }
    int degree() const;
    MultiIndex operator+(const MultiIndex& other) const;
    auto operator<=>(const MultiIndex&) const = default;
    std::string str() const;
};

/// Torus-fixed point P_chart of P^d together with an ordering of its local
/// parameters. The local parameters at P_j are T_i/T_j for i != j, taken
/// in increasing i; parameter k cuts out the hyperplane H_i.
struct ValuationFlag {
    std::size_t d = 1;
    std::size_t chart = 0;
    std::vector<std::size_t> order; // order[k] = index of the k-th parameter in the natural list

    static ValuationFlag origin(std::size_t d);
    static ValuationFlag at(std::size_t d, std::size_t chart, std::vector<std::size_t> order);
    void validate() const;
    /// hyperplane index cut out by each parameter, in flag order
    std::vector<std::size_t> parameter_hyperplanes() const;
};

/// Real combination sum c_i H_i of the coordinate hyperplanes of P^d.
struct HyperplaneDivisor {
    std::vector<double> coeffs;

    std::size_t d() const { return coeffs.size() - 1; }
    double degree() const;
    HyperplaneDivisor scaled(double t) const;
    HyperplaneDivisor plus(const HyperplaneDivisor& other) const;
    /// D + (z^k) with z_i = T_i/T_0
    HyperplaneDivisor plus_principal(const MultiIndex& k) const;
    /// coefficients of D + (z^k) seen from the multiplicity side: w_i = c_i + k_i, w_0 = c_0 - |k|
    bool admits(const MultiIndex& k, double tol = 1e-9) const;
};

using Polynomial = std::map<MultiIndex, double>;

/// Lexicographic minimum of the support, after reordering by the flag.
MultiIndex ord_lex(const Polynomial& poly, const ValuationFlag& flag);

std::vector<double> mult_at_point(const HyperplaneDivisor& L, const ValuationFlag& flag);
double mult_first_coordinate(const HyperplaneDivisor& L, const ValuationFlag& flag);

struct MonomialSeries {
    int level = 0;
    std::vector<MultiIndex> support; // sorted, unique
    HyperplaneDivisor divisor;

    static MonomialSeries full(const HyperplaneDivisor& D, int level);
    /// monomials with multiplicity at least level * mu along H_hyperplane
    static MonomialSeries base_conditioned(const HyperplaneDivisor& D, int level, std::size_t hyperplane, double mu);
    static MonomialSeries of(const HyperplaneDivisor& D, int level, std::vector<MultiIndex> support);
    bool contains(const MultiIndex& m) const;
};

struct SemigroupPoints {
    std::size_t d = 1;
    std::vector<std::pair<Point, int>> points; // (valuation, level), sorted and unique

    bool empty() const { return points.empty(); }
    std::vector<Point> at_level(int m) const;
};

SemigroupPoints semigroup_points(const std::vector<MonomialSeries>& series, const ValuationFlag& flag);

Polytope okounkov_body(const SemigroupPoints& points, int m_max);

std::size_t dim_via_valuations(const MonomialSeries& V, const ValuationFlag& flag);

} // namespace arakelov::okounkov
