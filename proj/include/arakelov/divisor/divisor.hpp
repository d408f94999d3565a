#pragma once

#include "arakelov/convex/concave.hpp"
#include "arakelov/convex/grid_function.hpp"
#include "arakelov/convex/polytope.hpp"
#include "arakelov/okounkov/okounkov.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace arakelov::divisor {

using convex::GridConvexFunction;
using convex::Point;
using convex::Polytope;
using okounkov::MultiIndex;

/// weight * log(a_0 + sum_i a_i e^{s_i})
struct CanonicalTerm {
    double weight = 1.0;
    std::vector<double> a;
};

/// u(s) = sum_k weight_k log(a_k0 + sum_i a_ki e^{s_i}) - sum_{i>=1} c_i s_i,
/// the weights summing to the degree. A single term is the family
/// g_a = log(a_0 + sum a_i |z_i|^2) attached to deg(D) * H_0-type classes.
struct CanonicalPotential {
    std::vector<CanonicalTerm> terms;
};

/// u sampled on a grid in s = (log|z_1|^2, ...), linear part included.
struct SampledPotential {
    GridConvexFunction u;
};

using Potential = std::variant<CanonicalPotential, SampledPotential>;

struct CanonicalFamily {
    std::vector<double> a;
};

using PotentialSpec = std::variant<CanonicalFamily, CanonicalPotential, GridConvexFunction>;

/// Torus-invariant arithmetic divisor (sum c_i H_i, u + lambda) on P^d over Z.
class ToricArithDivisor {
public:
    std::size_t d() const { return coeffs_.size() - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const Potential& potential() const { return potential_; }
    double twist() const { return twist_; }
    double degree() const;

    okounkov::HyperplaneDivisor hyperplanes() const { return {coeffs_}; }
    /// Delta_D = {x : x_i >= -c_i (i >= 1), sum x_i <= c_0}
    Polytope body() const;

    bool is_canonical() const { return std::holds_alternative<CanonicalPotential>(potential_); }
    bool is_sampled() const { return std::holds_alternative<SampledPotential>(potential_); }
    /// the single canonical term, or nullptr
    const CanonicalTerm* single_term() const;

    /// u(s) without the twist
    double potential_value(const Point& s) const;
    double green_value(const Point& s) const { return potential_value(s) + twist_; }

    bool is_effective() const;
    bool is_nef() const;
    bool is_big() const;

    ToricArithDivisor plus(const ToricArithDivisor& other) const;
    ToricArithDivisor scaled(double t) const;
    ToricArithDivisor twisted(double lambda) const;
    /// D + (z^k)^ : coefficients shift by (k_i, -|k|), potential by -<k, s>
    ToricArithDivisor plus_principal(const std::vector<double>& k) const;

    /// u sampled on the given 1-d or 2-d grid (twist excluded)
    convex::GridFunction sample_potential(const std::vector<convex::Axis>& axes) const;

    friend ToricArithDivisor make_divisor(std::size_t d, std::vector<double> coeffs, PotentialSpec potential,
                                          double twist);

private:
    std::vector<double> coeffs_;
    Potential potential_;
    double twist_ = 0.0;
};

ToricArithDivisor make_divisor(std::size_t d, std::vector<double> coeffs, PotentialSpec potential, double twist = 0.0);

/// Shorthand for (H_0, log(a_0 + sum a_i |z_i|^2) + lambda).
ToricArithDivisor canonical(std::vector<double> a, double twist = 0.0);

struct TransformOptions {
    std::size_t resolution_2d = 257;
};

struct ConcaveTransform {
    convex::ConcaveFunction G;
    std::optional<CanonicalFamily> closed_form;
    double twist = 0.0;
    std::string method; // closed-form | sup-convolution | grid

    const Polytope& domain() const { return G.domain(); }
    double operator()(const Point& x) const { return G(x); }
};

ConcaveTransform concave_transform(const ToricArithDivisor& D, const TransformOptions& opts = {});

struct Maximum {
    Point x;
    double value = 0.0;
};
Maximum max_transform(const ToricArithDivisor& D, const ConcaveTransform& G);

/// Closure of {G > 0}: an interval in 1-d; in 2-d the body with the
/// superlevel predicate as indicator. Empty base when max G <= 0.
convex::Region theta_region(const ToricArithDivisor& D, const TransformOptions& opts = {});

/// endpoints of Theta in 1-d
std::optional<std::pair<double, double>> theta_interval(const ToricArithDivisor& D);

double log_sup_norm_monomial(const ToricArithDivisor& D, int n, const MultiIndex& m);
double sup_norm_monomial(const ToricArithDivisor& D, int n, const MultiIndex& m);

struct BaseCondition {
    enum class Kind { hyperplane, fixed_point, vertical };
    Kind kind = Kind::hyperplane;
    std::size_t index = 0; // hyperplane / fixed point index, or the prime p
    double mu = 0.0;

    static BaseCondition hyperplane(std::size_t i, double mu = 0.0) { return {Kind::hyperplane, i, mu}; }
    static BaseCondition fixed_point(std::size_t j, double mu = 0.0) { return {Kind::fixed_point, j, mu}; }
    static BaseCondition vertical(std::size_t p, double mu = 0.0) { return {Kind::vertical, p, mu}; }
    void validate(std::size_t d) const;
    std::string str() const;
};

bool is_prime(std::size_t p);

/// mult_xi(E) for a divisor E = sum e_i H_i (vertical part zero)
double multiplicity(const std::vector<double>& coeffs, const BaseCondition& xi);

/// constraints in body coordinates for the horizontal conditions
std::vector<convex::Halfspace> base_constraints(const ToricArithDivisor& D, const std::vector<BaseCondition>& conds);
double vertical_shift(const std::vector<BaseCondition>& conds);

struct VolumeOptions {
    convex::QuadratureOptions quadrature{};
    TransformOptions transform{};
};

double vol_hat(const ToricArithDivisor& D, const VolumeOptions& opts = {});
double vol_hat_base(const ToricArithDivisor& D, const std::vector<BaseCondition>& conds, const VolumeOptions& opts = {});

struct FiltrationSummary {
    int n = 0;
    std::map<MultiIndex, double> t;
    double e_min = 0.0;
    double e_max = 0.0;
    double C = 0.0; // max G + 1
};

FiltrationSummary filtration_summary(const ToricArithDivisor& D, int n);

/// min over Theta of the multiplicity at xi; 0 for vertical centers
double mu_R(const ToricArithDivisor& D, const BaseCondition& xi);

struct ProfilePoint {
    double lambda = 0.0;
    double mu = 0.0;
};

struct ContinuityProfile {
    std::vector<ProfilePoint> points;
    bool nonincreasing = true;
    double lipschitz = 0.0;
    bool continuity_bound_holds = true;
};

ContinuityProfile mu_monotone_continuity_profile(const ToricArithDivisor& D, const BaseCondition& xi,
                                                 const std::vector<double>& lambda_grid);

/// description used by results files
std::string method_tag(const ToricArithDivisor& D);

} // namespace arakelov::divisor
