#pragma once

#include "arakelov/convex/grid_function.hpp"
#include "arakelov/divisor/divisor.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace arakelov::zariski {

using convex::GridConvexFunction;
using divisor::ToricArithDivisor;

/// e0 H_0 + e1 H_1 + sum gamma_p F_p on P^1 over Z with a convex potential h
/// in s = log|z|^2 (recession slopes -e1 and e0). The fiber F_p acts on
/// the transform as a shift by gamma_p log p.
struct RotInvariantDivisor {
    double e0 = 0.0;
    double e1 = 0.0;
    GridConvexFunction h;
    std::map<std::size_t, double> vertical;

    double slope_lo() const { return -e1; }
    double slope_hi() const { return e0; }
    double vertical_shift() const;
    /// the same divisor as a sampled toric divisor, fibers folded into the twist
    ToricArithDivisor toric() const;
    double volume() const;
};

struct GridOptions {
    double s_lo = -40.0;
    double s_hi = 40.0;
    std::size_t count = 2001;
};

/// g = u + lambda sampled on the grid
RotInvariantDivisor sampled(const ToricArithDivisor& D, const GridOptions& grid = {});

struct Provenance {
    double delta0 = 0.0;
    double delta1 = 0.0;
    std::size_t evaluations = 0;
    bool nef_shortcut = false;
    GridOptions grid;
};

struct Decomposition {
    RotInvariantDivisor positive;
    RotInvariantDivisor negative;
    Provenance provenance;
};

struct HeightSample {
    std::string point;
    double degree = 0.0;
};

/// Necessary conditions for nefness, sampled: the full condition ranges over
/// every closed curve of the surface.
struct NefCertificate {
    bool convex = false;
    bool slopes_in_range = false;
    bool barrier = false;
    std::vector<HeightSample> heights;
    bool heights_nonnegative = false;
    std::string label = "sampled-necessary";
    bool certified() const { return convex && slopes_in_range && barrier && heights_nonnegative; }
};

struct HeightTestSet {
    std::vector<std::size_t> primes{2, 3, 5};
    int max_exponent = 3;
};

NefCertificate certify_nef(const RotInvariantDivisor& P, const HeightTestSet& tests = {}, double tol = 1e-9);

struct SolverOptions {
    GridOptions grid;
    int iterations = 80;
};

Decomposition greatest_nef_minorant(const ToricArithDivisor& D, const SolverOptions& opts = {});

struct ZariskiReport {
    bool positive_nef = false;
    bool negative_effective = false;
    bool volume_equal = false;
    bool vertical_free = false; // moving a fiber from N to P breaks effectivity of N
    double vol_positive = 0.0;
    double vol_divisor = 0.0;
    bool pass() const { return positive_nef && negative_effective && volume_equal; }
};

ZariskiReport verify_zariski(const ToricArithDivisor& D, const Decomposition& dec, double tol = 1e-3);

struct MultiplicityComparison {
    std::string center;
    double mu = 0.0;
    double coefficient = 0.0;
    bool match = false;
};

struct MultiplicityReport {
    std::vector<MultiplicityComparison> rows;
    bool pass() const;
};

MultiplicityReport check_multiplicity_identity(const ToricArithDivisor& D, const Decomposition& dec,
                                               double tol = 1e-3, const std::vector<std::size_t>& primes = {2, 3});

/// P <= Q both nef: equal positive volume forces P = Q (true); otherwise
/// vol P < vol Q is confirmed (false).
bool nef_comparison_check(const RotInvariantDivisor& P, const RotInvariantDivisor& Q, double grid_tol = 1e-6);

/// vol(P) for a nef-certified P, which equals the arithmetic self-intersection
double deg_self_intersection(const RotInvariantDivisor& P, const NefCertificate& cert);

/// Nef minorant of the sampled D with positive part slopes [lo, hi] inside
/// Theta: the greatest constrained minorant blended with the barrier
/// (theta) and lowered by `drop` where the barrier allows.
RotInvariantDivisor nef_minorant(const RotInvariantDivisor& D, double lo, double hi, double theta, double drop);

/// random nef minorants of the sampled D (D big)
std::vector<RotInvariantDivisor> random_nef_minorants(const ToricArithDivisor& D, std::size_t count,
                                                      std::mt19937_64& rng, const GridOptions& grid = {});

struct VerticalDropProbe {
    double vol = 0.0;
    double vol_base = 0.0;
    double drop = 0.0;
    double lower_bound = 0.0; // 2 c |{G >= c}|, c = mu log p
    double theta_bound = 0.0; // 2 c |Theta|, an upper bound for the drop
    bool strict = false;
    bool holds = false;
};

VerticalDropProbe vertical_drop_probe(const ToricArithDivisor& D, std::size_t p, double mu);

struct SimplexProbe {
    std::vector<double> best_delta;
    double best_volume = 0.0;
    double volume = 0.0;
    double gap = 0.0;
    std::size_t feasible = 0;
};

/// d = 2: best volume of the nef toric minorants with body {w_i >= delta_i}
/// and transform G restricted there, over a grid of delta vectors.
SimplexProbe simplex_minorant_probe(const ToricArithDivisor& D, int steps = 24);

} // namespace arakelov::zariski
