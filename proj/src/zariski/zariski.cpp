#include "arakelov/zariski/zariski.hpp"

#include "arakelov/convex/conjugate.hpp"
#include "arakelov/convex/optimize.hpp"
#include "arakelov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arakelov::zariski {

namespace {

constexpr double slope_tolerance = 1e-7;

std::vector<double> grid_points(const GridConvexFunction& h)
{
    const auto& ax = h.axes()[0];
    std::vector<double> s(ax.count);
    for (std::size_t j = 0; j < ax.count; ++j)
        s[j] = ax[j];
    return s;
}

convex::GridFunction barrier_on(const convex::GridFunction& like, double lo, double hi)
{
    return convex::GridFunction::sample(like.axes(), {{lo, hi}},
                                        [lo, hi](const convex::Point& s) { return std::max(lo * s[0], hi * s[0]); });
}

RotInvariantDivisor zero_like(const RotInvariantDivisor& D)
{
    RotInvariantDivisor z;
    z.h = GridConvexFunction(convex::GridFunction(D.h.axes(), std::vector<double>(D.h.size(), 0.0), {{0.0, 0.0}}));
    return z;
}

double scale_of(const convex::GridFunction& h)
{
    double m = 1.0;
    for (double v : h.values())
        m = std::max(m, std::abs(v));
    return m;
}

} // namespace

double RotInvariantDivisor::vertical_shift() const
{
    double s = 0.0;
    for (const auto& [p, g] : vertical)
        s += g * std::log(static_cast<double>(p));
    return s;
}

ToricArithDivisor RotInvariantDivisor::toric() const
{
    return divisor::make_divisor(1, {e0, e1}, h, 2.0 * vertical_shift());
}

double RotInvariantDivisor::volume() const
{
    if (slope_hi() - slope_lo() <= 0.0)
        return 0.0;
    return divisor::vol_hat(toric());
}

RotInvariantDivisor sampled(const ToricArithDivisor& D, const GridOptions& grid)
{
    if (D.d() != 1)
        fail(ErrorKind::input, "the surface module works on P^1 over Z (d = 1)");
    const auto& c = D.coeffs();
    RotInvariantDivisor r;
    r.e0 = c[0];
    r.e1 = c[1];
    r.h = GridConvexFunction(convex::GridFunction::sample({{grid.s_lo, grid.s_hi, grid.count}}, {{-c[1], c[0]}},
                                                          [&D](const convex::Point& s) { return D.green_value(s); }),
                             slope_tolerance);
    return r;
}

NefCertificate certify_nef(const RotInvariantDivisor& P, const HeightTestSet& tests, double tol)
{
    NefCertificate cert;
    const auto s = grid_points(P.h);
    const auto& v = P.h.values();
    const double lo = P.slope_lo(), hi = P.slope_hi();
    const double slope_eps = slope_tolerance * std::max({1.0, std::abs(lo), std::abs(hi)});

    cert.convex = true;
    for (std::size_t j = 1; j + 1 < v.size(); ++j)
        if (v[j + 1] - 2 * v[j] + v[j - 1] < -tol * std::max(1.0, std::abs(v[j])))
            cert.convex = false;

    cert.slopes_in_range = lo <= hi + slope_eps;
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
        const double k = (v[j + 1] - v[j]) / (s[j + 1] - s[j]);
        if (k < lo - slope_eps || k > hi + slope_eps)
            cert.slopes_in_range = false;
    }

    cert.barrier = true;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double b = std::max(lo * s[j], hi * s[j]);
        if (v[j] < b - tol * std::max(1.0, std::abs(b)))
            cert.barrier = false;
    }

    const double shift = P.vertical_shift();
    if (cert.slopes_in_range) {
        const auto conj = convex::conjugate_piecewise_linear(P.h, lo, std::max(lo, hi));
        cert.heights.push_back({"0", -0.5 * conj(lo) + shift});
        cert.heights.push_back({"infinity", -0.5 * conj(std::max(lo, hi)) + shift});
    }
    cert.heights.push_back({"1", 0.5 * P.h.interpolate({0.0}) + shift});
    for (std::size_t p : tests.primes)
        for (int k = -tests.max_exponent; k <= tests.max_exponent; ++k) {
            if (k == 0)
                continue;
            const double S = 2.0 * k * std::log(static_cast<double>(p));
            const double deg =
                0.5 * (P.h.interpolate({S}) + P.e1 * std::max(S, 0.0) - P.e0 * std::min(S, 0.0)) + shift;
            cert.heights.push_back({std::to_string(p) + "^" + std::to_string(k), deg});
        }
    cert.heights_nonnegative = std::all_of(cert.heights.begin(), cert.heights.end(),
                                           [tol](const HeightSample& h) { return h.degree >= -tol; });
    return cert;
}

Decomposition greatest_nef_minorant(const ToricArithDivisor& D, const SolverOptions& opts)
{
    if (D.d() != 1)
        fail(ErrorKind::input, "the surface module works on P^1 over Z (d = 1)");
    if (!D.is_big())
        fail(ErrorKind::bigness_required, "greatest nef minorant needs a big divisor");
    const RotInvariantDivisor Ds = sampled(D, opts.grid);
    Decomposition dec;
    dec.provenance.grid = opts.grid;

    if (D.is_nef()) {
        dec.positive = Ds;
        dec.negative = zero_like(Ds);
        dec.provenance.nef_shortcut = true;
        return dec;
    }

    const double c0 = Ds.e0, c1 = Ds.e1, tau = c0 + c1;
    const auto conj = convex::conjugate_piecewise_linear(Ds.h, -c1, c0);
    std::vector<double> gy = conj.values();
    for (double& y : gy)
        y *= -0.5;
    const convex::PiecewiseLinear G(conj.knots(), gy);
    const double worst = std::max({0.0, -G(-c1), -G(c0)});

    struct Best {
        bool found = false;
        double delta0 = 0.0, delta1 = 0.0, vol = -1.0;
    } best;
    std::size_t evals = 0;
    auto objective = [&](double delta0, double delta1) {
        ++evals;
        const double lo = -c1 + delta1, hi = c0 - delta0;
        if (lo > hi)
            return -(worst + 1.0 + (lo - hi));
        const double violation = std::max({0.0, -G(lo), -G(hi)});
        if (violation > 0.0)
            return -violation;
        const double vol = 2.0 * G.integral(lo, hi);
        if (vol > best.vol)
            best = {true, delta0, delta1, vol};
        return vol;
    };
    auto inner = [&](double delta1) {
        double v = convex::golden_section_max([&](double d0) { return objective(d0, delta1); }, 0.0, tau,
                                              opts.iterations)
                       .value;
        return std::max({v, objective(0.0, delta1), objective(tau, delta1)});
    };
    convex::golden_section_max(inner, 0.0, tau, opts.iterations);
    inner(0.0);
    inner(tau);
    if (!best.found)
        fail(ErrorKind::infeasible, "no nef candidate found in the (delta0, delta1) search");

    const double lo = -c1 + best.delta1, hi = c0 - best.delta0;
    RotInvariantDivisor P;
    P.e0 = c0 - best.delta0;
    P.e1 = c1 - best.delta1;
    P.h = convex::constrained_convex_minorant(Ds.h, lo, hi, barrier_on(Ds.h, lo, hi));

    RotInvariantDivisor N;
    N.e0 = best.delta0;
    N.e1 = best.delta1;
    N.h = GridConvexFunction(
        convex::GridFunction(Ds.h.axes(), Ds.h.minus(P.h).values(), {{-best.delta1, best.delta0}}), slope_tolerance);

    dec.positive = std::move(P);
    dec.negative = std::move(N);
    dec.provenance.delta0 = best.delta0;
    dec.provenance.delta1 = best.delta1;
    dec.provenance.evaluations = evals;
    return dec;
}

ZariskiReport verify_zariski(const ToricArithDivisor& D, const Decomposition& dec, double tol)
{
    const RotInvariantDivisor Ds = sampled(D, dec.provenance.grid);
    const auto& P = dec.positive;
    const auto& N = dec.negative;
    const double cs = std::max({1.0, std::abs(Ds.e0), std::abs(Ds.e1)});
    if (std::abs(P.e0 + N.e0 - Ds.e0) > 1e-9 * cs || std::abs(P.e1 + N.e1 - Ds.e1) > 1e-9 * cs)
        fail(ErrorKind::consistency, "decomposition coefficients do not add up to the divisor");
    if (!P.h.same_grid(Ds.h) || !N.h.same_grid(Ds.h))
        fail(ErrorKind::consistency, "decomposition potentials live on a different grid");
    const double hs = scale_of(Ds.h);
    for (std::size_t j = 0; j < Ds.h.size(); ++j)
        if (std::abs(P.h.at(j) + N.h.at(j) - Ds.h.at(j)) > 1e-9 * hs)
            fail(ErrorKind::consistency, "decomposition potentials do not add up at grid point " + std::to_string(j));
    std::map<std::size_t, double> vert = P.vertical;
    for (const auto& [p, g] : N.vertical)
        vert[p] += g;
    for (const auto& [p, g] : vert)
        if (std::abs(g) > 1e-12)
            fail(ErrorKind::consistency, "decomposition has a vertical part over p = " + std::to_string(p));

    ZariskiReport r;
    r.positive_nef = certify_nef(P).certified();
    r.negative_effective = N.e0 >= -1e-12 && N.e1 >= -1e-12;
    for (double v : N.h.values())
        r.negative_effective = r.negative_effective && v >= -1e-9 * hs;
    for (const auto& [p, g] : N.vertical)
        r.negative_effective = r.negative_effective && g >= -1e-12;
    r.vol_positive = P.volume();
    r.vol_divisor = divisor::vol_hat(D);
    r.volume_equal = std::abs(r.vol_positive - r.vol_divisor) <= tol;

    // moving eps F_p from N into P leaves N non-effective
    const double eps = 1e-3;
    r.vertical_free = true;
    for (std::size_t p : {2, 3, 5}) {
        const auto it = N.vertical.find(p);
        const double g = it == N.vertical.end() ? 0.0 : it->second;
        if (g - eps >= 0.0)
            r.vertical_free = false;
    }
    return r;
}

bool MultiplicityReport::pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const MultiplicityComparison& c) { return c.match; });
}

MultiplicityReport check_multiplicity_identity(const ToricArithDivisor& D, const Decomposition& dec, double tol,
                                               const std::vector<std::size_t>& primes)
{
    using divisor::BaseCondition;
    MultiplicityReport r;
    auto add = [&](const std::string& name, const BaseCondition& xi, double coefficient) {
        const double mu = divisor::mu_R(D, xi);
        r.rows.push_back({name, mu, coefficient, std::abs(mu - coefficient) <= tol});
    };
    add("hyperplane:1 (z = 0)", BaseCondition::hyperplane(1), dec.negative.e1);
    add("hyperplane:0 (z = infinity)", BaseCondition::hyperplane(0), dec.negative.e0);
    for (std::size_t p : primes) {
        const auto it = dec.negative.vertical.find(p);
        add("fiber:" + std::to_string(p), BaseCondition::vertical(p), it == dec.negative.vertical.end() ? 0.0 : it->second);
    }
    return r;
}

bool nef_comparison_check(const RotInvariantDivisor& P, const RotInvariantDivisor& Q, double grid_tol)
{
    if (!certify_nef(P).certified() || !certify_nef(Q).certified())
        fail(ErrorKind::precondition, "nef comparison needs two nef-certified divisors");
    if (!P.h.same_grid(Q.h))
        fail(ErrorKind::input, "nef comparison needs potentials on a shared grid");
    const double hs = std::max(scale_of(P.h), scale_of(Q.h));
    bool below = Q.e0 >= P.e0 - 1e-12 && Q.e1 >= P.e1 - 1e-12;
    for (std::size_t j = 0; j < P.h.size(); ++j)
        below = below && Q.h.at(j) >= P.h.at(j) - 1e-9 * hs;
    std::map<std::size_t, double> gap = Q.vertical;
    for (const auto& [p, g] : P.vertical)
        gap[p] -= g;
    for (const auto& [p, g] : gap)
        below = below && g >= -1e-12;
    if (!below)
        fail(ErrorKind::precondition, "nef comparison needs P <= Q");

    const double vp = P.volume(), vq = Q.volume();
    if (std::abs(vp - vq) <= 1e-9 && vp > 0.0) {
        bool same = std::abs(P.e0 - Q.e0) <= grid_tol && std::abs(P.e1 - Q.e1) <= grid_tol;
        for (std::size_t j = 0; j < P.h.size(); ++j)
            same = same && std::abs(P.h.at(j) - Q.h.at(j)) <= grid_tol;
        for (const auto& [p, g] : gap)
            same = same && std::abs(g) <= grid_tol;
        if (!same)
            fail(ErrorKind::consistency, "nef divisors P <= Q of equal volume differ");
        return true;
    }
    if (!(vp < vq))
        fail(ErrorKind::consistency, "P <= Q but vol(P) > vol(Q)");
    return false;
}

double deg_self_intersection(const RotInvariantDivisor& P, const NefCertificate& cert)
{
    if (!cert.certified())
        fail(ErrorKind::precondition, "self-intersection through the volume needs a nef certificate");
    return P.volume();
}

RotInvariantDivisor nef_minorant(const RotInvariantDivisor& D, double lo, double hi, double theta, double drop)
{
    if (!(lo <= hi) || theta < 0 || theta > 1 || drop < 0)
        fail(ErrorKind::input, "nef minorant parameters out of range");
    const auto barrier = barrier_on(D.h, lo, hi);
    const auto hmin = convex::constrained_convex_minorant(D.h, lo, hi, barrier);
    std::vector<double> v(hmin.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double blend = (1 - theta) * hmin.at(j) + theta * barrier.at(j);
        v[j] = std::max(barrier.at(j), blend - drop);
    }
    RotInvariantDivisor M;
    M.e0 = hi;
    M.e1 = -lo;
    M.h = GridConvexFunction(convex::GridFunction(D.h.axes(), std::move(v), {{lo, hi}}), slope_tolerance);
    return M;
}

std::vector<RotInvariantDivisor> random_nef_minorants(const ToricArithDivisor& D, std::size_t count,
                                                      std::mt19937_64& rng, const GridOptions& grid)
{
    const RotInvariantDivisor Ds = sampled(D, grid);
    const auto conj = convex::conjugate_piecewise_linear(Ds.h, Ds.slope_lo(), Ds.slope_hi());
    std::vector<double> gy = conj.values();
    for (double& y : gy)
        y *= -0.5;
    const auto theta = convex::PiecewiseLinear(conj.knots(), gy).superlevel(0.0);
    if (!theta || theta->second <= theta->first)
        fail(ErrorKind::bigness_required, "random nef minorants need a big divisor");
    const double pad = 1e-9 * (theta->second - theta->first);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<RotInvariantDivisor> out;
    for (std::size_t k = 0; k < count; ++k) {
        const double a = theta->first + pad, b = theta->second - pad;
        double lo = a + (b - a) * unit(rng), hi = a + (b - a) * unit(rng);
        if (lo > hi)
            std::swap(lo, hi);
        const double th = unit(rng);
        const double drop = unit(rng) < 0.5 ? 0.0 : unit(rng);
        out.push_back(nef_minorant(Ds, lo, hi, th, drop));
    }
    return out;
}

VerticalDropProbe vertical_drop_probe(const ToricArithDivisor& D, std::size_t p, double mu)
{
    if (D.d() != 1)
        fail(ErrorKind::input, "the vertical drop probe is one-dimensional");
    using divisor::BaseCondition;
    VerticalDropProbe r;
    r.vol = divisor::vol_hat(D);
    r.vol_base = divisor::vol_hat_base(D, {BaseCondition::vertical(p, mu)});
    r.drop = r.vol - r.vol_base;
    const double c = mu * std::log(static_cast<double>(p));
    const auto G = divisor::concave_transform(D);
    const auto body = D.body();
    auto g = [&G](double t) { return G(convex::Point{t}); };
    const auto upper = convex::superlevel_interval(g, body.lower(0), body.upper(0), c);
    const auto theta = convex::superlevel_interval(g, body.lower(0), body.upper(0), 0.0);
    r.lower_bound = upper ? 2 * c * (upper->second - upper->first) : 0.0;
    r.theta_bound = theta ? 2 * c * (theta->second - theta->first) : 0.0;
    r.strict = r.drop > 1e-5;
    r.holds = r.strict && r.drop >= r.lower_bound - 1e-6 && r.drop <= r.theta_bound + 1e-6;
    return r;
}

SimplexProbe simplex_minorant_probe(const ToricArithDivisor& D, int steps)
{
    if (D.d() != 2)
        fail(ErrorKind::input, "the simplex minorant probe is two-dimensional");
    if (steps < 1)
        fail(ErrorKind::input, "probe needs at least one step");
    const auto G = divisor::concave_transform(D);
    const auto& c = D.coeffs();
    const double tau = D.degree();
    SimplexProbe r;
    r.volume = divisor::vol_hat(D);
    const convex::QuadratureOptions quad{1e-9};
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; i + j <= steps; ++j)
            for (int k = 0; i + j + k < steps; ++k) {
                const double d0 = tau * i / steps, d1 = tau * j / steps, d2 = tau * k / steps;
                const auto S = convex::Polytope::simplex({-c[1] + d1, -c[2] + d2}, c[0] - d0);
                if (!S.is_full_dimensional())
                    continue;
                bool nef = true;
                for (const auto& v : S.vertices())
                    nef = nef && G(v) >= 0.0;
                if (!nef)
                    continue;
                ++r.feasible;
                const double vol = 6.0 * convex::integrate_positive_part(G.G, convex::Region::of(S), quad);
                if (vol > r.best_volume) {
                    r.best_volume = vol;
                    r.best_delta = {d0, d1, d2};
                }
            }
    r.gap = r.volume - r.best_volume;
    return r;
}

} // namespace arakelov::zariski
