#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arakelov/convex/concave.hpp"
#include "arakelov/convex/conjugate.hpp"
#include "arakelov/convex/lp.hpp"
#include "arakelov/convex/optimize.hpp"
#include "arakelov/convex/polytope.hpp"
#include "arakelov/convex/slice.hpp"
#include "arakelov/error.hpp"

#include <cmath>
#include <random>

using namespace arakelov;
using namespace arakelov::convex;

namespace {

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

GridConvexFunction sample_1d(double lo, double hi, std::size_t n, SlopeRange r, double (*f)(double))
{
    return GridConvexFunction(GridFunction::sample({{lo, hi, n}}, {r}, [f](const Point& p) { return f(p[0]); }));
}

} // namespace

TEST_CASE("hull of two points on the line is the segment")
{
    const Polytope p = convex_hull({{0.0}, {1.0}});
    CHECK(p.affine_dimension() == 1);
    CHECK(p.lower(0) == 0.0);
    CHECK(p.upper(0) == 1.0);
    CHECK(p.volume() == 1.0);
}

TEST_CASE("interior point is absorbed by the triangle")
{
    const Polytope p = convex_hull({{0, 0}, {1, 0}, {0, 1}, {0.25, 0.25}});
    CHECK(p.vertices().size() == 3);
    CHECK(p.volume() == doctest::Approx(0.5));
    for (const auto& v : p.vertices())
        for (const auto& h : p.halfspaces())
            CHECK(h.satisfied(v));
}

TEST_CASE("hull is idempotent and reproduces its halfspaces")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> pts;
        for (int k = 0; k < 12; ++k)
            pts.push_back({U(rng), U(rng)});
        const Polytope p = convex_hull(pts);
        const Polytope q = convex_hull(p.vertices());
        CHECK(p.same_as(q));
        REQUIRE(p.halfspaces().size() == q.halfspaces().size());
        for (std::size_t k = 0; k < p.halfspaces().size(); ++k)
            CHECK(std::abs(p.halfspaces()[k].offset - q.halfspaces()[k].offset) < 1e-12);
        const Polytope r = Polytope::from_halfspaces(2, p.halfspaces());
        CHECK(r.same_as(p, 1e-9));
    }
}

TEST_CASE("degenerate hulls keep their affine span")
{
    const Polytope seg = convex_hull({{0, 0}, {1, 1}, {2, 2}});
    CHECK(seg.affine_dimension() == 1);
    CHECK(seg.volume() == 0.0);
    CHECK(seg.contains({0.5, 0.5}));
    CHECK_FALSE(seg.contains({0.5, 0.6}));
    const Polytope pt = convex_hull({{1, 0}, {1, 0}});
    CHECK(pt.affine_dimension() == 0);
}

TEST_CASE("hull input errors")
{
    CHECK_THROWS_AS(convex_hull({}), Error);
    CHECK_THROWS_AS(convex_hull({{0.0}, {1.0, 2.0}}), Error);
}

TEST_CASE("unbounded halfspace system is rejected")
{
    CHECK_THROWS_AS(Polytope::from_halfspaces(2, {make_halfspace({1, 0}, 1)}), Error);
}

TEST_CASE("LP solves a small program")
{
    // max x + y, x <= 1, y <= 2, x + y <= 2.5, -x <= 0
    const auto r = maximize({1, 1}, {{1, 0}, {0, 1}, {1, 1}, {-1, 0}}, {1, 2, 2.5, 0});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == doctest::Approx(2.5));
    const auto inf = maximize({1}, {{1}, {-1}}, {-1, -1}); // x <= -1, x >= 1
    CHECK(inf.status == LpStatus::infeasible);
    const auto unb = maximize({1}, {{-1}}, {0});
    CHECK(unb.status == LpStatus::unbounded);
}

TEST_CASE("conjugate of a linear function")
{
    const double lam = 0.3;
    const auto u = GridConvexFunction(GridFunction::sample({{-10, 10, 101}}, {{lam, lam}},
                                                           [&](const Point& s) { return lam * s[0]; }));
    const auto c = legendre_conjugate(u, convex_hull({{lam}}));
    CHECK(c.size() == 1);
    CHECK(std::abs(c.at(0)) < 1e-12);
    CHECK_THROWS_AS(legendre_conjugate(u, convex_hull({{lam + 0.1}})), Error);
}

TEST_CASE("conjugate of log(1+e^s) at one half")
{
    const auto u = sample_1d(-40, 40, 8001, {0, 1}, [](double s) { return std::log1p(std::exp(s)); });
    const auto pl = conjugate_piecewise_linear(u, 0, 1);
    CHECK(pl(0.5) == doctest::Approx(-std::log(2.0)).epsilon(1e-5));
    // entropy form x log x + (1-x) log(1-x)
    for (double x : {0.1, 0.3, 0.7, 0.9})
        CHECK(std::abs(pl(x) - (xlogx(x) + xlogx(1 - x))) < 2e-5);
}

TEST_CASE("double conjugate returns the potential for strongly convex u")
{
    // u(s) = s^2/2 + log(1 + e^s) has slopes unbounded; restrict to a box with matching recession
    const double L = 6;
    auto f = [](double s) { return 0.5 * s * s + std::log1p(std::exp(s)); };
    const std::size_t n = 20001;
    const auto u = GridConvexFunction(GridFunction::sample({{-L, L, n}}, {{-L, L + 1}},
                                                           [&](const Point& s) { return f(s[0]); }));
    const auto ustar = legendre_conjugate(u, convex_hull({{-L + 0.0025}, {L + 0.9975}}), n);
    const auto back = legendre_conjugate(ustar, convex_hull({{-L + 1}, {L - 1}}), 2001);
    double worst = 0;
    for (std::size_t k = 0; k < back.size(); ++k)
        worst = std::max(worst, std::abs(back.at(k) - f(back.point(k)[0])));
    CHECK(worst < 1e-6);
}

TEST_CASE("conjugation reverses order")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = U(rng) + 0.1, b = U(rng) + 0.1, c = U(rng);
        auto uf = [&](const Point& s) { return std::log(a + b * std::exp(s[0])); };
        auto vf = [&](const Point& s) { return std::log(a + b * std::exp(s[0])) + c; };
        const auto u = GridConvexFunction(GridFunction::sample({{-30, 30, 601}}, {{0, 1}}, uf));
        const auto v = GridConvexFunction(GridFunction::sample({{-30, 30, 601}}, {{0, 1}}, vf));
        const auto us = legendre_conjugate(u, convex_hull({{0.0}, {1.0}}), 101);
        const auto vs = legendre_conjugate(v, convex_hull({{0.0}, {1.0}}), 101);
        for (std::size_t k = 0; k < us.size(); ++k)
            CHECK(us.at(k) >= vs.at(k));
    }
}

TEST_CASE("two-dimensional conjugate matches the closed form")
{
    auto f = [](const Point& s) { return std::log(1 + 2 * std::exp(s[0]) + 4 * std::exp(s[1])); };
    const auto u = GridConvexFunction(GridFunction::sample({{-30, 30, 601}, {-30, 30, 601}}, {{0, 1}, {0, 1}}, f));
    const auto us = legendre_conjugate(u, Polytope::simplex({0, 0}, 1), 11);
    // u*(x) = sum w log(w / a) with w0 = 1 - x1 - x2
    const double x1 = 0.2, x2 = 0.3;
    const double exact = xlogx(0.5) + xlogx(x1) - x1 * std::log(2) + xlogx(x2) - x2 * std::log(4);
    CHECK(us.interpolate({x1, x2}) == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("minorant of a slope-feasible convex function is itself")
{
    const auto u = sample_1d(-40, 40, 2001, {0, 1}, [](double s) { return std::log(2 + 2 * std::exp(s)); });
    const auto barrier = GridFunction::sample(u.axes(), {{0, 1}}, [](const Point& s) { return std::max(0.0, s[0]); });
    const auto h = constrained_convex_minorant(u, 0, 1, barrier);
    for (std::size_t k = 0; k < u.size(); ++k)
        CHECK(std::abs(h.at(k) - u.at(k)) < 1e-12);
}

TEST_CASE("minorant of |s| with slopes in [0, 1]")
{
    const auto u = sample_1d(-5, 5, 101, {-1, 1}, [](double s) { return std::abs(s); });
    const auto h = constrained_convex_minorant(u, 0, 1);
    for (std::size_t k = 0; k < u.size(); ++k)
        CHECK(std::abs(h.at(k) - std::max(0.0, h.point(k)[0])) < 1e-12);
}

TEST_CASE("infeasible barrier names a grid point")
{
    const auto u = sample_1d(-5, 5, 101, {-1, 1}, [](double s) { return std::abs(s); });
    const auto barrier = GridFunction::sample(u.axes(), {{-1, 1}}, [](const Point& s) { return std::abs(s[0]) + 0.5; });
    try {
        constrained_convex_minorant(u, -1, 1, barrier);
        FAIL("expected infeasibility");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::infeasible);
        CHECK(std::string(e.what()).find("grid point") != std::string::npos);
    }
}

TEST_CASE("non-convex samples are rejected")
{
    CHECK_THROWS_AS(sample_1d(-1, 1, 11, {-10, 10}, [](double s) { return -s * s; }), Error);
}

TEST_CASE("positive-part quadrature on entropy functions")
{
    const Polytope unit = convex_hull({{0.0}, {1.0}});
    const auto zero = ConcaveFunction::analytic(unit, [](const Point&) { return 0.0; });
    CHECK(integrate_positive_part(zero, Region::of(unit)) == 0.0);
    const auto ent = ConcaveFunction::analytic(unit, [](const Point& x) { return -0.5 * (xlogx(x[0]) + xlogx(1 - x[0])); });
    CHECK(std::abs(integrate_positive_part(ent, Region::of(unit)) - 0.25) < 1e-8);
    const auto ent2 = ConcaveFunction::analytic(unit, [](const Point& x) {
        return 0.5 * (std::log(2.0) - xlogx(x[0]) - xlogx(1 - x[0]));
    });
    CHECK(std::abs(integrate_positive_part(ent2, Region::of(unit)) - 0.5 * (std::log(2.0) + 0.5)) < 1e-8);
}

TEST_CASE("quadrature refinement and monotonicity")
{
    const Polytope simplex = Polytope::simplex({0, 0}, 1);
    const auto G = ConcaveFunction::analytic(simplex, [](const Point& x) {
        const double w0 = std::max(0.0, 1 - x[0] - x[1]);
        return 0.5 * (-xlogx(w0) - xlogx(x[0]) - xlogx(x[1]) + x[0] * std::log(2) + x[1] * std::log(4));
    });
    const double coarse = integrate_positive_part(G, Region::of(simplex), {1e-8});
    const double fine = integrate_positive_part(G, Region::of(simplex), {1e-11});
    CHECK(std::abs(coarse - fine) < 1e-6);
    const Region smaller{simplex, {make_halfspace({1, 0}, 0.5)}, {}};
    CHECK(integrate_positive_part(G, smaller) <= fine);
    // exact: vol/6 for a = (1, 2, 4), cross-checked with an independent dblquad
    CHECK(std::abs(6 * fine - 2.2897207708399177) < 1e-7);
}

TEST_CASE("grid-backed two-dimensional integration approaches the analytic value")
{
    const Polytope simplex = Polytope::simplex({0, 0}, 1);
    auto g = [](const Point& x) {
        const double w0 = std::max(0.0, 1 - x[0] - x[1]);
        return 0.5 * (-xlogx(w0) - xlogx(std::max(0.0, x[0])) - xlogx(std::max(0.0, x[1])) + x[0] * std::log(2)
                      + x[1] * std::log(4));
    };
    const auto grid = GridFunction::sample({{0, 1, 257}, {0, 1, 257}}, {{0, 1}, {0, 1}},
                                           [&](const Point& x) { return x[0] + x[1] <= 1 ? g(x) : g({x[0], 1 - x[0]}); });
    const auto G = ConcaveFunction::grid(simplex, grid);
    CHECK(std::abs(6 * integrate_positive_part(G, Region::of(simplex)) - 2.2897207708399177) < 2e-3);
}

TEST_CASE("region membership agrees with its constraints")
{
    const Region r{Polytope::box({0, 0}, {1, 1}), {make_halfspace({1, 1}, 1)}, {}};
    const Polytope p = r.polytope();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-0.2, 1.2);
    for (int k = 0; k < 200; ++k) {
        const Point x{U(rng), U(rng)};
        CHECK(r.contains(x) == p.contains(x));
    }
}

TEST_CASE("sliced interior of the unit square")
{
    const Polytope sq = Polytope::box({0, 0}, {1, 1});
    CHECK(sliced_interior_nonempty(sq, 0.5));
    CHECK_FALSE(sliced_interior_nonempty(sq, 0.0));
    CHECK_FALSE(sliced_interior_nonempty(convex_hull({{0, 0}, {1, 1}}), 2.0));
}

TEST_CASE("random full-dimensional polytopes have nonempty slices")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Point> pts;
        for (int k = 0; k < 8; ++k)
            pts.push_back({U(rng), U(rng)});
        const Polytope C = convex_hull(pts);
        REQUIRE(C.is_full_dimensional());
        std::uniform_real_distribution<double> A(C.lower(0) + 1e-3, C.upper(0) + 1);
        const double a = A(rng);
        const auto ball = slice_interior_witness(C, a);
        REQUIRE(ball.has_value());
        CHECK(ball->center[0] < a);
        CHECK(C.contains(ball->center));
    }
}

TEST_CASE("golden section tolerates a jump at the peak")
{
    auto f = [](double x) { return x < 0.3 ? x - 1 : 1 - x; };
    CHECK(golden_section_max(f, 0, 1).x == doctest::Approx(0.3).epsilon(1e-9));
}
