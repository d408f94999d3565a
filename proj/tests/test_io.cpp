#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arakelov/error.hpp"
#include "arakelov/io/record.hpp"

#include <cmath>

using namespace arakelov;
using namespace arakelov::divisor;
using io::json;

namespace {

bool same(const ToricArithDivisor& a, const ToricArithDivisor& b)
{
    if (a.d() != b.d() || a.coeffs() != b.coeffs() || a.twist() != b.twist())
        return false;
    if (a.is_sampled() != b.is_sampled())
        return false;
    if (a.is_sampled()) {
        const auto& u = std::get<SampledPotential>(a.potential()).u;
        const auto& v = std::get<SampledPotential>(b.potential()).u;
        return u.same_grid(v) && u.values() == v.values() && u.slopes() == v.slopes();
    }
    const auto& s = std::get<CanonicalPotential>(a.potential()).terms;
    const auto& t = std::get<CanonicalPotential>(b.potential()).terms;
    if (s.size() != t.size())
        return false;
    for (std::size_t k = 0; k < s.size(); ++k)
        if (s[k].weight != t[k].weight || s[k].a != t[k].a)
            return false;
    return true;
}

ToricArithDivisor reparse(const ToricArithDivisor& D)
{
    return io::parse_divisor(json::parse(io::divisor_record(D).dump()));
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::input;
}

} // namespace

TEST_CASE("divisor records round-trip")
{
    const auto A = make_divisor(1, {0.3, 0.7}, CanonicalFamily{{0.1 + 0.2, 1.0 / 3}}, -0.123456789012345678);
    CHECK(same(A, reparse(A)));
    const auto S = A.plus(canonical({2, 2}));
    CHECK(same(S, reparse(S)));
    const auto U = make_divisor(1, {1, 0}, convex::GridConvexFunction(canonical({0.25, 2}).sample_potential({{-20, 20, 401}})), 0.5);
    CHECK(same(U, reparse(U)));
    const auto T2 = make_divisor(2, {1, 0, 0}, CanonicalFamily{{1, 2, 4}});
    const auto V = make_divisor(2, {1, 0, 0}, convex::GridConvexFunction(T2.sample_potential({{-10, 10, 41}, {-10, 10, 41}})));
    CHECK(same(V, reparse(V)));
}

TEST_CASE("surface records round-trip")
{
    auto P = zariski::sampled(canonical({0.6, 0.9}, 0.1), {-30, 30, 601});
    P.vertical[3] = 0.25;
    const auto Q = io::parse_surface(json::parse(io::surface_record(P).dump()));
    CHECK(Q.e0 == P.e0);
    CHECK(Q.e1 == P.e1);
    CHECK(Q.h.values() == P.h.values());
    CHECK(Q.vertical == P.vertical);
}

TEST_CASE("record validation")
{
    CHECK(kind_of([] { io::parse_divisor(json::parse(R"({"d": 3, "potential": {"kind": "canonical", "a": [1,1,1,1]}})")); })
          == ErrorKind::input);
    CHECK(kind_of([] { io::parse_divisor(json::parse(R"({"d": 1})")); }) == ErrorKind::input);
    CHECK(kind_of([] { io::parse_divisor(json::parse(R"({"d": 1, "potential": {"kind": "spline"}})")); })
          == ErrorKind::input);
    CHECK(kind_of([] { io::parse_divisor(json::parse(R"({"d": 1, "potential": {"kind": "canonical", "a": "x"}})")); })
          == ErrorKind::input);
    // |s| has slopes -1 and 1, not the (0, 1) required by H_0
    CHECK(kind_of([] {
              io::parse_divisor(json::parse(
                  R"({"d": 1, "coeffs": [1, 0], "potential": {"kind": "sampled", "s_min": -1, "s_max": 1, "values": [1, 0, 1]}})"));
          })
          == ErrorKind::recession);
    CHECK(kind_of([] {
              io::parse_divisor(json::parse(
                  R"({"d": 1, "coeffs": [1, 0], "potential": {"kind": "sampled", "s_min": -1, "s_max": 1, "values": [0, 1, 0]}})"));
          })
          == ErrorKind::convexity);
}

TEST_CASE("condition strings")
{
    const auto a = io::parse_condition("hyperplane:1:0.5");
    CHECK(a.kind == BaseCondition::Kind::hyperplane);
    CHECK(a.index == 1);
    CHECK(a.mu == 0.5);
    const auto b = io::parse_condition("center:fiber:3:0.25");
    CHECK(b.kind == BaseCondition::Kind::vertical);
    CHECK(b.index == 3);
    CHECK(io::parse_condition("point:0:0").kind == BaseCondition::Kind::fixed_point);
    const auto c = io::parse_condition(io::condition_text(BaseCondition::hyperplane(2, 1.0 / 3)));
    CHECK(c.mu == 1.0 / 3);
    for (const char* bad : {"hyperplane:1", "line:1:0", "hyperplane:x:0", "hyperplane:1:0.5x", "hyperplane:-1:0"})
        CHECK(kind_of([&] { io::parse_condition(bad); }) == ErrorKind::input);
}

TEST_CASE("twelve significant digits")
{
    CHECK(io::round12(std::log(2.0) + 0.5) == 1.19314718056);
    CHECK(io::round12(0.0) == 0.0);
    CHECK(io::round12(-1.0 / 3) == -0.333333333333);
    const json j = io::rounded(json{{"x", 1.0 / 7}, {"v", {2.0 / 3, 1}}, {"s", "keep"}});
    CHECK(j["x"].get<double>() == 0.142857142857);
    CHECK(j["v"][0].get<double>() == 0.666666666667);
    CHECK(j["v"][1].get<int>() == 1);
    CHECK(j["s"] == "keep");
}
