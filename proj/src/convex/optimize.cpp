#include "arakelov/convex/optimize.hpp"

#include "arakelov/error.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>

namespace arakelov::convex {

Extremum maximize_unimodal(const std::function<double(double)>& f, double a, double b)
{
    if (!(b > a)) {
        return {a, f(a)};
    }
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, a, b, 52, iters);
    Extremum best{r.first, -r.second};
    for (double e : {a, b}) {
        const double v = f(e);
        if (v > best.value)
            best = {e, v};
    }
    return best;
}

Extremum golden_section_max(const std::function<double(double)>& f, double a, double b, int iterations)
{
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    Extremum best = f1 >= f2 ? Extremum{x1, f1} : Extremum{x2, f2};
    for (int i = 0; i < iterations && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
            if (f1 > best.value)
                best = {x1, f1};
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
            if (f2 > best.value)
                best = {x2, f2};
        }
    }
    return best;
}

double bracketed_root(const std::function<double(double)>& f, double a, double b)
{
    const double fa = f(a), fb = f(b);
    if (fa == 0)
        return a;
    if (fb == 0)
        return b;
    if ((fa > 0) == (fb > 0))
        fail(ErrorKind::precondition, "root is not bracketed");
    std::uintmax_t iters = 300;
    const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
}

} // namespace arakelov::convex
