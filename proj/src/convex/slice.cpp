#include "arakelov/convex/slice.hpp"

#include "arakelov/convex/lp.hpp"

#include <cmath>

namespace arakelov::convex {

namespace {

constexpr double interior_radius = 1e-9;

} // namespace

std::optional<Ball> chebyshev_ball(const Polytope& P, const std::vector<Halfspace>& extra)
{
    if (P.is_empty())
        return std::nullopt;
    const std::size_t dim = P.dimension();
    std::vector<Halfspace> hs = P.halfspaces();
    hs.insert(hs.end(), extra.begin(), extra.end());

    // variables (x, r): maximize r with n.x + |n| r <= b and r <= 1
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (const auto& h : hs) {
        std::vector<double> row = h.normal;
        double norm = 0.0;
        for (double v : h.normal)
            norm += v * v;
        row.push_back(std::sqrt(norm));
        A.push_back(std::move(row));
        b.push_back(h.offset);
    }
    std::vector<double> cap(dim + 1, 0.0);
    cap[dim] = 1.0;
    A.push_back(cap);
    b.push_back(1.0);

    const LpResult res = maximize(cap, A, b);
    if (res.status != LpStatus::optimal || res.value <= interior_radius)
        return std::nullopt;
    return Ball{Point(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(dim)), res.value};
}

std::optional<Ball> slice_interior_witness(const Polytope& C, double a)
{
    if (C.is_empty())
        return std::nullopt;
    Point n(C.dimension(), 0.0);
    n[0] = 1.0;
    return chebyshev_ball(C, {Halfspace{n, a}});
}

bool sliced_interior_nonempty(const Polytope& C, double a)
{
    return slice_interior_witness(C, a).has_value();
}

} // namespace arakelov::convex
