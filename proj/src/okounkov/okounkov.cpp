#include "arakelov/okounkov/okounkov.hpp"

#include "arakelov/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace arakelov::okounkov {

namespace {

constexpr double tol = 1e-9;

void enumerate(const std::vector<int>& lo, int budget, std::size_t i, int used, std::vector<int>& cur,
               std::vector<MultiIndex>& out)
{
    if (i == lo.size()) {
        out.push_back({cur});
        return;
    }
    int rest = 0;
    for (std::size_t j = i + 1; j < lo.size(); ++j)
        rest += lo[j];
    for (int k = lo[i]; used + k + rest <= budget; ++k) {
        cur[i] = k;
        enumerate(lo, budget, i + 1, used + k, cur, out);
    }
}

std::string level_pair(int a, int b)
{
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

} // namespace

int MultiIndex::degree() const
{
    return std::accumulate(e.begin(), e.end(), 0);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const
{
    if (other.e.size() != e.size())
        fail(ErrorKind::input, "adding multi-indices of different length");
    MultiIndex r = *this;
    for (std::size_t i = 0; i < e.size(); ++i)
        r.e[i] += other.e[i];
    return r;
}

std::string MultiIndex::str() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i)
        s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

ValuationFlag ValuationFlag::origin(std::size_t d)
{
    ValuationFlag f;
    f.d = d;
    f.chart = 0;
    f.order.resize(d);
    std::iota(f.order.begin(), f.order.end(), std::size_t{0});
    return f;
}

ValuationFlag ValuationFlag::at(std::size_t d, std::size_t chart, std::vector<std::size_t> order)
{
    ValuationFlag f{d, chart, std::move(order)};
    f.validate();
    return f;
}

void ValuationFlag::validate() const
{
    if (chart > d)
        fail(ErrorKind::unsupported_center, "flag center must be a torus-fixed point P_0..P_" + std::to_string(d));
    if (order.size() != d)
        fail(ErrorKind::input, "flag parameter order must list " + std::to_string(d) + " parameters");
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < d; ++k)
        if (sorted[k] != k)
            fail(ErrorKind::input, "flag parameter order is not a permutation");
}

std::vector<std::size_t> ValuationFlag::parameter_hyperplanes() const
{
    validate();
    std::vector<std::size_t> natural;
    for (std::size_t i = 0; i <= d; ++i)
        if (i != chart)
            natural.push_back(i);
    std::vector<std::size_t> out(d);
    for (std::size_t k = 0; k < d; ++k)
        out[k] = natural[order[k]];
    return out;
}

double HyperplaneDivisor::degree() const
{
    return std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
}

HyperplaneDivisor HyperplaneDivisor::scaled(double t) const
{
    HyperplaneDivisor r = *this;
    for (double& c : r.coeffs)
        c *= t;
    return r;
}

HyperplaneDivisor HyperplaneDivisor::plus(const HyperplaneDivisor& other) const
{
    if (other.coeffs.size() != coeffs.size())
        fail(ErrorKind::input, "adding divisors on different projective spaces");
    HyperplaneDivisor r = *this;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        r.coeffs[i] += other.coeffs[i];
    return r;
}

HyperplaneDivisor HyperplaneDivisor::plus_principal(const MultiIndex& k) const
{
    if (k.size() + 1 != coeffs.size())
        fail(ErrorKind::input, "monomial has the wrong number of variables");
    HyperplaneDivisor r = *this;
    for (std::size_t i = 0; i < k.size(); ++i)
        r.coeffs[i + 1] += k.e[i];
    r.coeffs[0] -= k.degree();
    return r;
}

bool HyperplaneDivisor::admits(const MultiIndex& k, double t) const
{
    const HyperplaneDivisor r = plus_principal(k);
    for (double c : r.coeffs)
        if (c < -t)
            return false;
    return true;
}

MultiIndex ord_lex(const Polynomial& poly, const ValuationFlag& flag)
{
    flag.validate();
    bool found = false;
    MultiIndex best;
    for (const auto& [m, c] : poly) {
        if (c == 0.0)
            continue;
        if (m.size() != flag.d)
            fail(ErrorKind::input, "monomial " + m.str() + " does not match the flag dimension");
        MultiIndex v{std::vector<int>(flag.d)};
        for (std::size_t k = 0; k < flag.d; ++k)
            v.e[k] = m.e[flag.order[k]];
        if (!found || v < best) {
            best = v;
            found = true;
        }
    }
    if (!found)
        fail(ErrorKind::valuation_of_zero, "the zero function has valuation infinity");
    return best;
}

std::vector<double> mult_at_point(const HyperplaneDivisor& L, const ValuationFlag& flag)
{
    if (L.coeffs.size() != flag.d + 1)
        fail(ErrorKind::input, "divisor and flag live on different projective spaces");
    std::vector<double> out;
    for (std::size_t i : flag.parameter_hyperplanes())
        out.push_back(L.coeffs[i]);
    return out;
}

double mult_first_coordinate(const HyperplaneDivisor& L, const ValuationFlag& flag)
{
    return mult_at_point(L, flag).front();
}

MonomialSeries MonomialSeries::full(const HyperplaneDivisor& D, int level)
{
    if (level < 0)
        fail(ErrorKind::input, "series level must be non-negative");
    const std::size_t d = D.d();
    std::vector<int> lo(d);
    for (std::size_t i = 0; i < d; ++i)
        lo[i] = static_cast<int>(std::ceil(-level * D.coeffs[i + 1] - tol));
    const int budget = static_cast<int>(std::floor(level * D.coeffs[0] + tol));
    MonomialSeries s;
    s.level = level;
    s.divisor = D;
    int lo_sum = std::accumulate(lo.begin(), lo.end(), 0);
    if (lo_sum <= budget) {
        std::vector<int> cur(d);
        enumerate(lo, budget, 0, 0, cur, s.support);
    }
    std::sort(s.support.begin(), s.support.end());
    return s;
}

MonomialSeries MonomialSeries::base_conditioned(const HyperplaneDivisor& D, int level, std::size_t hyperplane,
                                                double mu)
{
    if (hyperplane > D.d())
        fail(ErrorKind::unsupported_center, "no hyperplane H_" + std::to_string(hyperplane));
    if (mu < 0)
        fail(ErrorKind::input, "base condition multiplicity must be non-negative");
    MonomialSeries s = full(D, level);
    std::vector<MultiIndex> kept;
    for (const auto& m : s.support) {
        const HyperplaneDivisor r = D.scaled(level).plus_principal(m);
        if (r.coeffs[hyperplane] >= level * mu - tol)
            kept.push_back(m);
    }
    s.support = std::move(kept);
    return s;
}

MonomialSeries MonomialSeries::of(const HyperplaneDivisor& D, int level, std::vector<MultiIndex> support)
{
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const HyperplaneDivisor mD = D.scaled(level);
    for (const auto& m : support)
        if (!mD.admits(m))
            fail(ErrorKind::input, "monomial " + m.str() + " is not a section of level " + std::to_string(level));
    return {level, std::move(support), D};
}

bool MonomialSeries::contains(const MultiIndex& m) const
{
    return std::binary_search(support.begin(), support.end(), m);
}

std::vector<Point> SemigroupPoints::at_level(int m) const
{
    std::vector<Point> out;
    for (const auto& [p, lvl] : points)
        if (lvl == m)
            out.push_back(p);
    return out;
}

SemigroupPoints semigroup_points(const std::vector<MonomialSeries>& series, const ValuationFlag& flag)
{
    flag.validate();
    std::map<int, const MonomialSeries*> by_level;
    for (const auto& s : series) {
        if (s.divisor.coeffs.size() != flag.d + 1)
            fail(ErrorKind::input, "series and flag live on different projective spaces");
        if (by_level.count(s.level))
            fail(ErrorKind::input, "two series given for level " + std::to_string(s.level));
        by_level[s.level] = &s;
    }
    for (const auto& [m1, s1] : by_level)
        for (const auto& [m2, s2] : by_level) {
            if (m2 < m1)
                continue;
            const auto it = by_level.find(m1 + m2);
            if (it == by_level.end())
                continue;
            for (const auto& a : s1->support)
                for (const auto& b : s2->support)
                    if (!it->second->contains(a + b))
                        fail(ErrorKind::grading, "levels " + level_pair(m1, m2) + ": product of " + a.str() + " and "
                                                     + b.str() + " is missing from level " + std::to_string(m1 + m2));
        }

    SemigroupPoints out;
    out.d = flag.d;
    for (const auto& [m, s] : by_level)
        for (const auto& phi : s->support)
            out.points.emplace_back(mult_at_point(s->divisor.scaled(m).plus_principal(phi), flag), m);
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    return out;
}

Polytope okounkov_body(const SemigroupPoints& points, int m_max)
{
    std::vector<Point> normalized;
    for (const auto& [p, m] : points.points) {
        if (m <= 0 || m > m_max)
            continue;
        Point q = p;
        for (double& v : q)
            v /= m;
        normalized.push_back(std::move(q));
    }
    if (normalized.empty())
        fail(ErrorKind::empty_series, "no valuation points at levels 1.." + std::to_string(m_max));
    return convex::convex_hull(normalized);
}

std::size_t dim_via_valuations(const MonomialSeries& V, const ValuationFlag& flag)
{
    std::set<Point> values;
    const HyperplaneDivisor mD = V.divisor.scaled(V.level);
    for (const auto& m : V.support)
        values.insert(mult_at_point(mD.plus_principal(m), flag));
    if (values.size() != V.support.size())
        fail(ErrorKind::consistency, "distinct monomials share a valuation");
    return V.support.size();
}

} // namespace arakelov::okounkov
