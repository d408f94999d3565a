// Acceptance runner: one PASS/FAIL line per criterion, runtime limits included.
#include "arakelov/convex/slice.hpp"
#include "arakelov/divisor/divisor.hpp"
#include "arakelov/divisor/prop_suite.hpp"
#include "arakelov/okounkov/okounkov.hpp"
#include "arakelov/oracle/oracle.hpp"
#include "arakelov/zariski/zariski.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace arakelov;
using namespace arakelov::divisor;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            if (ok)
                detail << "failed: ";
            else
                detail << "; ";
            detail << what;
            ok = false;
        }
    }
};

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// 1: vol_hat > 0 exactly when a0 + a1 > 1, off the boundary line
void bigness_boundary(Outcome& o)
{
    int checked = 0, skipped = 0;
    for (int i = 1; i <= 20; ++i)
        for (int j = 1; j <= 20; ++j) {
            const double a0 = 0.1 * i, a1 = 0.1 * j;
            if (std::abs(a0 + a1 - 1) <= 1e-9) {
                ++skipped;
                continue;
            }
            const double v = vol_hat(canonical({a0, a1}));
            ++checked;
            if ((v > 0) != (a0 + a1 > 1))
                o.expect(false, "a=(" + fmt(a0) + "," + fmt(a1) + ") vol=" + fmt(v));
        }
    o.detail << checked << " grid points, " << skipped << " on the line";
}

// 2: quadrature volumes against closed values and the counting oracle
void volume_vs_oracle(Outcome& o)
{
    struct Case {
        std::size_t d;
        std::vector<double> a;
        double exact; // NaN when only the oracle comparison applies
        int n;
        double tol;
    };
    const Case cases[] = {
        {1, {1, 1}, 0.5, 400, 0.05},
        {1, {2, 2}, std::log(2.0) + 0.5, 400, 0.05},
        {2, {1, 2, 4}, std::nan(""), 60, 0.15},
    };
    for (const auto& c : cases) {
        std::vector<double> coeffs(c.d + 1, 0.0);
        coeffs[0] = 1;
        const auto D = make_divisor(c.d, coeffs, CanonicalFamily{c.a});
        const double v = vol_hat(D);
        const double L = oracle::normalized_log_count(D, c.n);
        o.detail << "d=" << c.d << " vol=" << fmt(v) << " oracle(n=" << c.n << ")=" << fmt(L) << "; ";
        if (!std::isnan(c.exact))
            o.expect(std::abs(v - c.exact) <= 1e-6, "vol " + fmt(v) + " vs " + fmt(c.exact));
        o.expect(std::abs(v - L) <= c.tol, "oracle gap " + fmt(std::abs(v - L)));
    }
}

// 3: a hyperplane condition above mu_R strictly drops the volume
void strict_drop(Outcome& o)
{
    const auto D = canonical({2, 2});
    const auto xi = BaseCondition::hyperplane(1, 0.5);
    const double muR = mu_R(D, BaseCondition::hyperplane(1));
    const double v = vol_hat(D);
    const double vb = vol_hat_base(D, {xi});
    const double expect = 0.5 * std::log(2.0) + 0.25;
    const double Lv = oracle::normalized_log_count(D, 400);
    const double Lb = oracle::normalized_log_count(D, 400, {xi});
    o.detail << "mu_R=" << fmt(muR) << " vol=" << fmt(v) << " vol_base=" << fmt(vb) << " oracle " << fmt(Lv) << "/"
             << fmt(Lb);
    o.expect(muR == 0.0, "mu_R " + fmt(muR));
    o.expect(std::abs(vb - expect) <= 1e-6, "vol_base " + fmt(vb));
    o.expect(vb < v, "no drop");
    o.expect(std::abs(Lv - v) <= 0.05, "oracle vol");
    o.expect(std::abs(Lb - vb) <= 0.05, "oracle vol_base");
}

// 4: the mu_R laws on random big canonical pairs
void prop_suite(Outcome& o)
{
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> a(0.05, 2.5), c(0.0, 2.0), lam(-0.3, 0.3), sc(0.5, 3.0);
    const BaseCondition xis[] = {BaseCondition::hyperplane(0), BaseCondition::hyperplane(1),
                                 BaseCondition::fixed_point(0), BaseCondition::fixed_point(1),
                                 BaseCondition::vertical(3)};
    auto draw = [&] {
        std::vector<double> cc{c(rng), c(rng)};
        if (cc[0] + cc[1] < 0.2)
            cc[0] += 0.5;
        return make_divisor(1, cc, CanonicalFamily{{a(rng), a(rng)}}, lam(rng));
    };
    int pairs = 0, nef_big = 0, failures = 0;
    while (pairs < 100) {
        const auto D = draw();
        const auto E = draw();
        if (!D.is_big() || !E.is_big())
            continue;
        const auto xi = xis[rng() % 5];
        const double k = static_cast<double>(static_cast<int>(rng() % 5) - 2);
        const auto r = proposition_2_1_suite(D, E, {k}, sc(rng), xi);
        for (const auto& ch : r.checks) {
            if (!ch.holds && failures++ < 3)
                o.expect(false, "pair " + std::to_string(pairs) + " " + ch.item + " " + fmt(ch.lhs) + " vs " + fmt(ch.rhs));
            if (ch.item == "nef-vanishing" && ch.applicable) {
                ++nef_big;
                o.expect(ch.lhs == 0.0, "nef mu " + fmt(ch.lhs));
            }
        }
        ++pairs;
    }
    o.detail << pairs << " pairs, " << nef_big << " nef-and-big, " << failures << " failed checks";
    if (failures > 0)
        o.ok = false;
}

// 5: mu_Q approximants on doubling levels
void mu_q_convergence(Outcome& o)
{
    const std::vector<std::vector<double>> samples{{0.25, 2}, {2, 0.25}, {0.5, 1.5}, {0.3, 0.9}, {1.6, 0.6}};
    const std::vector<int> levels{25, 50, 100, 200};
    for (const auto& a : samples) {
        const auto D = canonical(a);
        o.expect(D.is_big() && !D.is_nef(), "sample not big and non-nef");
        // the hyperplane with positive asymptotic multiplicity
        const double m0 = mu_R(D, BaseCondition::hyperplane(0));
        const double m1 = mu_R(D, BaseCondition::hyperplane(1));
        const auto xi = BaseCondition::hyperplane(m1 >= m0 ? 1 : 0);
        const double mu = std::max(m0, m1);
        const auto q = oracle::mu_Q_approx(D, xi, levels);
        o.expect(!q.bigness_warning, "bigness warning");
        for (std::size_t k = 0; k < q.points.size(); ++k) {
            o.expect(q.points[k].value.has_value(), "no sections at n=" + std::to_string(q.points[k].n));
            if (k > 0 && q.points[k].value && q.points[k - 1].value)
                o.expect(*q.points[k].value <= *q.points[k - 1].value + 1e-12, "increase at n=" + std::to_string(q.points[k].n));
        }
        const double last = q.points.back().value.value_or(1e9);
        o.detail << "(" << fmt(a[0]) << "," << fmt(a[1]) << ") mu_R=" << fmt(mu) << " mu_Q(200)=" << fmt(last) << "; ";
        o.expect(std::abs(last - mu) <= 0.05, "gap " + fmt(std::abs(last - mu)));
    }
}

// 6: monotone and Lipschitz twist profile
void twist_profile(Outcome& o)
{
    std::vector<double> grid;
    for (int k = 0; k < 50; ++k)
        grid.push_back(k / 49.0);
    for (const auto& a : {std::vector<double>{0.25, 2}, std::vector<double>{0.5, 1.5}}) {
        const auto D = canonical(a);
        const auto xi = BaseCondition::hyperplane(1);
        const auto p = mu_monotone_continuity_profile(D, xi, grid);
        bool mono = p.points.size() == 50;
        for (std::size_t k = 1; k < p.points.size(); ++k)
            mono = mono && p.points[k].mu <= p.points[k - 1].mu;
        o.detail << "(" << fmt(a[0]) << "," << fmt(a[1]) << ") mu " << fmt(p.points.front().mu) << " -> "
                 << fmt(p.points.back().mu) << " L=" << fmt(p.lipschitz) << "; ";
        o.expect(mono && p.nonincreasing, "not nonincreasing");
        o.expect(std::isfinite(p.lipschitz), "Lipschitz constant not finite");
        o.expect(p.continuity_bound_holds, "continuity bound");
    }
}

// 7: Zariski decompositions on random big inputs
void zariski_surface(Outcome& o)
{
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> a(0.1, 2.5);
    int done = 0, nef = 0;
    while (done < 10) {
        const double a0 = a(rng), a1 = a(rng);
        const auto D = canonical({a0, a1});
        if (!D.is_big())
            continue;
        const auto dec = zariski::greatest_nef_minorant(D);
        const std::string tag = "(" + fmt(a0) + "," + fmt(a1) + ")";
        o.expect(zariski::verify_zariski(D, dec, 1e-3).pass(), tag + " verify_zariski");
        o.expect(zariski::check_multiplicity_identity(D, dec, 1e-3).pass(), tag + " multiplicity identity");
        const double best = dec.positive.volume();
        for (const auto& M : zariski::random_nef_minorants(D, 50, rng))
            if (M.volume() > best + 1e-6)
                o.expect(false, tag + " minorant volume " + fmt(M.volume()) + " > " + fmt(best));
        if (D.is_nef()) {
            ++nef;
            bool zero = dec.negative.e0 == 0.0 && dec.negative.e1 == 0.0 && dec.negative.vertical.empty();
            for (double v : dec.negative.h.values())
                zero = zero && v == 0.0;
            o.expect(zero, tag + " nef input with N != 0");
        }
        ++done;
    }
    // a nef input regardless of what the draws produced
    const auto N = canonical({2, 2});
    const auto dn = zariski::greatest_nef_minorant(N);
    bool zero = dn.negative.e0 == 0.0 && dn.negative.e1 == 0.0;
    for (double v : dn.negative.h.values())
        zero = zero && v == 0.0;
    o.expect(zero, "(2,2) N != 0");
    o.detail << done << " inputs, " << nef << " nef among them";
}

// 8: twisting a nef class raises the volume; equal volumes coincide
void nef_comparison(Outcome& o)
{
    for (const auto& a : {std::vector<double>{2, 2}, std::vector<double>{1, 1.5}, std::vector<double>{3, 1}}) {
        const auto D = canonical(a);
        const auto P = zariski::sampled(D);
        const auto Q = zariski::sampled(D.twisted(D.twist() + 0.1));
        o.expect(zariski::certify_nef(P).certified() && zariski::certify_nef(Q).certified(), "not nef");
        const auto th = theta_interval(P.toric());
        o.expect(th.has_value(), "empty Theta");
        const double len = th ? th->second - th->first : 0.0;
        const double inc = Q.volume() - P.volume();
        o.detail << "(" << fmt(a[0]) << "," << fmt(a[1]) << ") increase " << fmt(inc) << " vs " << fmt(0.1 * len) << "; ";
        o.expect(inc >= 0.1 * len - 1e-6, "increase below bound");
        o.expect(!zariski::nef_comparison_check(P, Q), "P < Q not confirmed");
        o.expect(zariski::nef_comparison_check(P, P), "equal pair not identified");
        const auto P2 = zariski::sampled(D);
        o.expect(zariski::nef_comparison_check(P, P2), "resampled pair not identified");
    }
}

std::size_t binomial(int n, int k)
{
    double r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return static_cast<std::size_t>(std::llround(r));
}

// 9: Okounkov bodies of the full series of H_0
void okounkov_geometry(Outcome& o)
{
    using namespace okounkov;
    auto levels = [](const HyperplaneDivisor& D, int m_max) {
        std::vector<MonomialSeries> s;
        for (int m = 1; m <= m_max; ++m)
            s.push_back(MonomialSeries::full(D, m));
        return s;
    };
    const HyperplaneDivisor H2{{1, 0, 0}};
    const auto flag2 = ValuationFlag::origin(2);
    const auto body = okounkov_body(semigroup_points(levels(H2, 3), flag2), 3);
    o.expect(body.same_as(convex::Polytope::simplex({0, 0}, 1), 0.0), "body at m_max=3 is not the simplex");
    for (int m = 0; m <= 10; ++m) {
        const auto V = MonomialSeries::full(H2, m);
        const std::size_t dim = V.support.size();
        o.expect(dim == binomial(m + 2, 2) && dim_via_valuations(V, flag2) == dim,
                 "dimension count at m=" + std::to_string(m));
    }
    struct Level {
        std::size_t d;
        int m;
    };
    for (const auto& lv : {Level{1, 30}, Level{2, 15}}) {
        std::vector<double> c(lv.d + 1, 0.0);
        c[0] = 1;
        const HyperplaneDivisor H{c};
        const auto flag = ValuationFlag::origin(lv.d);
        const double vol = okounkov_body(semigroup_points(levels(H, lv.m), flag), lv.m).volume();
        const double dim = static_cast<double>(dim_via_valuations(MonomialSeries::full(H, lv.m), flag));
        const double gap = std::abs(vol - dim / std::pow(lv.m, static_cast<double>(lv.d)));
        o.detail << "d=" << lv.d << " m=" << lv.m << " gap=" << fmt(gap) << "; ";
        o.expect(gap < 0.1, "d=" + std::to_string(lv.d) + " gap " + fmt(gap));
    }
}

// 10: sliced convex sets keep interior points, with an LP witness
void slice_predicate(Outcome& o)
{
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> U(-2, 2);
    int done = 0;
    while (done < 100) {
        std::vector<convex::Point> pts;
        for (int k = 0; k < 3 + static_cast<int>(rng() % 8); ++k)
            pts.push_back({U(rng), U(rng)});
        const auto C = convex::convex_hull(pts);
        if (!C.is_full_dimensional())
            continue;
        std::uniform_real_distribution<double> A(C.lower(0) + 1e-3, C.upper(0) + 1);
        const double a = A(rng);
        const auto w = convex::slice_interior_witness(C, a);
        const bool ok = convex::sliced_interior_nonempty(C, a) && w && w->radius > 0 && w->center[0] < a
                        && C.contains(w->center);
        o.expect(ok, "polytope " + std::to_string(done) + " slice at " + fmt(a));
        ++done;
    }
    o.detail << done << " polytopes";
}

// 11: closed-form against numeric sup norms
void norm_oracle(Outcome& o)
{
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> A(0.1, 3.0), lam(-1, 1);
    double worst = 0;
    int bad = 0;
    for (int k = 0; k < 500; ++k) {
        const std::size_t d = 1 + rng() % 2;
        std::vector<double> par(d + 1);
        for (auto& v : par)
            v = A(rng);
        std::vector<double> c(d + 1, 0.0);
        c[0] = 1;
        const auto D = make_divisor(d, c, CanonicalFamily{par}, lam(rng));
        const int n = 1 + static_cast<int>(rng() % 50);
        okounkov::MultiIndex m{std::vector<int>(d)};
        int left = n;
        for (auto& e : m.e) {
            e = static_cast<int>(rng() % (left + 1));
            left -= e;
        }
        const double closed = log_sup_norm_monomial(D, n, m);
        const double numeric = oracle::log_sup_norm_numeric(D, n, m);
        const double rel = std::abs(closed - numeric) / std::max(1.0, std::abs(closed));
        worst = std::max(worst, rel);
        if (rel > 1e-6 && bad++ < 3)
            o.expect(false, "n=" + std::to_string(n) + " m=" + m.str() + " rel " + fmt(rel));
    }
    if (bad > 0)
        o.ok = false;
    o.detail << "500 samples, worst relative log error " << fmt(worst);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance runner"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion")->check(CLI::Range(0, 11));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "bigness boundary", 10, bigness_boundary},
        {2, "volume vs oracle", 120, volume_vs_oracle},
        {3, "strict drop", 60, strict_drop},
        {4, "mu_R laws", 30, prop_suite},
        {5, "mu_Q convergence", 120, mu_q_convergence},
        {6, "twist profile", 30, twist_profile},
        {7, "zariski decomposition", 300, zariski_surface},
        {8, "nef volume comparison", 30, nef_comparison},
        {9, "okounkov geometry", 30, okounkov_geometry},
        {10, "slice predicate", 30, slice_predicate},
        {11, "norm oracle", 60, norm_oracle},
    };

    bool all = true;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only)
            continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.expect(secs < c.limit_s, "runtime " + fmt(secs) + " s over " + fmt(c.limit_s) + " s");
        std::printf("%s %d %s (%.2f s) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
        std::fflush(stdout);
        all = all && o.ok;
    }
    return all ? 0 : 1;
}
