#include "arakelov/divisor/divisor.hpp"

#include "arakelov/convex/conjugate.hpp"
#include "arakelov/convex/optimize.hpp"
#include "arakelov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace arakelov::divisor {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double coeff_tol = 1e-12;

std::vector<convex::SlopeRange> expected_slopes(const std::vector<double>& c)
{
    const double tau = std::accumulate(c.begin(), c.end(), 0.0);
    std::vector<convex::SlopeRange> r;
    for (std::size_t i = 1; i < c.size(); ++i)
        r.push_back({-c[i], tau - c[i]});
    return r;
}

double log_affine_exp(const std::vector<double>& a, const Point& s)
{
    double m = std::log(a[0]);
    for (std::size_t i = 1; i < a.size(); ++i)
        m = std::max(m, std::log(a[i]) + s[i - 1]);
    double sum = std::exp(std::log(a[0]) - m);
    for (std::size_t i = 1; i < a.size(); ++i)
        sum += std::exp(std::log(a[i]) + s[i - 1] - m);
    return m + std::log(sum);
}

// multiplicity vector w of the body point x for coefficients c
std::vector<double> multiplicities(const std::vector<double>& c, const Point& x)
{
    std::vector<double> w(c.size());
    double sum = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        w[i] = x[i - 1] + c[i];
        sum += x[i - 1];
    }
    w[0] = c[0] - sum;
    return w;
}

// 1/2 sum w_i log(tau a_i / w_i) with 0 log 0 = 0; -inf off the simplex
double entropy_transform(const std::vector<double>& c, double tau, const std::vector<double>& a, const Point& x)
{
    const std::vector<double> w = multiplicities(c, x);
    const double eps = 1e-9 * std::max(1.0, tau);
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0.0) {
            if (w[i] < -eps)
                return -inf;
            continue;
        }
        s += w[i] * (std::log(tau * a[i]) - std::log(w[i]));
    }
    return 0.5 * s;
}

struct SimplexDomain {
    std::vector<double> lower; // per body coordinate
    double upper_sum = 0.0;
};

// sup_y H(y) + G(x - y), y in dom H, x - y in dom G
double sup_convolve(const std::function<double(const Point&)>& H, const SimplexDomain& dh,
                    const std::function<double(const Point&)>& G, const SimplexDomain& dg, const Point& x)
{
    const std::size_t d = x.size();
    // y_i in [A_i, B_i], sum y in [Smin, Smax]
    std::vector<double> A(d), B(d);
    double xsum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        A[i] = dh.lower[i];
        B[i] = x[i] - dg.lower[i];
        xsum += x[i];
    }
    const double Smin = xsum - dg.upper_sum;
    const double Smax = dh.upper_sum;
    const double eps = 1e-12;
    if (d == 1) {
        const double lo = std::max(A[0], Smin), hi = std::min(B[0], Smax);
        if (hi < lo - eps)
            return -inf;
        auto f = [&](double y) { return H({y}) + G({x[0] - y}); };
        return convex::maximize_unimodal(f, lo, std::max(lo, hi)).value;
    }
    const double lo1 = std::max(A[0], Smin - B[1]), hi1 = std::min(B[0], Smax - A[1]);
    if (hi1 < lo1 - eps)
        return -inf;
    auto inner = [&](double y1) {
        const double lo2 = std::max(A[1], Smin - y1), hi2 = std::min(B[1], Smax - y1);
        if (hi2 < lo2 - eps)
            return -inf;
        auto f = [&](double y2) { return H({y1, y2}) + G({x[0] - y1, x[1] - y2}); };
        return convex::maximize_unimodal(f, lo2, std::max(lo2, hi2)).value;
    };
    return convex::maximize_unimodal(inner, lo1, std::max(lo1, hi1)).value;
}

ToricArithDivisor with_potential(const ToricArithDivisor& base, std::vector<double> coeffs, PotentialSpec p,
                                 double twist)
{
    return make_divisor(base.d(), std::move(coeffs), std::move(p), twist);
}

} // namespace

double ToricArithDivisor::degree() const
{
    return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0);
}

Polytope ToricArithDivisor::body() const
{
    Point lower;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        lower.push_back(0.0 - coeffs_[i]);
    return Polytope::simplex(lower, coeffs_[0]);
}

const CanonicalTerm* ToricArithDivisor::single_term() const
{
    const auto* c = std::get_if<CanonicalPotential>(&potential_);
    return c && c->terms.size() == 1 ? &c->terms.front() : nullptr;
}

double ToricArithDivisor::potential_value(const Point& s) const
{
    if (s.size() != d())
        fail(ErrorKind::input, "potential evaluated at a point of the wrong dimension");
    if (const auto* sp = std::get_if<SampledPotential>(&potential_))
        return sp->u.interpolate(s);
    const auto& cp = std::get<CanonicalPotential>(potential_);
    double v = 0.0;
    for (const auto& t : cp.terms)
        v += t.weight * log_affine_exp(t.a, s);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        v -= coeffs_[i] * s[i - 1];
    return v;
}

bool ToricArithDivisor::is_effective() const
{
    for (double c : coeffs_)
        if (c < -coeff_tol)
            return false;
    if (const auto* sp = std::get_if<SampledPotential>(&potential_)) {
        const auto& v = sp->u.values();
        return *std::min_element(v.begin(), v.end()) + twist_ >= -coeff_tol;
    }
    const ConcaveTransform G = concave_transform(*this);
    return G(Point(d(), 0.0)) >= -coeff_tol;
}

bool ToricArithDivisor::is_nef() const
{
    const ConcaveTransform G = concave_transform(*this);
    const Polytope b = body();
    for (const auto& v : b.vertices())
        if (!(G(v) >= -coeff_tol))
            return false;
    return true;
}

bool ToricArithDivisor::is_big() const
{
    if (body().is_empty() || !body().is_full_dimensional())
        return false;
    return max_transform(*this, concave_transform(*this)).value > 0.0;
}

ToricArithDivisor ToricArithDivisor::plus(const ToricArithDivisor& other) const
{
    if (other.d() != d())
        fail(ErrorKind::input, "adding divisors on different projective spaces");
    std::vector<double> c = coeffs_;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += other.coeffs_[i];
    const double tw = twist_ + other.twist_;
    if (is_canonical() && other.is_canonical()) {
        CanonicalPotential p = std::get<CanonicalPotential>(potential_);
        const auto& q = std::get<CanonicalPotential>(other.potential_).terms;
        p.terms.insert(p.terms.end(), q.begin(), q.end());
        return with_potential(*this, std::move(c), std::move(p), tw);
    }
    const auto& grid_owner = is_sampled() ? *this : other;
    const auto& axes = std::get<SampledPotential>(grid_owner.potential_).u.axes();
    if (is_sampled() && other.is_sampled()
        && !std::get<SampledPotential>(potential_).u.same_grid(std::get<SampledPotential>(other.potential_).u))
        fail(ErrorKind::input, "adding sampled potentials on different grids");
    const auto sum = sample_potential(axes).plus(other.sample_potential(axes));
    return with_potential(*this, std::move(c), GridConvexFunction(sum, 1e-7), tw);
}

ToricArithDivisor ToricArithDivisor::scaled(double t) const
{
    if (!(t > 0.0))
        fail(ErrorKind::input, "divisors scale by positive factors only");
    std::vector<double> c = coeffs_;
    for (double& v : c)
        v *= t;
    if (const auto* sp = std::get_if<SampledPotential>(&potential_))
        return with_potential(*this, std::move(c), GridConvexFunction(sp->u.scaled(t), 1e-7), t * twist_);
    CanonicalPotential p = std::get<CanonicalPotential>(potential_);
    for (auto& term : p.terms)
        term.weight *= t;
    return with_potential(*this, std::move(c), std::move(p), t * twist_);
}

ToricArithDivisor ToricArithDivisor::twisted(double lambda) const
{
    ToricArithDivisor r = *this;
    r.twist_ += lambda;
    return r;
}

ToricArithDivisor ToricArithDivisor::plus_principal(const std::vector<double>& k) const
{
    if (k.size() != d())
        fail(ErrorKind::input, "principal twist needs one exponent per affine coordinate");
    std::vector<double> c = coeffs_;
    for (std::size_t i = 0; i < k.size(); ++i) {
        c[i + 1] += k[i];
        c[0] -= k[i];
    }
    if (const auto* sp = std::get_if<SampledPotential>(&potential_)) {
        const auto& u = sp->u;
        std::vector<double> v = u.values();
        for (std::size_t f = 0; f < v.size(); ++f) {
            const Point s = u.point(f);
            for (std::size_t i = 0; i < k.size(); ++i)
                v[f] -= k[i] * s[i];
        }
        auto slopes = u.slopes();
        for (std::size_t i = 0; i < k.size(); ++i)
            slopes[i] = {slopes[i].lo - k[i], slopes[i].hi - k[i]};
        return with_potential(*this, std::move(c),
                              GridConvexFunction(convex::GridFunction(u.axes(), std::move(v), slopes), 1e-7), twist_);
    }
    return with_potential(*this, std::move(c), std::get<CanonicalPotential>(potential_), twist_);
}

convex::GridFunction ToricArithDivisor::sample_potential(const std::vector<convex::Axis>& axes) const
{
    if (axes.size() != d())
        fail(ErrorKind::input, "sampling grid has the wrong dimension");
    return convex::GridFunction::sample(axes, expected_slopes(coeffs_),
                                        [this](const Point& s) { return potential_value(s); });
}

ToricArithDivisor make_divisor(std::size_t d, std::vector<double> coeffs, PotentialSpec potential, double twist)
{
    if (d < 1 || d > 2)
        fail(ErrorKind::input, "unsupported dimension d = " + std::to_string(d) + " (supported: 1, 2)");
    if (coeffs.size() != d + 1)
        fail(ErrorKind::input, "expected " + std::to_string(d + 1) + " hyperplane coefficients");
    for (double c : coeffs)
        if (!std::isfinite(c))
            fail(ErrorKind::input, "non-finite hyperplane coefficient");
    if (!std::isfinite(twist))
        fail(ErrorKind::input, "non-finite twist");
    const double tau = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);

    ToricArithDivisor D;
    D.coeffs_ = std::move(coeffs);
    D.twist_ = twist;

    auto check_term = [&](const CanonicalTerm& t) {
        if (t.a.size() != d + 1)
            fail(ErrorKind::input, "canonical family needs " + std::to_string(d + 1) + " parameters");
        for (double a : t.a)
            if (!(a > 0.0) || !std::isfinite(a))
                fail(ErrorKind::input, "canonical family parameters must be strictly positive");
        if (!(t.weight > 0.0) || !std::isfinite(t.weight))
            fail(ErrorKind::input, "canonical term weights must be positive");
    };

    if (const auto* fam = std::get_if<CanonicalFamily>(&potential)) {
        if (!(tau > 0.0))
            fail(ErrorKind::input, "canonical family requires a divisor of positive degree");
        CanonicalTerm t{tau, fam->a};
        check_term(t);
        D.potential_ = CanonicalPotential{{t}};
    } else if (const auto* cp = std::get_if<CanonicalPotential>(&potential)) {
        if (cp->terms.empty())
            fail(ErrorKind::input, "canonical potential without terms");
        double w = 0.0;
        for (const auto& t : cp->terms) {
            check_term(t);
            w += t.weight;
        }
        if (std::abs(w - tau) > 1e-12 * std::max(1.0, std::abs(tau)))
            fail(ErrorKind::recession, "canonical weights sum to " + std::to_string(w) + " but the degree is "
                                           + std::to_string(tau));
        D.potential_ = *cp;
    } else {
        const auto& u = std::get<GridConvexFunction>(potential);
        if (u.dimension() != d)
            fail(ErrorKind::input, "sampled potential has the wrong dimension");
        const auto want = expected_slopes(D.coeffs_);
        for (std::size_t i = 0; i < d; ++i) {
            const auto& got = u.slopes()[i];
            const double eps = 1e-9 * std::max({1.0, std::abs(want[i].lo), std::abs(want[i].hi)});
            if (std::abs(got.lo - want[i].lo) > eps || std::abs(got.hi - want[i].hi) > eps)
                fail(ErrorKind::recession, "potential recession slopes [" + std::to_string(got.lo) + ", "
                                               + std::to_string(got.hi) + "] on axis " + std::to_string(i + 1)
                                               + " do not match the coefficients, expected ["
                                               + std::to_string(want[i].lo) + ", " + std::to_string(want[i].hi) + "]");
        }
        D.potential_ = SampledPotential{u};
    }
    return D;
}

ToricArithDivisor canonical(std::vector<double> a, double twist)
{
    const std::size_t d = a.size() - 1;
    std::vector<double> c(d + 1, 0.0);
    c[0] = 1.0;
    return make_divisor(d, std::move(c), CanonicalFamily{std::move(a)}, twist);
}

ConcaveTransform concave_transform(const ToricArithDivisor& D, const TransformOptions& opts)
{
    const Polytope body = D.body();
    const double lam = D.twist();
    const std::vector<double> c = D.coeffs();

    if (const auto* term = D.single_term()) {
        const double tau = term->weight;
        const std::vector<double> a = term->a;
        auto f = [c, tau, a, lam](const Point& x) { return entropy_transform(c, tau, a, x) + 0.5 * lam; };
        return {convex::ConcaveFunction::analytic(body, f), CanonicalFamily{a}, lam, "closed-form"};
    }

    if (const auto* cp = std::get_if<CanonicalPotential>(&D.potential())) {
        // split the coefficients: term k >= 1 carries weight_k H_0, term 0 the rest
        const auto& terms = cp->terms;
        const std::size_t d = D.d();
        std::vector<std::vector<double>> ck(terms.size(), std::vector<double>(d + 1, 0.0));
        ck[0] = c;
        for (std::size_t k = 1; k < terms.size(); ++k) {
            ck[k][0] = terms[k].weight;
            ck[0][0] -= terms[k].weight;
        }
        auto domain_of = [d](const std::vector<double>& cc) {
            SimplexDomain s;
            for (std::size_t i = 1; i <= d; ++i)
                s.lower.push_back(-cc[i]);
            s.upper_sum = cc[0];
            return s;
        };
        using Fn = std::function<double(const Point&)>;
        Fn acc = [c0 = ck[0], t = terms[0]](const Point& x) { return entropy_transform(c0, t.weight, t.a, x); };
        SimplexDomain acc_dom = domain_of(ck[0]);
        for (std::size_t k = 1; k < terms.size(); ++k) {
            Fn g = [cc = ck[k], t = terms[k]](const Point& x) { return entropy_transform(cc, t.weight, t.a, x); };
            const SimplexDomain gd = domain_of(ck[k]);
            acc = [acc, acc_dom, g, gd](const Point& x) { return sup_convolve(acc, acc_dom, g, gd, x); };
            acc_dom.upper_sum += gd.upper_sum;
        }
        auto f = [acc, lam](const Point& x) { return acc(x) + 0.5 * lam; };
        return {convex::ConcaveFunction::analytic(body, f), std::nullopt, lam, "sup-convolution"};
    }

    const auto& u = std::get<SampledPotential>(D.potential()).u;
    if (D.d() == 1) {
        const auto conj = convex::conjugate_piecewise_linear(u, body.lower(0), body.upper(0));
        std::vector<double> y = conj.values();
        for (double& v : y)
            v = -0.5 * v + 0.5 * lam;
        return {convex::ConcaveFunction::piecewise_linear(convex::PiecewiseLinear(conj.knots(), std::move(y))),
                std::nullopt, lam, "grid"};
    }
    const auto conj = convex::legendre_conjugate(u, body, opts.resolution_2d);
    std::vector<double> y = conj.values();
    for (double& v : y)
        v = -0.5 * v + 0.5 * lam;
    return {convex::ConcaveFunction::grid(body, convex::GridFunction(conj.axes(), std::move(y), conj.slopes())),
            std::nullopt, lam, "grid"};
}

Maximum max_transform(const ToricArithDivisor& D, const ConcaveTransform& G)
{
    if (const auto* term = D.single_term()) {
        double sum = 0.0;
        for (double a : term->a)
            sum += a;
        Point x;
        for (std::size_t i = 1; i < term->a.size(); ++i)
            x.push_back(term->weight * term->a[i] / sum - D.coeffs()[i]);
        return {x, 0.5 * term->weight * std::log(sum) + 0.5 * D.twist()};
    }
    const auto m = convex::maximize(G.G);
    return {m.x, m.value};
}

std::optional<std::pair<double, double>> theta_interval(const ToricArithDivisor& D)
{
    if (D.d() != 1)
        fail(ErrorKind::input, "Theta is an interval only for d = 1");
    const ConcaveTransform G = concave_transform(D);
    const Maximum mx = max_transform(D, G);
    if (!(mx.value > 0.0))
        return std::nullopt;
    if (G.G.kind() == convex::ConcaveFunction::Kind::piecewise_linear)
        return G.G.piecewise_form().plus(G.G.offset()).superlevel(0.0);
    const double lo = D.body().lower(0), hi = D.body().upper(0);
    auto g = [&](double t) { return G(Point{t}); };
    const double left = g(lo) >= 0 ? lo : convex::bracketed_root(g, lo, mx.x[0]);
    const double right = g(hi) >= 0 ? hi : convex::bracketed_root(g, mx.x[0], hi);
    return std::make_pair(left, right);
}

convex::Region theta_region(const ToricArithDivisor& D, const TransformOptions& opts)
{
    if (D.d() == 1) {
        const auto iv = theta_interval(D);
        if (!iv)
            return convex::Region::of(Polytope::empty(1));
        return convex::Region::of(convex::convex_hull({{iv->first}, {iv->second}}));
    }
    const ConcaveTransform G = concave_transform(D, opts);
    if (!(max_transform(D, G).value > 0.0))
        return convex::Region::of(Polytope::empty(D.d()));
    return convex::Region{D.body(), {}, [G](const Point& x) { return G(x) >= 0.0; }};
}

double log_sup_norm_monomial(const ToricArithDivisor& D, int n, const MultiIndex& m)
{
    if (n < 1)
        fail(ErrorKind::input, "level must be at least 1");
    if (m.size() != D.d())
        fail(ErrorKind::input, "monomial has the wrong number of variables");
    const auto nD = D.hyperplanes().scaled(n);
    if (!nD.admits(m))
        fail(ErrorKind::out_of_range, "monomial " + m.str() + " is not a section of " + std::to_string(n) + "D");
    if (const auto* term = D.single_term()) {
        const auto w = nD.plus_principal(m).coeffs;
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] > 0)
                s += w[i] * (std::log(w[i]) - std::log(n * term->weight * term->a[i]));
        return 0.5 * s - 0.5 * n * D.twist();
    }
    const ConcaveTransform G = concave_transform(D);
    Point x;
    for (int e : m.e)
        x.push_back(static_cast<double>(e) / n);
    return -n * G(x);
}

double sup_norm_monomial(const ToricArithDivisor& D, int n, const MultiIndex& m)
{
    return std::exp(log_sup_norm_monomial(D, n, m));
}

bool is_prime(std::size_t p)
{
    if (p < 2)
        return false;
    for (std::size_t q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

void BaseCondition::validate(std::size_t d) const
{
    if (!(mu >= 0.0) || !std::isfinite(mu))
        fail(ErrorKind::input, "base condition bound must be a finite non-negative number");
    if (kind == Kind::vertical) {
        if (!is_prime(index))
            fail(ErrorKind::input, "vertical fiber needs a prime, got " + std::to_string(index));
    } else if (index > d) {
        fail(ErrorKind::unsupported_center, "center index " + std::to_string(index) + " exceeds d = " + std::to_string(d));
    }
}

std::string BaseCondition::str() const
{
    const char* k = kind == Kind::hyperplane ? "hyperplane" : kind == Kind::fixed_point ? "point" : "fiber";
    return std::string(k) + ":" + std::to_string(index);
}

double multiplicity(const std::vector<double>& coeffs, const BaseCondition& xi)
{
    switch (xi.kind) {
    case BaseCondition::Kind::hyperplane: return coeffs.at(xi.index);
    case BaseCondition::Kind::fixed_point: {
        double s = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (i != xi.index)
                s += coeffs[i];
        return s;
    }
    case BaseCondition::Kind::vertical: return 0.0;
    }
    return 0.0;
}

namespace {

// multiplicity at xi of nD + (z^{n x}) divided by n, as alpha + beta . x
struct LinearForm {
    double alpha = 0.0;
    Point beta;
    double operator()(const Point& x) const
    {
        double v = alpha;
        for (std::size_t i = 0; i < x.size(); ++i)
            v += beta[i] * x[i];
        return v;
    }
};

LinearForm weight_form(const std::vector<double>& c, std::size_t i)
{
    const std::size_t d = c.size() - 1;
    LinearForm f{c[i], Point(d, 0.0)};
    if (i == 0)
        std::fill(f.beta.begin(), f.beta.end(), -1.0);
    else
        f.beta[i - 1] = 1.0;
    return f;
}

LinearForm center_form(const ToricArithDivisor& D, const BaseCondition& xi)
{
    const LinearForm w = weight_form(D.coeffs(), xi.index);
    if (xi.kind == BaseCondition::Kind::hyperplane)
        return w;
    LinearForm f{D.degree() - w.alpha, w.beta};
    for (double& b : f.beta)
        b = -b;
    return f;
}

} // namespace

std::vector<convex::Halfspace> base_constraints(const ToricArithDivisor& D, const std::vector<BaseCondition>& conds)
{
    std::vector<convex::Halfspace> out;
    for (const auto& xi : conds) {
        xi.validate(D.d());
        if (xi.kind == BaseCondition::Kind::vertical)
            continue;
        // form(x) >= mu  <=>  -beta . x <= alpha - mu
        const LinearForm f = center_form(D, xi);
        Point n = f.beta;
        for (double& v : n)
            v = -v;
        out.push_back(convex::make_halfspace(n, f.alpha - xi.mu));
    }
    return out;
}

double vertical_shift(const std::vector<BaseCondition>& conds)
{
    std::map<std::size_t, double> per_prime;
    for (const auto& xi : conds)
        if (xi.kind == BaseCondition::Kind::vertical)
            per_prime[xi.index] = std::max(per_prime[xi.index], xi.mu);
    double s = 0.0;
    for (const auto& [p, mu] : per_prime)
        s += mu * std::log(static_cast<double>(p));
    return s;
}

namespace {

double factorial(std::size_t n)
{
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k)
        f *= static_cast<double>(k);
    return f;
}

} // namespace

double vol_hat(const ToricArithDivisor& D, const VolumeOptions& opts)
{
    return vol_hat_base(D, {}, opts);
}

double vol_hat_base(const ToricArithDivisor& D, const std::vector<BaseCondition>& conds, const VolumeOptions& opts)
{
    const Polytope body = D.body();
    if (!body.is_full_dimensional())
        return 0.0;
    const auto cuts = base_constraints(D, conds);
    const double shift = vertical_shift(conds);
    const ConcaveTransform G = concave_transform(D, opts.transform);
    if (max_transform(D, G).value - shift <= 0.0)
        return 0.0;
    const convex::Region region{body, cuts, {}};
    return factorial(D.d() + 1) * convex::integrate_positive_part(G.G.shifted(-shift), region, opts.quadrature);
}

FiltrationSummary filtration_summary(const ToricArithDivisor& D, int n)
{
    if (n < 1)
        fail(ErrorKind::input, "filtration level must be at least 1");
    const auto series = okounkov::MonomialSeries::full(D.hyperplanes(), n);
    if (series.support.empty())
        fail(ErrorKind::precondition, "no admissible monomials at level " + std::to_string(n));
    FiltrationSummary s;
    s.n = n;
    s.e_min = inf;
    s.e_max = -inf;
    for (const auto& m : series.support) {
        const double t = -log_sup_norm_monomial(D, n, m);
        s.t[m] = t;
        s.e_min = std::min(s.e_min, t);
        s.e_max = std::max(s.e_max, t);
    }
    s.C = max_transform(D, concave_transform(D)).value + 1.0;
    return s;
}

double mu_R(const ToricArithDivisor& D, const BaseCondition& xi)
{
    xi.validate(D.d());
    const ConcaveTransform G = concave_transform(D);
    const Maximum mx = max_transform(D, G);
    if (!(mx.value > 0.0))
        fail(ErrorKind::bigness_required, "asymptotic multiplicity needs a big divisor (max G = "
                                              + std::to_string(mx.value) + ")");
    if (xi.kind == BaseCondition::Kind::vertical)
        return 0.0;
    const LinearForm ell = center_form(D, xi);
    const Polytope body = D.body();
    const double scale = std::max(1.0, std::abs(D.degree()));
    auto snap = [scale](double v) { return std::abs(v) <= 16 * std::numeric_limits<double>::epsilon() * scale ? 0.0 : std::max(0.0, v); };

    if (D.d() == 1) {
        const auto iv = theta_interval(D);
        return snap(std::min(ell({iv->first}), ell({iv->second})));
    }

    double t_min = inf, t_max = -inf;
    for (const auto& v : body.vertices()) {
        t_min = std::min(t_min, ell(v));
        t_max = std::max(t_max, ell(v));
    }
    // phi(t) = max of G on the chord {ell = t} of the body; concave in t
    const double bn = std::hypot(ell.beta[0], ell.beta[1]);
    const Point dir{-ell.beta[1] / bn, ell.beta[0] / bn};
    auto phi = [&](double t) {
        const double r0 = (t - ell.alpha) / (bn * bn);
        const Point p0{ell.beta[0] * r0, ell.beta[1] * r0};
        double lo = -inf, hi = inf;
        for (const auto& h : body.halfspaces()) {
            const double nd = h.normal[0] * dir[0] + h.normal[1] * dir[1];
            const double rhs = h.offset - (h.normal[0] * p0[0] + h.normal[1] * p0[1]);
            if (std::abs(nd) < 1e-14)
                continue;
            if (nd > 0)
                hi = std::min(hi, rhs / nd);
            else
                lo = std::max(lo, rhs / nd);
        }
        if (!(hi >= lo))
            hi = lo;
        auto g = [&](double r) { return G.G.shifted(0.0)(Point{p0[0] + r * dir[0], p0[1] + r * dir[1]}); };
        return convex::maximize_unimodal(g, lo, hi).value;
    };
    if (phi(t_min) >= 0.0)
        return snap(t_min);
    const auto peak = convex::maximize_unimodal(phi, t_min, t_max);
    return snap(convex::bracketed_root(phi, t_min, peak.x));
}

ContinuityProfile mu_monotone_continuity_profile(const ToricArithDivisor& D, const BaseCondition& xi,
                                                 const std::vector<double>& lambda_grid)
{
    ContinuityProfile prof;
    for (double lam : lambda_grid) {
        const ToricArithDivisor Dl = D.twisted(lam);
        if (!Dl.is_big())
            fail(ErrorKind::bigness_required, "twist lambda = " + std::to_string(lam) + " leaves the big cone");
        prof.points.push_back({lam, mu_R(Dl, xi)});
    }
    for (std::size_t k = 1; k < prof.points.size(); ++k) {
        const auto& a = prof.points[k - 1];
        const auto& b = prof.points[k];
        if (b.lambda > a.lambda && b.mu > a.mu)
            prof.nonincreasing = false;
        const double h = std::abs(b.lambda - a.lambda);
        if (h > 0)
            prof.lipschitz = std::max(prof.lipschitz, std::abs(b.mu - a.mu) / h);
    }
    for (std::size_t k = 1; k < prof.points.size(); ++k) {
        const double h = std::abs(prof.points[k].lambda - prof.points[k - 1].lambda);
        if (std::abs(prof.points[k].mu - prof.points[k - 1].mu) > prof.lipschitz * h * (1 + 1e-12))
            prof.continuity_bound_holds = false;
    }
    prof.continuity_bound_holds = prof.continuity_bound_holds && std::isfinite(prof.lipschitz);
    return prof;
}

std::string method_tag(const ToricArithDivisor& D)
{
    if (D.single_term())
        return "closed-form";
    if (D.is_canonical())
        return "sup-convolution";
    return "grid";
}

} // namespace arakelov::divisor
