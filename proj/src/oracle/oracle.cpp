#include "arakelov/oracle/oracle.hpp"

#include "arakelov/convex/optimize.hpp"
#include "arakelov/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <limits>

namespace arakelov::oracle {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double guard = 1e-9;
const double exact_log_limit = 40 * std::log(2.0);
const double saturate_log = 62 * std::log(2.0);

std::vector<double> section_weights(const ToricArithDivisor& D, int n, const MultiIndex& m)
{
    return D.hyperplanes().scaled(n).plus_principal(m).coeffs;
}

// R_m^2 as an exact rational when the data allow it
std::optional<Rational> exact_radius_squared(const ToricArithDivisor& D, int n, const MultiIndex& m)
{
    const auto* term = D.single_term();
    if (!term || D.twist() != 0.0)
        return std::nullopt;
    const auto w = section_weights(D, n, m);
    Rational r = 1;
    const Rational ntau = Rational(n) * Rational(term->weight);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != std::floor(w[i]) || w[i] < 0 || w[i] > 1e5)
            return std::nullopt;
        const auto k = static_cast<unsigned>(w[i]);
        if (k == 0)
            continue;
        const Rational x = ntau * Rational(term->a[i]) / Rational(k);
        r *= Rational(boost::multiprecision::pow(boost::multiprecision::numerator(x), k),
                      boost::multiprecision::pow(boost::multiprecision::denominator(x), k));
    }
    return r;
}

std::uint64_t ceil_power(std::size_t p, double e, bool& overflow)
{
    std::uint64_t q = 1;
    const auto k = static_cast<long>(std::ceil(e - 1e-12));
    overflow = false;
    for (long i = 0; i < k; ++i) {
        if (q > (std::uint64_t(1) << 62) / p) {
            overflow = true;
            return 0;
        }
        q *= p;
    }
    return q;
}

// log q for the vertical conditions at level n, with q when it fits
std::pair<double, std::optional<std::uint64_t>> vertical_modulus(const std::vector<BaseCondition>& conds, int n)
{
    std::map<std::size_t, double> per_prime;
    for (const auto& xi : conds)
        if (xi.kind == BaseCondition::Kind::vertical)
            per_prime[xi.index] = std::max(per_prime[xi.index], xi.mu);
    double log_q = 0.0;
    std::optional<std::uint64_t> q = 1;
    for (const auto& [p, mu] : per_prime) {
        const double k = std::ceil(n * mu - 1e-12);
        log_q += k * std::log(static_cast<double>(p));
        bool overflow = false;
        const std::uint64_t f = ceil_power(p, n * mu, overflow);
        if (overflow || !q || *q > (std::uint64_t(1) << 62) / f)
            q.reset();
        else
            *q *= f;
    }
    return {log_q, q};
}

bool meets(const std::vector<double>& w, const BaseCondition& xi, int n)
{
    if (xi.kind == BaseCondition::Kind::vertical)
        return true;
    return divisor::multiplicity(w, xi) >= n * xi.mu - guard;
}

} // namespace

double SectionEntry::radius() const
{
    return std::exp(log_radius);
}

SectionEnumeration enumerate_sections(const ToricArithDivisor& D, int n, const std::vector<BaseCondition>& conditions)
{
    if (n < 1)
        fail(ErrorKind::input, "level must be at least 1");
    for (const auto& xi : conditions)
        xi.validate(D.d());
    SectionEnumeration out;
    out.n = n;
    out.constraints = conditions;
    const auto series = okounkov::MonomialSeries::full(D.hyperplanes(), n);
    for (const auto& m : series.support) {
        const auto w = section_weights(D, n, m);
        bool ok = true;
        for (const auto& xi : conditions)
            ok = ok && meets(w, xi, n);
        if (ok)
            out.entries.push_back({m, -divisor::log_sup_norm_monomial(D, n, m)});
    }
    return out;
}

std::int64_t floor_radius(const ToricArithDivisor& D, int n, const SectionEntry& e, std::uint64_t q)
{
    const double log_r = e.log_radius - std::log(static_cast<double>(q));
    if (log_r > saturate_log)
        return std::int64_t(1) << 62;
    if (log_r < std::log(0.5))
        return 0;
    auto N = static_cast<std::int64_t>(std::floor(std::exp(log_r)));
    if (log_r <= exact_log_limit) {
        if (const auto r2 = exact_radius_squared(D, n, e.m)) {
            const Rational qq = Rational(q) * Rational(q);
            auto fits = [&](std::int64_t c) { return Rational(c) * Rational(c) * qq <= *r2; };
            while (fits(N + 1))
                ++N;
            while (N > 0 && !fits(N))
                --N;
            return N;
        }
    }
    return static_cast<std::int64_t>(std::floor(std::exp(log_r) * (1 + guard)));
}

double log_count(const ToricArithDivisor& D, int n, const std::vector<BaseCondition>& conditions)
{
    const auto sections = enumerate_sections(D, n, conditions);
    const auto [log_q, q] = vertical_modulus(conditions, n);
    double L = 0.0;
    for (const auto& e : sections.entries) {
        const double log_r = e.log_radius - log_q;
        if (log_r > exact_log_limit || !q) {
            if (log_r > exact_log_limit)
                L += std::log(2.0) + log_r;
            else if (log_r >= std::log(0.5))
                L += std::log(2 * std::floor(std::exp(log_r) * (1 + guard)) + 1);
            continue;
        }
        L += std::log(2.0 * static_cast<double>(floor_radius(D, n, e, *q)) + 1.0);
    }
    return L;
}

double normalized_log_count(const ToricArithDivisor& D, int n, const std::vector<BaseCondition>& conditions)
{
    double f = 1.0;
    for (std::size_t k = 2; k <= D.d() + 1; ++k)
        f *= static_cast<double>(k);
    return f * log_count(D, n, conditions) / std::pow(static_cast<double>(n), static_cast<double>(D.d() + 1));
}

MuQApprox mu_Q_approx(const ToricArithDivisor& D, const BaseCondition& xi, const std::vector<int>& levels)
{
    xi.validate(D.d());
    MuQApprox out;
    out.bigness_warning = true;
    std::optional<double> running;
    for (int n : levels) {
        MuQPoint pt{n, std::nullopt, running};
        for (const auto& e : enumerate_sections(D, n).entries) {
            if (floor_radius(D, n, e) < 1)
                continue;
            const double v = xi.kind == BaseCondition::Kind::vertical
                                 ? 0.0
                                 : divisor::multiplicity(section_weights(D, n, e.m), xi) / n;
            pt.value = pt.value ? std::min(*pt.value, v) : v;
        }
        if (pt.value) {
            out.bigness_warning = false;
            running = running ? std::min(*running, *pt.value) : *pt.value;
        }
        pt.envelope = running;
        out.points.push_back(pt);
    }
    return out;
}

double log_sup_norm_numeric(const ToricArithDivisor& D, int n, const MultiIndex& m)
{
    if (m.size() != D.d())
        fail(ErrorKind::input, "monomial has the wrong number of variables");
    if (!D.hyperplanes().scaled(n).admits(m))
        fail(ErrorKind::out_of_range, "monomial " + m.str() + " is not a section");
    constexpr double box = 200.0;
    auto F = [&](const convex::Point& s) {
        double v = -n * D.green_value(s);
        for (std::size_t i = 0; i < s.size(); ++i)
            v += m.e[i] * s[i];
        return v;
    };
    double best;
    if (D.d() == 1) {
        best = convex::maximize_unimodal([&](double s) { return F({s}); }, -box, box).value;
    } else {
        auto inner = [&](double s1) {
            return convex::maximize_unimodal([&](double s2) { return F({s1, s2}); }, -box, box).value;
        };
        best = convex::maximize_unimodal(inner, -box, box).value;
    }
    return 0.5 * best;
}

double sup_norm_numeric(const ToricArithDivisor& D, int n, const MultiIndex& m)
{
    return std::exp(log_sup_norm_numeric(D, n, m));
}

SandwichResult sandwich_check(const ToricArithDivisor& D, int n, std::uint64_t max_box)
{
    if (D.d() != 1)
        fail(ErrorKind::input, "the counting sandwich is implemented for d = 1");
    SandwichResult out;
    const auto sections = enumerate_sections(D, n);
    std::vector<int> m;
    std::vector<std::int64_t> bound;
    out.box = 1;
    for (const auto& e : sections.entries) {
        const auto N = floor_radius(D, n, e);
        if (N == 0)
            continue;
        if (out.box > max_box / static_cast<std::uint64_t>(2 * N + 1) + 1) {
            out.box = 0;
            return out;
        }
        out.box *= static_cast<std::uint64_t>(2 * N + 1);
        m.push_back(e.m.e[0]);
        bound.push_back(N);
    }
    if (out.box > max_box) {
        out.box = 0;
        return out;
    }

    // weights |z^m| e^{-n g/2} on circles s = log|z|^2
    constexpr int angles = 64;
    std::vector<std::vector<double>> weight;
    for (double s = -12.0; s <= 12.0 + 1e-12; s += 0.25) {
        std::vector<double> row;
        for (int k : m)
            row.push_back(std::exp(0.5 * (k * s - n * D.green_value({s}))));
        weight.push_back(std::move(row));
    }
    std::vector<std::vector<std::complex<double>>> phase(angles, std::vector<std::complex<double>>(m.size()));
    for (int a = 0; a < angles; ++a)
        for (std::size_t j = 0; j < m.size(); ++j)
            phase[a][j] = std::polar(1.0, 2 * M_PI * a * m[j] / angles);

    auto member = [&](const std::vector<std::int64_t>& c) {
        bool triangle = true;
        for (const auto& row : weight) {
            double t = 0.0;
            for (std::size_t j = 0; j < c.size(); ++j)
                t += std::abs(static_cast<double>(c[j])) * row[j];
            if (t > 1 + guard) {
                triangle = false;
                break;
            }
        }
        if (triangle)
            return true;
        for (const auto& row : weight)
            for (int a = 0; a < angles; ++a) {
                std::complex<double> f = 0.0;
                for (std::size_t j = 0; j < c.size(); ++j)
                    f += static_cast<double>(c[j]) * row[j] * phase[a][j];
                if (std::norm(f) > 1 + guard)
                    return false;
            }
        return true;
    };

    std::vector<std::int64_t> c(bound.size());
    for (std::size_t j = 0; j < c.size(); ++j)
        c[j] = -bound[j];
    while (true) {
        if (member(c))
            ++out.members;
        std::size_t j = 0;
        while (j < c.size() && c[j] == bound[j]) {
            c[j] = -bound[j];
            ++j;
        }
        if (j == c.size())
            break;
        ++c[j];
    }
    out.evaluated = true;
    out.exact_log_count = std::log(static_cast<double>(out.members));
    out.L = log_count(D, n);
    out.bound = 3.0 * (n + 1) * std::log(n + 3.0);
    out.holds = std::abs(out.exact_log_count - out.L) <= out.bound;
    return out;
}

SuperadditivityResult superadditivity_check(const ToricArithDivisor& D, int n1, int n2)
{
    SuperadditivityResult r;
    r.slack = 2.0 * (D.d() + 1) * std::log(n1 + n2 + 2.0);
    r.lhs = log_count(D, n1 + n2);
    r.rhs = log_count(D, n1) + log_count(D, n2) - r.slack;
    r.holds = r.lhs >= r.rhs;
    return r;
}

} // namespace arakelov::oracle
