#include "arakelov/divisor/prop_suite.hpp"

#include "arakelov/error.hpp"
#include "arakelov/oracle/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace arakelov::divisor {

bool PropSuiteReport::all_hold() const
{
    return std::all_of(checks.begin(), checks.end(), [](const PropCheck& c) { return c.holds; });
}

namespace {

// smallest twist making a canonical divisor effective
ToricArithDivisor effective_twist(const ToricArithDivisor& E)
{
    for (double c : E.coeffs())
        if (c < 0)
            fail(ErrorKind::precondition, "order law needs a divisor with non-negative coefficients");
    const double g0 = concave_transform(E)(Point(E.d(), 0.0));
    return g0 >= 0 ? E : E.twisted(-2.0 * g0);
}

} // namespace

PropSuiteReport proposition_2_1_suite(const ToricArithDivisor& D, const ToricArithDivisor& E,
                                      const std::vector<double>& phi_exponents, double a_scalar,
                                      const BaseCondition& xi, const PropSuiteOptions& opts)
{
    xi.validate(D.d());
    if (E.d() != D.d())
        fail(ErrorKind::input, "suite divisors live on different projective spaces");
    if (!D.is_big() || !E.is_big())
        fail(ErrorKind::bigness_required, "the suite runs on big divisors");
    const double tol = opts.tolerance;
    PropSuiteReport r;
    const double muD = mu_R(D, xi);
    const double muE = mu_R(E, xi);

    {
        const double lhs = mu_R(D.plus(E), xi);
        r.checks.push_back({"subadditivity", lhs, muD + muE, true, lhs <= muD + muE + tol, ""});
    }
    {
        const ToricArithDivisor F = effective_twist(E);
        const ToricArithDivisor Ep = D.plus(F);
        const double lhs = mu_R(Ep, xi);
        const double rhs = muD + multiplicity(F.coeffs(), xi);
        std::ostringstream note;
        note << "E' = D + F, F twisted by " << F.twist() - E.twist();
        r.checks.push_back({"order", lhs, rhs, true, lhs <= rhs + tol, note.str()});
    }
    {
        const double lhs = mu_R(D.plus_principal(phi_exponents), xi);
        r.checks.push_back({"principal", lhs, muD, true, std::abs(lhs - muD) <= tol, ""});
    }
    {
        const double lhs = mu_R(D.scaled(a_scalar), xi);
        r.checks.push_back({"homogeneity", lhs, a_scalar * muD, true,
                            std::abs(lhs - a_scalar * muD) <= tol * std::max(1.0, a_scalar), ""});
    }
    {
        const auto q = oracle::mu_Q_approx(D, xi, opts.oracle_levels);
        PropCheck c{"oracle-bound", muD, 0.0, false, muD >= -tol, "no sections at the oracle levels"};
        bool first = true;
        for (const auto& p : q.points) {
            if (!p.value)
                continue;
            c.applicable = true;
            c.note.clear();
            c.rhs = first ? *p.value : std::min(c.rhs, *p.value);
            first = false;
            c.holds = c.holds && muD <= *p.value + tol;
        }
        r.checks.push_back(c);
    }
    {
        const bool nef = D.is_nef();
        r.checks.push_back({"nef-vanishing", muD, 0.0, nef, !nef || muD == 0.0, nef ? "" : "not nef"});
    }
    return r;
}

} // namespace arakelov::divisor
