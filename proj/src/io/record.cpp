#include "arakelov/io/record.hpp"

#include "arakelov/error.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace arakelov::io {

namespace {

template <class T>
T field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::input, std::string("divisor record is missing '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(ErrorKind::input, std::string("divisor record field '") + key + "' has the wrong type");
    }
}

json sampled_potential(const convex::GridFunction& u)
{
    const auto& ax = u.axes()[0];
    return {{"kind", "sampled"}, {"s_min", ax.lo}, {"s_max", ax.hi}, {"values", u.values()}};
}

convex::GridFunction grid_from(const json& p, std::size_t d, const std::vector<double>& coeffs)
{
    const double lo = field<double>(p, "s_min"), hi = field<double>(p, "s_max");
    auto values = field<std::vector<double>>(p, "values");
    if (!(hi > lo))
        fail(ErrorKind::input, "sampled potential needs s_min < s_max");
    std::size_t count = values.size();
    if (d == 2) {
        count = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(values.size()))));
        if (count * count != values.size())
            fail(ErrorKind::input, "two-dimensional samples must form a square grid");
    }
    if (count < 2)
        fail(ErrorKind::input, "sampled potential needs at least two samples per axis");
    double tau = 0.0;
    for (double c : coeffs)
        tau += c;
    std::vector<convex::Axis> axes(d, convex::Axis{lo, hi, count});
    std::vector<convex::SlopeRange> slopes;
    for (std::size_t i = 1; i <= d; ++i)
        slopes.push_back({-coeffs[i], tau - coeffs[i]});
    return convex::GridFunction(std::move(axes), std::move(values), std::move(slopes));
}

} // namespace

json divisor_record(const divisor::ToricArithDivisor& D)
{
    json p;
    if (const auto* t = D.single_term()) {
        p = {{"kind", "canonical"}, {"a", t->a}};
    } else if (const auto* cp = std::get_if<divisor::CanonicalPotential>(&D.potential())) {
        json terms = json::array();
        for (const auto& t : cp->terms)
            terms.push_back({{"weight", t.weight}, {"a", t.a}});
        p = {{"kind", "canonical-sum"}, {"terms", terms}};
    } else {
        p = sampled_potential(std::get<divisor::SampledPotential>(D.potential()).u);
    }
    return {{"d", D.d()}, {"coeffs", D.coeffs()}, {"potential", p}, {"twist", D.twist()}};
}

divisor::ToricArithDivisor parse_divisor(const json& record)
{
    const auto d = field<std::size_t>(record, "d");
    if (d < 1 || d > 2)
        fail(ErrorKind::input, "unsupported dimension d = " + std::to_string(d) + " (supported: 1, 2)");
    std::vector<double> coeffs(d + 1, 0.0);
    coeffs[0] = 1.0;
    if (record.contains("coeffs"))
        coeffs = field<std::vector<double>>(record, "coeffs");
    const double twist = record.contains("twist") ? field<double>(record, "twist") : 0.0;
    const json p = field<json>(record, "potential");
    const auto kind = field<std::string>(p, "kind");
    if (kind == "canonical")
        return divisor::make_divisor(d, coeffs, divisor::CanonicalFamily{field<std::vector<double>>(p, "a")}, twist);
    if (kind == "canonical-sum") {
        divisor::CanonicalPotential cp;
        for (const auto& t : field<json>(p, "terms"))
            cp.terms.push_back({field<double>(t, "weight"), field<std::vector<double>>(t, "a")});
        return divisor::make_divisor(d, coeffs, cp, twist);
    }
    if (kind == "sampled") {
        if (coeffs.size() != d + 1)
            fail(ErrorKind::input, "expected " + std::to_string(d + 1) + " hyperplane coefficients");
        return divisor::make_divisor(d, coeffs, convex::GridConvexFunction(grid_from(p, d, coeffs)), twist);
    }
    fail(ErrorKind::input, "unknown potential kind '" + kind + "'");
}

json surface_record(const zariski::RotInvariantDivisor& D)
{
    json vert = json::object();
    for (const auto& [p, g] : D.vertical)
        vert[std::to_string(p)] = g;
    return {{"d", 1}, {"coeffs", {D.e0, D.e1}}, {"potential", sampled_potential(D.h)}, {"twist", 0.0},
            {"vertical", vert}};
}

zariski::RotInvariantDivisor parse_surface(const json& record)
{
    if (field<std::size_t>(record, "d") != 1)
        fail(ErrorKind::input, "surface records have d = 1");
    const auto coeffs = field<std::vector<double>>(record, "coeffs");
    if (coeffs.size() != 2)
        fail(ErrorKind::input, "surface records carry two coefficients");
    if (record.contains("twist") && field<double>(record, "twist") != 0.0)
        fail(ErrorKind::input, "surface records fold the twist into the potential");
    zariski::RotInvariantDivisor D;
    D.e0 = coeffs[0];
    D.e1 = coeffs[1];
    D.h = convex::GridConvexFunction(grid_from(field<json>(record, "potential"), 1, coeffs), 1e-7);
    if (record.contains("vertical"))
        for (const auto& [key, value] : record.at("vertical").items()) {
            const auto p = static_cast<std::size_t>(std::stoul(key));
            if (!divisor::is_prime(p))
                fail(ErrorKind::input, "vertical fiber over non-prime " + key);
            D.vertical[p] = value.get<double>();
        }
    return D;
}

divisor::BaseCondition parse_condition(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');)
        parts.push_back(item);
    if (!parts.empty() && parts.front() == "center")
        parts.erase(parts.begin());
    if (parts.size() != 3)
        fail(ErrorKind::input, "condition '" + text + "' is not of the form kind:index:value");
    std::size_t index = 0;
    double mu = 0.0;
    try {
        std::size_t used = 0;
        const long long i = std::stoll(parts[1], &used);
        if (used != parts[1].size() || i < 0)
            throw std::invalid_argument("index");
        index = static_cast<std::size_t>(i);
        mu = std::stod(parts[2], &used);
        if (used != parts[2].size())
            throw std::invalid_argument("value");
    } catch (const std::exception&) {
        fail(ErrorKind::input, "condition '" + text + "' has a malformed index or value");
    }
    using K = divisor::BaseCondition::Kind;
    K kind;
    if (parts[0] == "hyperplane")
        kind = K::hyperplane;
    else if (parts[0] == "point")
        kind = K::fixed_point;
    else if (parts[0] == "fiber")
        kind = K::vertical;
    else
        fail(ErrorKind::input, "unknown center kind '" + parts[0] + "' (hyperplane, point, fiber)");
    return {kind, index, mu};
}

std::string condition_text(const divisor::BaseCondition& xi)
{
    std::ostringstream out;
    out.precision(17);
    out << xi.str() << ":" << xi.mu;
    return out.str();
}

double round12(double v)
{
    if (!std::isfinite(v) || v == 0.0)
        return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return std::strtod(buf, nullptr);
}

json rounded(const json& j)
{
    if (j.is_number_float())
        return round12(j.get<double>());
    if (j.is_array() || j.is_object()) {
        json out = j;
        for (auto it = out.begin(); it != out.end(); ++it)
            *it = rounded(*it);
        return out;
    }
    return j;
}

} // namespace arakelov::io
