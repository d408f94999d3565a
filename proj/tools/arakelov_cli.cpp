#include "arakelov/convex/concave.hpp"
#include "arakelov/divisor/divisor.hpp"
#include "arakelov/divisor/prop_suite.hpp"
#include "arakelov/error.hpp"
#include "arakelov/io/record.hpp"
#include "arakelov/okounkov/okounkov.hpp"
#include "arakelov/oracle/oracle.hpp"
#include "arakelov/zariski/zariski.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace arakelov;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string command;
    std::string divisor_path;
    std::vector<std::string> conditions;
    int grid = 0;
    std::optional<double> tol;
    std::uint64_t seed = 20240917;
    std::string out = ".";
    int n = 0;
    int m_max = 3;
    double lambda_min = 0.0;
    double lambda_max = 1.0;
    int lambda_count = 50;
    int count = 10;
};

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::infeasible:
    case ErrorKind::bigness_required:
    case ErrorKind::unbounded: return 3;
    case ErrorKind::tolerance:
    case ErrorKind::consistency: return 4;
    default: return 2;
    }
}

class Output {
public:
    explicit Output(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

    std::ofstream table(const std::string& name, const std::string& header)
    {
        std::ofstream f(dir_ / name);
        f.precision(12);
        f << header << '\n';
        return f;
    }

    void write_json(const std::string& name, const json& j)
    {
        std::ofstream f(dir_ / name);
        f << j.dump(2) << '\n';
    }

private:
    fs::path dir_;
};

divisor::ToricArithDivisor load_divisor(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        fail(ErrorKind::input, "cannot read divisor file '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        fail(ErrorKind::input, "divisor file '" + path + "' is not valid JSON: " + e.what());
    }
    return io::parse_divisor(j);
}

void write_transform(Output& out, const divisor::ToricArithDivisor& D, const divisor::ConcaveTransform& G)
{
    const auto body = D.body();
    if (D.d() == 1) {
        auto f = out.table("G.tsv", "x\tG");
        const double lo = body.lower(0), hi = body.upper(0);
        for (int k = 0; k <= 400; ++k) {
            const double x = lo + (hi - lo) * k / 400.0;
            f << x << '\t' << G({x}) << '\n';
        }
        return;
    }
    auto f = out.table("G.tsv", "x1\tx2\tG");
    const double l0 = body.lower(0), h0 = body.upper(0), l1 = body.lower(1), h1 = body.upper(1);
    for (int i = 0; i <= 40; ++i)
        for (int j = 0; j <= 40; ++j) {
            const convex::Point x{l0 + (h0 - l0) * i / 40.0, l1 + (h1 - l1) * j / 40.0};
            const double g = G(x);
            if (std::isfinite(g))
                f << x[0] << '\t' << x[1] << '\t' << g << '\n';
        }
}

void write_vertices(Output& out, const std::string& name, const convex::Polytope& P)
{
    auto f = out.table(name, P.dimension() == 1 ? "x" : "x1\tx2");
    for (const auto& v : P.vertices()) {
        for (std::size_t i = 0; i < v.size(); ++i)
            f << (i ? "\t" : "") << v[i];
        f << '\n';
    }
}

json vertices_json(const convex::Polytope& P)
{
    json a = json::array();
    for (const auto& v : P.vertices())
        a.push_back(v);
    return a;
}

std::vector<divisor::BaseCondition> conditions_of(const Options& o, std::size_t d)
{
    std::vector<divisor::BaseCondition> out;
    for (const auto& text : o.conditions) {
        out.push_back(io::parse_condition(text));
        out.back().validate(d);
    }
    return out;
}

json certificate_json(const zariski::NefCertificate& c)
{
    json heights = json::array();
    for (const auto& h : c.heights)
        heights.push_back({{"point", h.point}, {"degree", h.degree}});
    return {{"convex", c.convex},         {"slopes_in_range", c.slopes_in_range}, {"barrier", c.barrier},
            {"heights", heights},         {"heights_nonnegative", c.heights_nonnegative},
            {"label", c.label},           {"certified", c.certified()}};
}

divisor::ToricArithDivisor random_partner(std::size_t d, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> a(0.05, 2.5), c(0.0, 2.0);
    while (true) {
        std::vector<double> coeffs(d + 1), par(d + 1);
        for (auto& v : coeffs)
            v = c(rng);
        coeffs[0] += 0.2;
        for (auto& v : par)
            v = a(rng);
        auto E = divisor::make_divisor(d, coeffs, divisor::CanonicalFamily{par});
        if (E.is_big())
            return E;
    }
}

int run(const Options& o)
{
    const auto D = load_divisor(o.divisor_path);
    const std::size_t d = D.d();
    const auto conds = conditions_of(o, d);
    Output out(o.out);

    divisor::VolumeOptions vopts;
    if (o.grid > 0)
        vopts.transform.resolution_2d = static_cast<std::size_t>(o.grid);

    json res;
    json partners = json::array();
    res["command"] = o.command;
    res["method"] = divisor::method_tag(D);
    // closed forms in d = 1 use no grid
    if (d == 2)
        res["grid_resolution"] = vopts.transform.resolution_2d;
    else if (D.is_sampled())
        res["grid_resolution"] = std::get<divisor::SampledPotential>(D.potential()).u.axes()[0].count;
    else
        res["grid_resolution"] = nullptr;
    res["tolerances"] = {{"quadrature", vopts.quadrature.tolerance}, {"geometric", convex::geometric_tolerance}};
    res["seed"] = o.seed;
    int status = 0;

    if (o.command == "vol" || o.command == "vol-base") {
        const auto G = divisor::concave_transform(D, vopts.transform);
        res["method"] = divisor::method_tag(D) + "+quadrature";
        const double vol = divisor::vol_hat(D, vopts);
        if (o.command == "vol") {
            res["result"] = {{"vol", vol}};
        } else {
            json texts = json::array();
            for (const auto& xi : conds)
                texts.push_back(io::condition_text(xi));
            res["result"] = {{"vol_base", divisor::vol_hat_base(D, conds, vopts)}, {"vol", vol}, {"conditions", texts}};
            write_vertices(out, "region.tsv", D.body().intersect(divisor::base_constraints(D, conds)));
        }
        write_transform(out, D, G);
    } else if (o.command == "body") {
        const auto hyper = D.hyperplanes();
        std::vector<okounkov::MonomialSeries> series;
        json dims = json::array();
        for (int m = 1; m <= o.m_max; ++m) {
            series.push_back(okounkov::MonomialSeries::full(hyper, m));
            dims.push_back(series.back().support.size());
        }
        const auto flag = okounkov::ValuationFlag::origin(d);
        const auto body = okounkov::okounkov_body(okounkov::semigroup_points(series, flag), o.m_max);
        res["method"] = "closed-form";
        res["result"] = {{"m_max", o.m_max},
                         {"vertices", vertices_json(body)},
                         {"volume", body.volume()},
                         {"dimensions", dims},
                         {"divisor_polytope", vertices_json(D.body())}};
        write_vertices(out, "body.tsv", body);
    } else if (o.command == "mu") {
        if (conds.empty())
            fail(ErrorKind::input, "mu needs at least one --mu center");
        json rows = json::array();
        for (const auto& xi : conds)
            rows.push_back({{"center", xi.str()}, {"mu", divisor::mu_R(D, xi)}});
        res["result"] = {{"mu", rows}};
    } else if (o.command == "mu-profile") {
        if (conds.size() != 1)
            fail(ErrorKind::input, "mu-profile needs exactly one --mu center");
        if (o.lambda_count < 2 || !(o.lambda_max > o.lambda_min))
            fail(ErrorKind::input, "twist grid needs at least two points and lambda-max > lambda-min");
        std::vector<double> grid;
        for (int k = 0; k < o.lambda_count; ++k)
            grid.push_back(o.lambda_min + (o.lambda_max - o.lambda_min) * k / (o.lambda_count - 1));
        const auto prof = divisor::mu_monotone_continuity_profile(D, conds.front(), grid);
        auto f = out.table("profile.tsv", "lambda\tmu");
        json pts = json::array();
        for (const auto& p : prof.points) {
            f << p.lambda << '\t' << p.mu << '\n';
            pts.push_back({p.lambda, p.mu});
        }
        res["result"] = {{"center", conds.front().str()},
                         {"points", pts},
                         {"nonincreasing", prof.nonincreasing},
                         {"lipschitz", prof.lipschitz},
                         {"continuity_bound_holds", prof.continuity_bound_holds}};
    } else if (o.command == "e-range") {
        const int n = o.n > 0 ? o.n : 10;
        const auto s = divisor::filtration_summary(D, n);
        auto f = out.table("filtration.tsv", d == 1 ? "m\tt" : "m1\tm2\tt");
        for (const auto& [m, t] : s.t) {
            for (int e : m.e)
                f << e << '\t';
            f << t << '\n';
        }
        res["result"] = {{"n", n}, {"e_min", s.e_min}, {"e_max", s.e_max}, {"C", s.C}};
    } else if (o.command == "zariski") {
        zariski::SolverOptions sopts;
        if (o.grid > 0)
            sopts.grid.count = static_cast<std::size_t>(o.grid);
        const double tol = o.tol.value_or(1e-3);
        const auto dec = zariski::greatest_nef_minorant(D, sopts);
        const auto report = zariski::verify_zariski(D, dec, tol);
        const auto mult = zariski::check_multiplicity_identity(D, dec, tol);
        json checks = json::array();
        for (const auto& r : mult.rows)
            checks.push_back({{"center", r.center}, {"mu", r.mu}, {"coefficient", r.coefficient}, {"match", r.match}});
        json rep = io::rounded(json{{"vol_input", report.vol_divisor},
                                    {"vol_positive", report.vol_positive},
                                    {"nef_certificate", certificate_json(zariski::certify_nef(dec.positive))},
                                    {"mu_checks", checks},
                                    {"negative_effective", report.negative_effective},
                                    {"volume_equal", report.volume_equal},
                                    {"vertical_free", report.vertical_free},
                                    {"pass", report.pass() && mult.pass()},
                                    {"provenance",
                                     {{"delta0", dec.provenance.delta0},
                                      {"delta1", dec.provenance.delta1},
                                      {"evaluations", dec.provenance.evaluations},
                                      {"nef_shortcut", dec.provenance.nef_shortcut}}}});
        rep["positive"] = io::surface_record(dec.positive);
        rep["negative"] = io::surface_record(dec.negative);
        out.write_json("decomposition.json", rep);
        auto f = out.table("zariski.tsv", "s\tg\th_positive\th_negative");
        const auto& ax = dec.positive.h.axes()[0];
        for (std::size_t j = 0; j < ax.count; ++j)
            f << ax[j] << '\t' << dec.positive.h.at(j) + dec.negative.h.at(j) << '\t' << dec.positive.h.at(j) << '\t'
              << dec.negative.h.at(j) << '\n';
        res["method"] = "grid";
        res["grid_resolution"] = sopts.grid.count;
        res["tolerances"]["volume"] = tol;
        res["result"] = {{"pass", report.pass() && mult.pass()},
                         {"vol_input", report.vol_divisor},
                         {"vol_positive", report.vol_positive},
                         {"delta0", dec.provenance.delta0},
                         {"delta1", dec.provenance.delta1}};
        if (!(report.pass() && mult.pass()))
            status = 4;
    } else if (o.command == "oracle-check") {
        const int n = o.n > 0 ? o.n : (d == 1 ? 400 : 60);
        const double tol = o.tol.value_or(d == 1 ? 0.05 : 0.15);
        const double L = oracle::log_count(D, n, conds);
        double f = 1.0;
        for (std::size_t k = 2; k <= d + 1; ++k)
            f *= static_cast<double>(k);
        const double normalized = f * L / std::pow(static_cast<double>(n), static_cast<double>(d + 1));
        const double vol = conds.empty() ? divisor::vol_hat(D, vopts) : divisor::vol_hat_base(D, conds, vopts);
        res["method"] = "oracle";
        res["tolerances"]["oracle"] = tol;
        res["result"] = {{"n", n},
                         {"log_count", L},
                         {"normalized_count", normalized},
                         {"vol", vol},
                         {"gap", std::abs(normalized - vol)},
                         {"within", std::abs(normalized - vol) <= tol}};
        if (std::abs(normalized - vol) > tol)
            status = 4;
    } else if (o.command == "prop-suite") {
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> scalar(0.5, 3.0);
        divisor::PropSuiteOptions popts;
        if (o.tol)
            popts.tolerance = *o.tol;
        json runs = json::array();
        bool all = true;
        partners = json::array();
        for (int k = 0; k < o.count; ++k) {
            const auto E = random_partner(d, rng);
            std::vector<double> phi(d);
            for (auto& v : phi)
                v = static_cast<double>(static_cast<int>(rng() % 5) - 2);
            std::vector<divisor::BaseCondition> centers;
            for (std::size_t i = 0; i <= d; ++i) {
                centers.push_back(divisor::BaseCondition::hyperplane(i));
                centers.push_back(divisor::BaseCondition::fixed_point(i));
            }
            centers.push_back(divisor::BaseCondition::vertical(2));
            const auto xi = centers[rng() % centers.size()];
            const auto rep = divisor::proposition_2_1_suite(D, E, phi, scalar(rng), xi, popts);
            json items = json::array();
            for (const auto& c : rep.checks)
                items.push_back({{"item", c.item}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"applicable", c.applicable},
                                 {"holds", c.holds}, {"note", c.note}});
            all = all && rep.all_hold();
            partners.push_back(io::divisor_record(E));
            runs.push_back({{"center", xi.str()}, {"checks", items}});
        }
        res["tolerances"]["suite"] = popts.tolerance;
        res["result"] = {{"all_hold", all}, {"runs", runs}};
        if (!all)
            status = 4;
    } else {
        fail(ErrorKind::input, "unknown command '" + o.command + "'");
    }

    json final = io::rounded(res);
    final["divisor"] = io::divisor_record(D);
    // records stay at full precision so that they re-parse to the same divisor
    for (std::size_t k = 0; k < partners.size(); ++k)
        final["result"]["runs"][k]["partner"] = partners[k];
    out.write_json("results.json", final);
    std::cout << final["result"].dump() << '\n';
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Arithmetic volumes, asymptotic multiplicities and Zariski decompositions for torus-invariant "
                 "arithmetic divisors on P^1 and P^2 over Z"};
    app.add_option("--command", o.command, "vol | vol-base | body | mu | mu-profile | e-range | zariski | "
                                           "oracle-check | prop-suite")
        ->required()
        ->check(CLI::IsMember({"vol", "vol-base", "body", "mu", "mu-profile", "e-range", "zariski", "oracle-check",
                               "prop-suite"}));
    app.add_option("--divisor", o.divisor_path, "divisor record (JSON)")->required();
    app.add_option("--mu", o.conditions, "[center:]kind:index-or-prime:value, kind = hyperplane | point | fiber");
    app.add_option("--grid", o.grid, "grid resolution (points per axis)");
    app.add_option("--tol", o.tol, "tolerance override");
    app.add_option("--seed", o.seed, "seed for randomized suites")->capture_default_str();
    app.add_option("--out", o.out, "output directory")->capture_default_str();
    app.add_option("--n", o.n, "section level for e-range and oracle-check");
    app.add_option("--m-max", o.m_max, "largest level for body")->capture_default_str();
    app.add_option("--lambda-min", o.lambda_min)->capture_default_str();
    app.add_option("--lambda-max", o.lambda_max)->capture_default_str();
    app.add_option("--lambda-count", o.lambda_count)->capture_default_str();
    app.add_option("--count", o.count, "number of random pairs for prop-suite")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return run(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const json::exception& e) {
        std::cerr << "error: input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
