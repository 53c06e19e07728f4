#include "normapprox/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <optional>
#include <ostream>

#include "normapprox/coverage.hpp"
#include "normapprox/errors.hpp"
#include "normapprox/norms.hpp"
#include "normapprox/params.hpp"
#include "normapprox/report.hpp"
#include "normapprox/sampling.hpp"

namespace normapprox::cli {
namespace {

struct Globals {
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    bool full_precision = false;
};

struct EvalArgs {
    std::string family;
    std::vector<double> coords;
    std::optional<double> p;
    std::optional<double> lambda;
    std::optional<double> mu;
    std::optional<double> a;
    std::optional<double> b;
    std::size_t fit_samples = kDefaultFitSamples;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact Minkowski norms are addressed as d1, d2, dinf or dp (with --p).
std::optional<Exponent> exact_exponent(const EvalArgs& e)
{
    if (e.family == "d1")
        return Exponent(1.0);
    if (e.family == "d2")
        return Exponent(2.0);
    if (e.family == "dinf" || e.family == "dmax")
        return Exponent(kInfinity);
    if (e.family == "dp") {
        if (!e.p)
            throw UsageError("family dp requires --p");
        return Exponent(*e.p);
    }
    return std::nullopt;
}

WeightProfile eval_profile(const EvalArgs& e, int n, const Globals& g)
{
    const auto family = parse_family(e.family);
    if (!family)
        throw UsageError("unknown family '" + e.family + "'");
    const auto un = static_cast<std::size_t>(n);
    switch (*family) {
    case NormFamily::LambdaOptimal:
        if (e.lambda) {
            std::vector<double> w(un, *e.lambda);
            w[0] = 1.0;
            return WeightProfile::norm_inducing(w);
        }
        break;
    case NormFamily::MuLambda:
        if (e.lambda || e.mu) {
            const MuLambda opt = mu_lambda_optimal(n);
            std::vector<double> w(un, e.lambda.value_or(opt.lambda));
            w[0] = e.mu.value_or(opt.mu);
            return WeightProfile::norm_inducing(w);
        }
        break;
    case NormFamily::SeolCheunAB:
        if (e.a || e.b) {
            if (!e.a || !e.b)
                throw UsageError("--a and --b must be given together");
            return weight_profile_of(NormParams::seol_cheun(n, *e.a, *e.b, 0, g.seed));
        }
        return weight_profile_of(fit_seol_cheun(n, e.fit_samples, g.seed, g.threads));
    default:
        break;
    }
    return weight_profile_of(make_params(*family, n, g.seed, e.fit_samples, g.threads));
}

int cmd_eval(const EvalArgs& e, const Globals& g, std::ostream& out)
{
    const VectorN x(e.coords);
    const int n = static_cast<int>(x.size());
    const double exact = norm_p(x, 2.0);
    double approx = 0.0;
    if (const auto p = exact_exponent(e))
        approx = norm_p(x, *p);
    else
        approx = norm_weighted(x, eval_profile(e, n, g));
    const double rel = exact > 0.0 ? std::fabs(approx - exact) / exact : std::fabs(approx - exact);
    report::CsvTable t;
    t.header = {"family", "n", "approx", "exact", "relative_error"};
    t.rows.push_back({e.family, std::to_string(n), report::format_value(approx, g.full_precision),
                      report::format_value(exact, g.full_precision), report::format_value(rel, g.full_precision)});
    report::write_csv(out, t);
    return kExitOk;
}

void check_range(int n_min, int n_max)
{
    if (n_min < 1 || n_max < n_min)
        throw UsageError(fmt::format("invalid dimension range {}..{}", n_min, n_max));
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fast Euclidean norm approximations: evaluation, error tables and coverage bounds",
                 "normapprox"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_flag("--full-precision", g.full_precision, "Print 17 significant digits");

    EvalArgs e;
    auto* eval = app.add_subcommand("eval", "Evaluate one approximation at a vector");
    eval->add_option("--family", e.family, "d1, d2, dinf, dp, chaudhuri, lambda, mulambda, "
                                           "mulambda-inferior, barni, seol-cheun")
        ->required();
    eval->add_option("--p", e.p, "Exponent for family dp");
    eval->add_option("--lambda", e.lambda, "Override lambda");
    eval->add_option("--mu", e.mu, "Override mu");
    eval->add_option("--a", e.a, "Override a for seol-cheun");
    eval->add_option("--b", e.b, "Override b for seol-cheun");
    eval->add_option("--fit-samples", e.fit_samples, "Fit budget for seol-cheun")->capture_default_str();
    eval->add_option("vector", e.coords, "Coordinates")->required();

    int fit_n = 0;
    std::size_t fit_samples = kDefaultFitSamples;
    auto* fit = app.add_subcommand("fit-ab", "Fit the D_{a,b} coefficients");
    fit->add_option("--n", fit_n, "Dimension")->required();
    fit->add_option("--fit-samples", fit_samples, "Gaussian samples")->capture_default_str();

    report::MinimaxTableOptions t3;
    std::string t3_schedule = "2^16..2^24";
    auto* table3 = app.add_subcommand("table3", "ARE / MRE_e / MRE_t of D_lambda, D_{mu,lambda}, D_B");
    table3->add_option("--n-min", t3.n_min)->capture_default_str();
    table3->add_option("--n-max", t3.n_max)->capture_default_str();
    table3->add_option("--schedule", t3_schedule, "Sample sizes, e.g. 2^16..2^24")->capture_default_str();
    table3->add_option("--tol", t3.tol, "Convergence tolerance")->capture_default_str();

    report::SeolCheunTableOptions t4;
    std::string t4_schedule = "2^16..2^28";
    auto* table4 = app.add_subcommand("table4", "D_{a,b} under fixed and converged sampling");
    table4->add_option("--n-min", t4.n_min)->capture_default_str();
    table4->add_option("--n-max", t4.n_max)->capture_default_str();
    table4->add_option("--fit-samples", t4.fit_samples)->capture_default_str();
    table4->add_option("--fixed-samples", t4.fixed_samples)->capture_default_str();
    table4->add_option("--schedule", t4_schedule)->capture_default_str();
    table4->add_option("--tol", t4.tol)->capture_default_str();

    int nmax = 100;
    auto* curve = app.add_subcommand("mre-curve", "Analytic MRE versus n");
    curve->add_option("--nmax", nmax)->capture_default_str();

    int cov_n = 0;
    double epsilon = 0.0;
    double budget = 1e5;
    auto* coverage = app.add_subcommand("coverage", "Sampling budget needed for an epsilon-dense sphere sample");
    coverage->add_option("--n", cov_n)->required();
    coverage->add_option("--epsilon", epsilon)->required();
    coverage->add_option("--budget", budget)->capture_default_str();

    int op_n = 8;
    auto* opcounts = app.add_subcommand("opcounts", "Instrumented operation counts");
    opcounts->add_option("--n", op_n)->capture_default_str();

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("normapprox");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& s : argv_store)
        argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& ex) {
        app.exit(ex, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& ex) {
        app.exit(ex, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& ex) {
        app.exit(ex, out, err);
        return kExitUsage;
    }

    if (eval->parsed())
        return cmd_eval(e, g, out);
    if (fit->parsed()) {
        out << report::seol_cheun_fit_json(fit_seol_cheun(fit_n, fit_samples, g.seed, g.threads), g.full_precision)
            << '\n';
        return kExitOk;
    }
    if (table3->parsed()) {
        check_range(t3.n_min, t3.n_max);
        t3.schedule = report::parse_schedule(t3_schedule);
        t3.seed = g.seed;
        t3.threads = g.threads;
        report::write_csv(out, report::minimax_table_csv(report::run_minimax_table(t3), g.full_precision));
        return kExitOk;
    }
    if (table4->parsed()) {
        check_range(t4.n_min, t4.n_max);
        t4.schedule = report::parse_schedule(t4_schedule);
        t4.seed = g.seed;
        t4.threads = g.threads;
        const auto rows = report::run_seol_cheun_table(t4);
        report::write_csv(out, report::seol_cheun_table_csv(rows, t4, g.full_precision));
        return kExitOk;
    }
    if (curve->parsed()) {
        report::write_csv(out, report::mre_curve_csv(report::mre_curve(nmax), g.full_precision));
        return kExitOk;
    }
    if (coverage->parsed()) {
        out << report::coverage_json(cov_n, epsilon, budget, g.full_precision) << '\n';
        return kExitOk;
    }
    if (opcounts->parsed()) {
        const auto rows = report::opcount_rows(op_n, g.seed);
        report::write_csv(out, report::opcount_csv(rows, op_n));
        int status = kExitOk;
        for (const auto& r : rows) {
            if (r.matches)
                continue;
            status = kExitMismatch;
            const auto& m = r.measured;
            const auto& x = r.expected;
            err << fmt::format("mismatch {}: measured ({}, {}, {}, {}, {}) expected ({}, {}, {}, {}, {})\n", r.norm,
                               m.abs_ops, m.comparisons, m.additions, m.multiplications, m.square_roots, x.abs_ops,
                               r.sorted ? fmt::format("{}..{}", op_n - 1, report::sort_comparison_limit(op_n))
                                        : std::to_string(x.comparisons),
                               x.additions, x.multiplications, x.square_roots);
        }
        return status;
    }
    return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        return dispatch(args, out, err);
    } catch (const DomainError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitMismatch;
    }
}

}  // namespace normapprox::cli
