// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "normapprox/cli.hpp"
#include "normapprox/coverage.hpp"
#include "normapprox/params.hpp"
#include "normapprox/report.hpp"
#include "normapprox/sampling.hpp"
#include "reference_values.hpp"
#include "test_util.hpp"

using namespace normapprox;
using namespace normapprox::report;

namespace {

// Collects the first few failure messages of one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        if (ok)
            return;
        ++failures_;
        if (failures_ <= 5)
            messages_.push_back(what);
    }
    bool ok() const { return failures_ == 0; }
    std::string summary() const
    {
        std::string s = fmt::format("{} failure(s)", failures_);
        for (const auto& m : messages_)
            s += "; " + m;
        return s;
    }

private:
    long failures_ = 0;
    std::vector<std::string> messages_;
};

void analytic_mre(Check& c)
{
    for (int n = 2; n <= 10; ++n) {
        const double got[3] = {*mre_theoretical(NormParams::lambda_optimal(n)),
                               *mre_theoretical(NormParams::mu_lambda(n)),
                               *mre_theoretical(NormParams::barni(n))};
        const double want[3] = {reference::at(reference::kLambda, n).mre_t,
                                reference::at(reference::kMuLambda, n).mre_t,
                                reference::at(reference::kBarni, n).mre_t};
        for (int f = 0; f < 3; ++f)
            c.expect(std::fabs(got[f] - want[f]) <= 5e-5,
                     fmt::format("n={} {}: {:.6f} vs {:.4f}", n, to_string(kMinimaxFamilies[f]), got[f], want[f]));
    }
}

void quartic_solver(Check& c)
{
    for (int n = 2; n <= 100; ++n) {
        const double ferrari = lambda_optimal_root(n).lambda;
        const double oracle = testutil::lambda_bisection(n);
        c.expect(std::fabs(ferrari - oracle) <= 1e-10, fmt::format("n={} root {:.15f} vs {:.15f}", n, ferrari, oracle));
        const double residual = lambda_optimal_residual(n, ferrari);
        c.expect(std::fabs(residual) < 1e-10, fmt::format("n={} residual {:.3e}", n, residual));
    }
}

void empirical_table(Check& c)
{
    MinimaxTableOptions opt;
    opt.schedule = doubling_schedule(16, 24);
    opt.tol = 1e-4;
    const auto rows = run_minimax_table(opt);
    const reference::MinimaxEntry* tables[3] = {reference::kLambda.data(), reference::kMuLambda.data(),
                                                reference::kBarni.data()};
    for (const auto& row : rows) {
        for (std::size_t f = 0; f < 3; ++f) {
            const auto& r = row.reports[f];
            const auto& want = tables[f][row.n - 2];
            const auto name = to_string(kMinimaxFamilies[f]);
            c.expect(std::fabs(r.are - want.are) <= 2e-3,
                     fmt::format("n={} {} ARE {:.5f} vs {:.4f}", row.n, name, r.are, want.are));
            c.expect(std::fabs(r.mre_e - want.mre_e) <= 3e-3,
                     fmt::format("n={} {} MRE_e {:.5f} vs {:.4f}", row.n, name, r.mre_e, want.mre_e));
            c.expect(r.mre_t.has_value() && r.mre_e <= *r.mre_t + 1e-6,
                     fmt::format("n={} {} MRE_e {:.7f} above MRE_t", row.n, name, r.mre_e));
        }
    }
}

void seol_cheun_bias(Check& c)
{
    SeolCheunTableOptions opt;
    opt.n_min = 8;
    opt.n_max = 10;
    opt.fit_samples = 1'000'000;
    opt.fixed_samples = 100'000;
    opt.schedule = doubling_schedule(16, 28);
    const auto rows = run_seol_cheun_table(opt);
    for (const auto& row : rows) {
        const auto& want = reference::at(reference::kSeolCheun, row.n);
        const double conv = row.converged.mre_e;
        c.expect(conv - want.fixed_mre_e >= 0.02,
                 fmt::format("n={} converged {:.4f} not 0.02 above {:.4f}", row.n, conv, want.fixed_mre_e));
        c.expect(std::fabs(conv - want.converged_mre_e) <= 0.01,
                 fmt::format("n={} converged {:.4f} vs {:.4f}", row.n, conv, want.converged_mre_e));
        c.expect(std::fabs(row.fixed.are - want.are) <= 5e-4,
                 fmt::format("n={} fixed ARE {:.5f} vs {:.4f}", row.n, row.fixed.are, want.are));
        c.expect(std::fabs(row.converged.are - want.are) <= 5e-4,
                 fmt::format("n={} converged ARE {:.5f} vs {:.4f}", row.n, row.converged.are, want.are));
        if (row.n == 10)
            c.expect(conv - row.fixed.mre_e >= 0.03,
                     fmt::format("n=10 fixed {:.4f} not 0.03 below {:.4f}", row.fixed.mre_e, conv));
    }
}

void bounds_and_axioms(Check& c)
{
    std::mt19937_64 gen(kDefaultSeed);
    std::uniform_real_distribution<double> scale(-10.0, 10.0);
    for (int n = 2; n <= 16; ++n) {
        const double rn = std::sqrt(static_cast<double>(n));
        const WeightProfile profiles[3] = {weight_profile_of(NormParams::lambda_optimal(n)),
                                           weight_profile_of(NormParams::mu_lambda(n)),
                                           weight_profile_of(NormParams::barni(n))};
        std::vector<double> sum(static_cast<std::size_t>(n)), scaled(sum.size());
        for (int i = 0; i < 100'000; ++i) {
            const auto x = testutil::gaussian_coords(gen, n);
            const auto y = testutil::gaussian_coords(gen, n);
            const double d1 = norm_p(x, 1.0), d2 = norm_p(x, 2.0), dinf = norm_p(x, kInfinity);
            c.expect(testutil::leq_ulps(d2, d1) && testutil::leq_ulps(d1, rn * d2) &&
                         testutil::leq_ulps(d2 / rn, dinf) && testutil::leq_ulps(dinf, d2),
                     fmt::format("n={} sandwich d1={} d2={} dinf={}", n, d1, d2, dinf));

            const double k = scale(gen);
            for (std::size_t j = 0; j < sum.size(); ++j) {
                sum[j] = x[j] + y[j];
                scaled[j] = k * x[j];
            }
            for (const auto& w : profiles) {
                const double nx = norm_weighted(x, w), ny = norm_weighted(y, w);
                c.expect(nx > 0.0, fmt::format("n={} positivity", n));
                c.expect(testutil::leq_ulps(norm_weighted(sum, w), nx + ny, 8.0 * n),
                         fmt::format("n={} triangle inequality", n));
                c.expect(testutil::close_ulps(norm_weighted(scaled, w), std::fabs(k) * nx, 8.0 * n),
                         fmt::format("n={} homogeneity", n));
            }
            for (double p : {1.0, 2.0, 3.0}) {
                const double nx = norm_p(x, p), ny = norm_p(y, p);
                c.expect(testutil::leq_ulps(norm_p(sum, p), nx + ny, 8.0 * n),
                         fmt::format("n={} p={} triangle inequality", n, p));
                c.expect(testutil::close_ulps(norm_p(scaled, p), std::fabs(k) * nx, 8.0 * n),
                         fmt::format("n={} p={} homogeneity", n, p));
            }
        }
    }
}

void opcounts(Check& c)
{
    for (int n : {2, 4, 8, 16, 64}) {
        std::ostringstream out, err;
        const int code = cli::run({"opcounts", "--n", std::to_string(n)}, out, err);
        c.expect(code == cli::kExitOk, fmt::format("n={} exit {}: {}", n, code, err.str()));
    }
}

void coupon(Check& c)
{
    std::uint64_t seed = kDefaultSeed;
    for (std::uint64_t cells : {10u, 100u, 1000u}) {
        const CouponStats stats = coupon_simulate(cells, 100'000, seed++);
        const double expected = coupon_expectation(cells);
        c.expect(std::fabs(stats.mean_draws - expected) <= 0.02 * expected,
                 fmt::format("c={} mean {:.2f} vs {:.2f}", cells, stats.mean_draws, expected));
        const double cd = static_cast<double>(cells);
        for (double s : {1.0, 2.0, 3.0}) {
            const double frac = stats.exceedance(cd * std::log(cd) + s * cd);
            c.expect(frac < std::exp(-s), fmt::format("c={} s={} exceedance {:.4f}", cells, s, frac));
        }
    }
}

void coverage(Check& c)
{
    const double exact = patch_count(3, 0.1).exact;
    c.expect(exact == 400.0, fmt::format("patch_count(3, 0.1) = {:.17g}", exact));
    for (double cells : {10.0, 1000.0, 1e6}) {
        const TailBound t = tail_bound(cells, 3.0);
        c.expect(std::fabs(t.union_bound - std::exp(-3.0)) <= 1e-12, fmt::format("c={} union bound", cells));
        c.expect(std::fabs(t.limit - (1.0 - std::exp(-std::exp(-3.0)))) <= 1e-12, fmt::format("c={} limit", cells));
    }
}

void curve_ordering(Check& c)
{
    const auto rows = mre_curve(100);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        c.expect(r.barni < r.mu_lambda && r.mu_lambda <= r.lambda, fmt::format("n={} ordering", r.n));
        if (i > 0) {
            const auto& p = rows[i - 1];
            c.expect(r.lambda > p.lambda && r.mu_lambda > p.mu_lambda && r.barni > p.barni,
                     fmt::format("n={} not increasing", r.n));
        }
    }
    c.expect(rows.size() == 99 && rows.front().n == 2 && rows.back().n == 100, "n range");
}

}  // namespace

int main()
{
    const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
        {"analytic MRE reproduction", analytic_mre},
        {"quartic solver", quartic_solver},
        {"empirical error reproduction", empirical_table},
        {"D_ab bias demonstration", seol_cheun_bias},
        {"sandwich bounds and norm axioms", bounds_and_axioms},
        {"operation counts", opcounts},
        {"coupon collector validation", coupon},
        {"coverage calculators", coverage},
        {"MRE curve ordering", curve_ordering},
    };
    int failed = 0;
    int index = 1;
    for (const auto& [name, run] : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(check);
        } catch (const std::exception& e) {
            check.expect(false, fmt::format("exception: {}", e.what()));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (check.ok())
            fmt::print("PASS {} {} ({:.1f} s)\n", index, name, secs);
        else {
            fmt::print("FAIL {} {} ({:.1f} s): {}\n", index, name, secs, check.summary());
            ++failed;
        }
        std::fflush(stdout);
        ++index;
    }
    return failed == 0 ? 0 : 1;
}
