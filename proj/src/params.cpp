#include "normapprox/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "normapprox/errors.hpp"
#include "normapprox/parallel.hpp"
#include "normapprox/quartic.hpp"
#include "normapprox/rng.hpp"
#include "norm_kernels.hpp"

namespace normapprox {

namespace {

void require_dimension(int n, const char* where)
{
    if (n < 2)
        throw DomainError(std::string(where) + ": dimension must be at least 2, got " + std::to_string(n));
}

constexpr double kRootResidualTolerance = 1e-10;

}  // namespace

std::string_view to_string(NormFamily family) noexcept
{
    switch (family) {
    case NormFamily::ChaudhuriOriginal: return "chaudhuri";
    case NormFamily::LambdaOptimal: return "lambda";
    case NormFamily::MuLambda: return "mulambda";
    case NormFamily::MuLambdaInferior: return "mulambda-inferior";
    case NormFamily::Barni: return "barni";
    case NormFamily::SeolCheunAB: return "seol-cheun";
    }
    return "unknown";
}

std::optional<NormFamily> parse_family(std::string_view name) noexcept
{
    for (NormFamily f : kAllFamilies)
        if (to_string(f) == name)
            return f;
    if (name == "ab")
        return NormFamily::SeolCheunAB;
    return std::nullopt;
}

double chaudhuri_lambda(int n)
{
    require_dimension(n, "chaudhuri_lambda");
    return 1.0 / static_cast<double>(n - (n - 2) / 2);
}

std::pair<double, double> chaudhuri_bracket(int n, double lambda)
{
    const double lower = 1.0 - (1.0 - lambda * (n - 1)) / std::sqrt(static_cast<double>(n));
    return {lower, 1.0 - lambda};
}

ChaudhuriMre mre_chaudhuri_original(int n)
{
    const double lambda = chaudhuri_lambda(n);
    ChaudhuriMre out;
    std::tie(out.lower, out.upper) = chaudhuri_bracket(n, lambda);
    const double denom = (n % 2 == 0) ? n + 2.0 : n + 3.0;
    out.overestimation = std::sqrt(1.0 + 4.0 * (n - 1) / (denom * denom)) - 1.0;
    if (out.overestimation >= mre_lambda_profile(n, lambda))
        out.exact_small_n = out.overestimation;
    return out;
}

double mre_lambda_profile(int n, double lambda)
{
    require_dimension(n, "mre_lambda_profile");
    // Largest value on the sorted cone at x ~ (1, lambda, ..., lambda); smallest at
    // the vertices (1, ..., 1, 0, ..., 0) / sqrt(k).
    const double over = std::sqrt(1.0 + lambda * lambda * (n - 1)) - 1.0;
    double smallest = 1.0;
    for (int k = 1; k <= n; ++k)
        smallest = std::min(smallest, (1.0 + lambda * (k - 1)) / std::sqrt(static_cast<double>(k)));
    return std::max(over, 1.0 - smallest);
}

std::array<double, 5> lambda_optimal_quartic(int n)
{
    require_dimension(n, "lambda_optimal_quartic");
    // 8 sqrt(l - l^2) = 3 + 4 l - (n+3) l^2, squared once more.
    const double m = n + 3.0;
    return {m * m, -8.0 * m, 80.0 - 6.0 * m, -40.0, 9.0};
}

double lambda_optimal_residual(int n, double lambda)
{
    return 1.0 - 2.0 * std::sqrt(lambda - lambda * lambda) -
           (std::sqrt(1.0 + lambda * lambda * (n - 1)) - 1.0);
}

namespace {

double bisect_lambda(int n)
{
    double lo = 0.0;
    double hi = 0.5;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        if (lambda_optimal_residual(n, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

LambdaRoot lambda_optimal_root(int n)
{
    const auto c = lambda_optimal_quartic(n);
    const QuarticRoots roots = solve_quartic_ferrari(c[0], c[1], c[2], c[3], c[4]);
    if (!roots.ambiguous) {
        // Squaring twice admits spurious roots; keep the smallest one in
        // (0, 1/2) that satisfies the original equation.
        for (double r : roots.real) {
            if (!(r > 0.0 && r < 0.5))
                continue;
            const double residual = lambda_optimal_residual(n, r);
            if (std::fabs(residual) < kRootResidualTolerance)
                return {r, residual, false};
        }
    }
    const double r = bisect_lambda(n);
    const double residual = lambda_optimal_residual(n, r);
    if (!(std::fabs(residual) < kRootResidualTolerance))
        throw NumericalError("solve_lambda_optimal: no admissible root for n = " + std::to_string(n));
    return {r, residual, true};
}

double solve_lambda_optimal(int n)
{
    require_dimension(n, "solve_lambda_optimal");
    return lambda_optimal_root(n).lambda;
}

double mre_lambda_optimal(double lambda_prime)
{
    if (!(lambda_prime > 0.0 && lambda_prime < 0.5))
        throw DomainError("mre_lambda_optimal: lambda' must lie in (0, 1/2)");
    return 1.0 - 2.0 * std::sqrt(lambda_prime - lambda_prime * lambda_prime);
}

MuLambda mu_lambda_optimal(int n)
{
    require_dimension(n, "mu_lambda_optimal");
    const double dn = n;
    const double quarter = std::sqrt(std::sqrt(dn));
    const double lambda = 2.0 / (2.0 * quarter + std::sqrt(2.0 * dn + 2.0 * std::sqrt(dn)));
    return {(std::sqrt(dn) + 1.0) * lambda, lambda, 1.0 - 2.0 * lambda * quarter};
}

MuLambda mu_lambda_inferior(int n)
{
    require_dimension(n, "mu_lambda_inferior");
    const double lambda = 2.0 / (1.0 + std::sqrt(n - 1.0));
    return {0.0, lambda, 1.0 - lambda};
}

BarniSolution barni_optimal(int n)
{
    require_dimension(n, "barni_optimal");
    BarniSolution out;
    out.alpha.resize(static_cast<std::size_t>(n));
    double squares = 0.0;
    for (int i = 1; i <= n; ++i) {
        // sqrt(i) - sqrt(i-1) without cancellation
        const double a = 1.0 / (std::sqrt(static_cast<double>(i)) + std::sqrt(i - 1.0));
        out.alpha[static_cast<std::size_t>(i - 1)] = a;
        squares += a * a;
    }
    out.delta = 2.0 / (1.0 + std::sqrt(squares));
    out.mre = 1.0 - out.delta;
    return out;
}

// ---------------------------------------------------------------------------

NormParams NormParams::chaudhuri_original(int n)
{
    return NormParams(NormFamily::ChaudhuriOriginal, n, Lambda{chaudhuri_lambda(n)});
}

NormParams NormParams::lambda_optimal(int n)
{
    const double l = solve_lambda_optimal(n);
    if (!(l > 0.0 && l < 0.5))
        throw InvalidParameterError("lambda' outside (0, 1/2)");
    return NormParams(NormFamily::LambdaOptimal, n, Lambda{l});
}

NormParams NormParams::mu_lambda(int n)
{
    const MuLambda s = mu_lambda_optimal(n);
    if (!(0.0 < s.lambda && s.lambda < s.mu))
        throw InvalidParameterError("mu-lambda: requires 0 < lambda* < mu*");
    return NormParams(NormFamily::MuLambda, n, MuLambdaValues{s.mu, s.lambda});
}

NormParams NormParams::mu_lambda_inferior(int n)
{
    const MuLambda s = normapprox::mu_lambda_inferior(n);
    if (!(0.0 < s.lambda && s.lambda <= 1.0))
        throw InvalidParameterError("mu-lambda inferior: requires 0 < lambda* <= 1");
    return NormParams(NormFamily::MuLambdaInferior, n, MuLambdaValues{0.0, s.lambda});
}

NormParams NormParams::barni(int n)
{
    BarniSolution s = barni_optimal(n);
    return NormParams(NormFamily::Barni, n, Barni{s.delta, std::move(s.alpha)});
}

NormParams NormParams::seol_cheun(int n, double a, double b, std::size_t fit_samples, std::uint64_t seed)
{
    require_dimension(n, "seol_cheun");
    if (!(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b)))
        throw InvalidParameterError("seol-cheun: coefficients must be positive, got a = " +
                                    std::to_string(a) + ", b = " + std::to_string(b));
    return NormParams(NormFamily::SeolCheunAB, n, AB{a, b, fit_samples, seed});
}

template <class T>
const T& NormParams::get(const char* what) const
{
    if (const T* v = std::get_if<T>(&values_))
        return *v;
    throw InvalidParameterError(std::string(what) + " is not defined for family " +
                                std::string(to_string(family_)));
}

double NormParams::lambda() const
{
    if (const auto* v = std::get_if<Lambda>(&values_))
        return v->lambda;
    return get<MuLambdaValues>("lambda").lambda;
}

double NormParams::mu() const { return get<MuLambdaValues>("mu").mu; }
double NormParams::delta() const { return get<Barni>("delta").delta; }
std::span<const double> NormParams::alpha() const { return get<Barni>("alpha").alpha; }
double NormParams::a() const { return get<AB>("a").a; }
double NormParams::b() const { return get<AB>("b").b; }
std::size_t NormParams::fit_samples() const { return get<AB>("fit_samples").fit_samples; }
std::uint64_t NormParams::seed() const { return get<AB>("seed").seed; }

WeightProfile weight_profile_of(const NormParams& params)
{
    const auto n = static_cast<std::size_t>(params.dimension());
    std::vector<double> w(n);
    switch (params.family()) {
    case NormFamily::ChaudhuriOriginal:
    case NormFamily::LambdaOptimal:
        std::fill(w.begin(), w.end(), params.lambda());
        w[0] = 1.0;
        break;
    case NormFamily::MuLambda:
        std::fill(w.begin(), w.end(), params.lambda());
        w[0] = params.mu();
        break;
    case NormFamily::MuLambdaInferior:
        // With mu - lambda < 0 the max-of-linear form picks the smallest |x_j|,
        // so the last rank carries mu = 0 and the profile is not norm-inducing.
        std::fill(w.begin(), w.end(), params.lambda());
        w[n - 1] = params.mu();
        return WeightProfile::general(std::move(w));
    case NormFamily::Barni: {
        const auto alpha = params.alpha();
        for (std::size_t i = 0; i < n; ++i)
            w[i] = params.delta() * alpha[i];
        return WeightProfile::norm_inducing_sorted(std::move(w));
    }
    case NormFamily::SeolCheunAB:
        std::fill(w.begin(), w.end(), params.b());
        w[0] = params.a() + params.b();
        break;
    }
    return WeightProfile::norm_inducing(std::move(w));
}

// ---------------------------------------------------------------------------

namespace {

struct Moments {
    double inf_inf = 0.0;
    double inf_one = 0.0;
    double one_one = 0.0;
    double two_inf = 0.0;
    double two_one = 0.0;
};

}  // namespace

SeolCheunFit fit_seol_cheun_coefficients(int n, std::size_t sample_count, std::uint64_t seed,
                                         unsigned threads)
{
    require_dimension(n, "fit_seol_cheun");
    if (sample_count < 1000)
        throw DomainError("fit_seol_cheun: at least 1000 samples are required");

    const std::uint64_t blocks = (sample_count + rng::kBlockLength - 1) / rng::kBlockLength;
    std::vector<Moments> partial(blocks);
    parallel_for(blocks, threads, [&](std::size_t block) {
        auto engine = rng::block_engine(seed, rng::Stream::SeolCheunFit, static_cast<std::uint64_t>(n), block);
        rng::GaussianSource gauss;
        const std::uint64_t first = block * rng::kBlockLength;
        const std::uint64_t count = std::min<std::uint64_t>(rng::kBlockLength, sample_count - first);
        std::vector<double> g(static_cast<std::size_t>(n));
        detail::NullCounter ops;
        Moments m;
        for (std::uint64_t k = 0; k < count; ++k) {
            for (double& v : g)
                v = gauss(engine);
            const double dinf = detail::max_abs(std::span<const double>(g), ops);
            const double d1 = detail::sum_abs(std::span<const double>(g), ops);
            const double d2 = detail::euclidean(std::span<const double>(g), ops);
            m.inf_inf += dinf * dinf;
            m.inf_one += dinf * d1;
            m.one_one += d1 * d1;
            m.two_inf += d2 * dinf;
            m.two_one += d2 * d1;
        }
        partial[block] = m;
    });

    Moments total;
    for (const Moments& m : partial) {
        total.inf_inf += m.inf_inf;
        total.inf_one += m.inf_one;
        total.one_one += m.one_one;
        total.two_inf += m.two_inf;
        total.two_one += m.two_one;
    }
    const double inv = 1.0 / static_cast<double>(sample_count);
    const double e11 = total.inf_inf * inv;
    const double e12 = total.inf_one * inv;
    const double e22 = total.one_one * inv;
    const double r1 = total.two_inf * inv;
    const double r2 = total.two_one * inv;

    const double det = e11 * e22 - e12 * e12;
    if (!(std::fabs(det) >= 1e-12 * (std::fabs(e11 * e22) + e12 * e12)))
        throw NumericalError("fit_seol_cheun: singular normal equations");
    return {(r1 * e22 - e12 * r2) / det, (e11 * r2 - e12 * r1) / det, det};
}

NormParams fit_seol_cheun(int n, std::size_t sample_count, std::uint64_t seed, unsigned threads)
{
    const SeolCheunFit fit = fit_seol_cheun_coefficients(n, sample_count, seed, threads);
    return NormParams::seol_cheun(n, fit.a, fit.b, sample_count, seed);
}

NormParams make_params(NormFamily family, int n, std::uint64_t seed, std::size_t fit_samples, unsigned threads)
{
    switch (family) {
    case NormFamily::ChaudhuriOriginal: return NormParams::chaudhuri_original(n);
    case NormFamily::LambdaOptimal: return NormParams::lambda_optimal(n);
    case NormFamily::MuLambda: return NormParams::mu_lambda(n);
    case NormFamily::MuLambdaInferior: return NormParams::mu_lambda_inferior(n);
    case NormFamily::Barni: return NormParams::barni(n);
    case NormFamily::SeolCheunAB: return fit_seol_cheun(n, fit_samples, seed, threads);
    }
    throw InvalidParameterError("make_params: unknown family");
}

}  // namespace normapprox
