#include "normapprox/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "normapprox/errors.hpp"
#include "normapprox/parallel.hpp"
#include "normapprox/rng.hpp"
#include "norm_kernels.hpp"

namespace normapprox {

// ---------------------------------------------------------------------------
// Approximant

Approximant::Approximant(const NormParams& params)
    : n_(params.dimension()),
      label_(to_string(params.family())),
      params_(params),
      profile_(weight_profile_of(params))
{
}

Approximant::Approximant(WeightProfile profile, std::string label)
    : n_(static_cast<int>(profile.size())), label_(std::move(label)), profile_(std::move(profile))
{
}

Approximant Approximant::exact_euclidean(int n)
{
    if (n < 1)
        throw DomainError("exact_euclidean: dimension must be positive");
    return Approximant(n, "d2");
}

std::optional<NormFamily> Approximant::family() const noexcept
{
    if (params_)
        return params_->family();
    return std::nullopt;
}

double Approximant::evaluate(std::span<const double> x, std::span<double> scratch) const
{
    detail::NullCounter ops;
    if (!profile_)
        return detail::euclidean(x, ops);
    return detail::weighted(x, *profile_, scratch, ops);
}

double Approximant::operator()(const VectorN& x) const
{
    if (static_cast<int>(x.size()) != n_)
        throw DimensionError("Approximant: dimension mismatch");
    std::vector<double> scratch(x.size());
    return evaluate(x.coords(), scratch);
}

std::optional<double> mre_theoretical(const NormParams& params)
{
    const int n = params.dimension();
    switch (params.family()) {
    case NormFamily::ChaudhuriOriginal: return mre_lambda_profile(n, params.lambda());
    case NormFamily::LambdaOptimal: return mre_lambda_optimal(params.lambda());
    case NormFamily::MuLambda: return mu_lambda_optimal(n).mre;
    case NormFamily::MuLambdaInferior: return mu_lambda_inferior(n).mre;
    case NormFamily::Barni: return barni_optimal(n).mre;
    case NormFamily::SeolCheunAB: return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Point stream

namespace {

constexpr double kMinGaussianNorm = 1e-100;

void validate(const SamplerConfig& cfg)
{
    if (cfg.n < 2)
        throw DomainError("SamplerConfig: n must be at least 2");
    if (cfg.batch_size < 1)
        throw DomainError("SamplerConfig: batch_size must be at least 1");
}

/// Sequential reader over one stream block.
class BlockCursor {
public:
    BlockCursor(const SamplerConfig& cfg, rng::Stream stream, std::uint64_t block)
        : n_(static_cast<std::size_t>(cfg.n)),
          engine_(rng::block_engine(cfg.seed, stream, static_cast<std::uint64_t>(cfg.n), block))
    {
    }

    /// Writes the next raw Gaussian vector into g and returns its Euclidean norm.
    double next_raw(std::span<double> g)
    {
        detail::NullCounter ops;
        for (;;) {
            for (std::size_t i = 0; i < n_; ++i)
                g[i] = gauss_(engine_);
            const double norm = detail::euclidean(std::span<const double>(g.data(), n_), ops);
            if (norm >= kMinGaussianNorm)
                return norm;
        }
    }

    void skip(std::uint64_t count, std::span<double> g)
    {
        for (std::uint64_t k = 0; k < count; ++k)
            next_raw(g);
    }

private:
    std::size_t n_;
    rng::Engine engine_;
    rng::GaussianSource gauss_;
};

struct RangeStats {
    double sum = 0.0;
    double max = 0.0;
};

/// Sum and max of the relative errors of every approximant over points
/// [first, last). Work is split along stream blocks and reduced in block order.
std::vector<RangeStats> evaluate_range(std::span<const Approximant* const> approx, const SamplerConfig& cfg,
                                       std::uint64_t first, std::uint64_t last, FixedSampleMode mode,
                                       rng::Stream stream = rng::Stream::Sphere)
{
    const std::size_t k = approx.size();
    std::vector<RangeStats> total(k);
    if (first >= last || k == 0)
        return total;

    const std::uint64_t first_block = first / rng::kBlockLength;
    const std::uint64_t end_block = (last + rng::kBlockLength - 1) / rng::kBlockLength;
    const std::uint64_t segments = end_block - first_block;
    std::vector<RangeStats> partial(segments * k);
    const auto n = static_cast<std::size_t>(cfg.n);
    const std::size_t batch = std::min<std::size_t>(cfg.batch_size, rng::kBlockLength);

    parallel_for(segments, cfg.threads, [&](std::size_t seg) {
        const std::uint64_t block = first_block + seg;
        const std::uint64_t block_start = block * rng::kBlockLength;
        const std::uint64_t lo = std::max(first, block_start);
        const std::uint64_t hi = std::min(last, block_start + rng::kBlockLength);

        BlockCursor cursor(cfg, stream, block);
        std::vector<double> points(batch * n);
        std::vector<double> norms(batch);
        std::vector<double> scratch(n);
        cursor.skip(lo - block_start, points);
        RangeStats* out = &partial[seg * k];

        for (std::uint64_t at = lo; at < hi;) {
            const auto count = static_cast<std::size_t>(std::min<std::uint64_t>(batch, hi - at));
            for (std::size_t p = 0; p < count; ++p) {
                std::span<double> g(points.data() + p * n, n);
                norms[p] = cursor.next_raw(g);
                if (mode == FixedSampleMode::Normalized) {
                    const double inv = 1.0 / norms[p];
                    for (double& v : g)
                        v *= inv;
                }
            }
            for (std::size_t a = 0; a < k; ++a) {
                double sum = out[a].sum;
                double max = out[a].max;
                for (std::size_t p = 0; p < count; ++p) {
                    std::span<const double> x(points.data() + p * n, n);
                    const double value = approx[a]->evaluate(x, scratch);
                    const double err = mode == FixedSampleMode::Normalized
                                           ? std::fabs(value - 1.0)
                                           : std::fabs(value - norms[p]) / norms[p];
                    sum += err;
                    max = std::max(max, err);
                }
                out[a].sum = sum;
                out[a].max = max;
            }
            at += count;
        }
    });

    for (std::uint64_t seg = 0; seg < segments; ++seg) {
        for (std::size_t a = 0; a < k; ++a) {
            total[a].sum += partial[seg * k + a].sum;
            total[a].max = std::max(total[a].max, partial[seg * k + a].max);
        }
    }
    return total;
}

void check_dimensions(std::span<const Approximant> approx, const SamplerConfig& cfg)
{
    for (const Approximant& a : approx)
        if (a.dimension() != cfg.n)
            throw DimensionError("approximant '" + a.label() + "' has dimension " +
                                 std::to_string(a.dimension()) + " but sampler has " + std::to_string(cfg.n));
}

std::vector<const Approximant*> pointers(std::span<const Approximant> approx)
{
    std::vector<const Approximant*> out;
    out.reserve(approx.size());
    for (const Approximant& a : approx)
        out.push_back(&a);
    return out;
}

}  // namespace

std::vector<VectorN> sample_sphere(const SamplerConfig& cfg, std::size_t count)
{
    validate(cfg);
    if (count < 1)
        throw DomainError("sample_sphere: count must be at least 1");
    const auto n = static_cast<std::size_t>(cfg.n);
    std::vector<VectorN> out;
    out.reserve(count);
    std::vector<double> g(n);
    for (std::uint64_t block = 0; out.size() < count; ++block) {
        BlockCursor cursor(cfg, rng::Stream::Sphere, block);
        for (std::uint64_t i = 0; i < rng::kBlockLength && out.size() < count; ++i) {
            const double norm = cursor.next_raw(g);
            std::vector<double> y(g);
            for (double& v : y)
                v /= norm;
            out.emplace_back(std::move(y));
        }
    }
    return out;
}

std::vector<EmpiricalErrors> empirical_errors(std::span<const Approximant> approx, const SamplerConfig& cfg,
                                              std::size_t count)
{
    validate(cfg);
    check_dimensions(approx, cfg);
    if (count < 1)
        throw DomainError("empirical_errors: count must be at least 1");
    const auto ptrs = pointers(approx);
    const auto stats = evaluate_range(ptrs, cfg, 0, count, FixedSampleMode::Normalized);
    std::vector<EmpiricalErrors> out;
    for (const RangeStats& s : stats)
        out.push_back({s.sum / static_cast<double>(count), s.max, count});
    return out;
}

EmpiricalErrors empirical_errors(const Approximant& approx, const SamplerConfig& cfg, std::size_t count)
{
    return empirical_errors(std::span<const Approximant>(&approx, 1), cfg, count).front();
}

std::vector<std::size_t> doubling_schedule(int first_exponent, int last_exponent)
{
    if (first_exponent < 0 || last_exponent < first_exponent || last_exponent > 62)
        throw DomainError("doubling_schedule: need 0 <= first <= last <= 62");
    std::vector<std::size_t> out;
    for (int e = first_exponent; e <= last_exponent; ++e)
        out.push_back(std::size_t{1} << e);
    return out;
}

std::vector<std::size_t> default_schedule()
{
    return doubling_schedule(16, 24);
}

std::vector<ErrorReport> converged_errors(std::span<const Approximant> approx, const SamplerConfig& cfg,
                                          std::span<const std::size_t> schedule, double tol)
{
    validate(cfg);
    check_dimensions(approx, cfg);
    if (schedule.empty() || schedule.front() < 1)
        throw DomainError("converged_errors: schedule must be nonempty and positive");
    if (!std::is_sorted(schedule.begin(), schedule.end(), std::less_equal<>()))
        throw DomainError("converged_errors: schedule must be strictly increasing");
    if (!(tol > 0.0))
        throw DomainError("converged_errors: tolerance must be positive");

    struct State {
        double sum = 0.0;
        double max = 0.0;
        double are = 0.0;
        bool done = false;
    };
    std::vector<State> state(approx.size());
    std::vector<ErrorReport> reports(approx.size());
    for (std::size_t a = 0; a < approx.size(); ++a) {
        ErrorReport& r = reports[a];
        r.label = approx[a].label();
        r.family = approx[a].family();
        r.n = cfg.n;
        r.convergence_tol = tol;
        r.seed = cfg.seed;
        if (approx[a].params())
            r.mre_t = mre_theoretical(*approx[a].params());
        else if (approx[a].is_exact())
            r.mre_t = 0.0;
    }

    std::uint64_t done_count = 0;
    for (std::size_t step = 0; step < schedule.size() && done_count < approx.size(); ++step) {
        const std::uint64_t lo = step == 0 ? 0 : schedule[step - 1];
        const std::uint64_t hi = schedule[step];
        std::vector<std::size_t> active;
        std::vector<const Approximant*> ptrs;
        for (std::size_t a = 0; a < approx.size(); ++a) {
            if (!state[a].done) {
                active.push_back(a);
                ptrs.push_back(&approx[a]);
            }
        }
        const auto ext = evaluate_range(ptrs, cfg, lo, hi, FixedSampleMode::Normalized);
        for (std::size_t i = 0; i < active.size(); ++i) {
            State& s = state[active[i]];
            ErrorReport& r = reports[active[i]];
            const double previous_are = s.are;
            const double previous_max = s.max;
            s.sum += ext[i].sum;
            s.max = std::max(s.max, ext[i].max);
            s.are = s.sum / static_cast<double>(hi);
            r.are = s.are;
            r.mre_e = s.max;
            r.samples_used = hi;
            if (step > 0 && std::fabs(s.are - previous_are) <= tol &&
                std::fabs(ext[i].max - previous_max) <= tol) {
                s.done = true;
                r.converged = true;
                ++done_count;
            }
        }
    }
    return reports;
}

ErrorReport converged_errors(const Approximant& approx, const SamplerConfig& cfg,
                             std::span<const std::size_t> schedule, double tol)
{
    return converged_errors(std::span<const Approximant>(&approx, 1), cfg, schedule, tol).front();
}

EmpiricalErrors fixed_sample_mre(const Approximant& approx, const SamplerConfig& cfg, std::size_t count,
                                 FixedSampleMode mode)
{
    validate(cfg);
    check_dimensions(std::span<const Approximant>(&approx, 1), cfg);
    if (count < 1)
        throw DomainError("fixed_sample_mre: count must be at least 1");
    const Approximant* ptr = &approx;
    const auto stats = evaluate_range(std::span<const Approximant* const>(&ptr, 1), cfg, 0, count, mode,
                                      rng::Stream::FixedBudget);
    return {stats[0].sum / static_cast<double>(count), stats[0].max, count};
}

double relative_error(const Approximant& approx, const VectorN& x)
{
    const double d2 = norm_p(x, 2.0);
    if (d2 == 0.0)
        throw DomainError("relative_error: undefined at the zero vector");
    return std::fabs(approx(x) - d2) / d2;
}

}  // namespace normapprox
