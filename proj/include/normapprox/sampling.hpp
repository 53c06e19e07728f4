#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normapprox/norms.hpp"
#include "normapprox/params.hpp"
#include "normapprox/vector.hpp"

namespace normapprox {

inline constexpr std::uint64_t kDefaultSeed = 20100722;

/// Source of uniform points on the unit sphere S^{n-1}.
///
/// Point i is produced by drawing n standard Gaussians from stream block
/// i / rng::kBlockLength and dividing by their Euclidean norm (Muller's
/// method). The sequence depends only on (n, seed); `batch_size` bounds how
/// many points are materialized at once and `threads` how many workers share
/// the blocks.
struct SamplerConfig {
    int n = 2;
    std::uint64_t seed = kDefaultSeed;
    std::size_t batch_size = 4096;
    unsigned threads = 1;
};

/// An approximation to D_2 evaluated on sample points: either a family's
/// weight profile or the exact Euclidean norm itself.
class Approximant {
public:
    explicit Approximant(const NormParams& params);
    Approximant(WeightProfile profile, std::string label);
    static Approximant exact_euclidean(int n);

    int dimension() const noexcept { return n_; }
    const std::string& label() const noexcept { return label_; }
    bool is_exact() const noexcept { return !profile_.has_value(); }
    std::optional<NormFamily> family() const noexcept;
    const std::optional<NormParams>& params() const noexcept { return params_; }
    const std::optional<WeightProfile>& profile() const noexcept { return profile_; }

    /// `scratch` must hold at least dimension() values.
    double evaluate(std::span<const double> x, std::span<double> scratch) const;
    double operator()(const VectorN& x) const;

private:
    Approximant(int n, std::string label) : n_(n), label_(std::move(label)) {}

    int n_ = 0;
    std::string label_;
    std::optional<NormParams> params_;
    std::optional<WeightProfile> profile_;
};

struct EmpiricalErrors {
    double are = 0.0;    ///< mean |D(x) - 1| over the sample
    double mre_e = 0.0;  ///< max |D(x) - 1| over the sample
    std::uint64_t samples = 0;
};

struct ErrorReport {
    std::string label;
    std::optional<NormFamily> family;
    int n = 0;
    double are = 0.0;
    double mre_e = 0.0;
    std::optional<double> mre_t;
    std::uint64_t samples_used = 0;
    bool converged = false;
    double convergence_tol = 0.0;
    std::uint64_t seed = 0;
};

/// Analytic maximum relative error of a family; empty for SeolCheunAB,
/// which has no closed form.
std::optional<double> mre_theoretical(const NormParams& params);

std::vector<VectorN> sample_sphere(const SamplerConfig& cfg, std::size_t count);

EmpiricalErrors empirical_errors(const Approximant& approx, const SamplerConfig& cfg, std::size_t count);

/// Evaluates every approximant on the same first `count` points.
std::vector<EmpiricalErrors> empirical_errors(std::span<const Approximant> approx, const SamplerConfig& cfg,
                                              std::size_t count);

/// Schedule 2^first, 2^(first+1), ..., 2^last.
std::vector<std::size_t> doubling_schedule(int first_exponent, int last_exponent);

/// Default desk-scale schedule 2^16 .. 2^24.
std::vector<std::size_t> default_schedule();
inline constexpr double kDefaultTolerance = 1e-4;

/// Iterative error estimation over a nested, growing sample.
///
/// Step k extends the sample from schedule[k-1] to schedule[k] points. The
/// estimate has converged once both
///   |ARE_k - ARE_{k-1}| <= tol  and  |max over the new points - MRE_e_{k-1}| <= tol.
ErrorReport converged_errors(const Approximant& approx, const SamplerConfig& cfg,
                             std::span<const std::size_t> schedule, double tol);

/// Same, sharing one sample across all approximants; each stops independently.
std::vector<ErrorReport> converged_errors(std::span<const Approximant> approx, const SamplerConfig& cfg,
                                          std::span<const std::size_t> schedule, double tol);

enum class FixedSampleMode {
    Normalized,   ///< points on the sphere, error against 1
    RawGaussian,  ///< unnormalized Gaussian vectors, error against their D_2
};

/// One fixed-size evaluation without a convergence loop.
EmpiricalErrors fixed_sample_mre(const Approximant& approx, const SamplerConfig& cfg,
                                 std::size_t count = 100000, FixedSampleMode mode = FixedSampleMode::Normalized);

/// |D(x) - D_2(x)| / D_2(x) for a nonzero x.
double relative_error(const Approximant& approx, const VectorN& x);

}  // namespace normapprox
