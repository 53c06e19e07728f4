#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "normapprox/norms.hpp"

namespace normapprox {

enum class NormFamily {
    ChaudhuriOriginal,  ///< D_lambda with lambda = 1 / (n - floor((n-2)/2))
    LambdaOptimal,      ///< D_lambda with the minimax-optimal lambda'
    MuLambda,           ///< (mu - lambda) D_inf + lambda D_1, optimal (mu*, lambda*)
    MuLambdaInferior,   ///< the mu* = 0 variant
    Barni,              ///< delta * sum alpha_i x_(i)
    SeolCheunAB,        ///< a D_inf + b D_1 fitted by least squares
};

inline constexpr NormFamily kAllFamilies[] = {
    NormFamily::ChaudhuriOriginal, NormFamily::LambdaOptimal, NormFamily::MuLambda,
    NormFamily::MuLambdaInferior,  NormFamily::Barni,         NormFamily::SeolCheunAB,
};

std::string_view to_string(NormFamily family) noexcept;
std::optional<NormFamily> parse_family(std::string_view name) noexcept;

// ---------------------------------------------------------------------------
// Closed forms per dimension n >= 2
// ---------------------------------------------------------------------------

double chaudhuri_lambda(int n);

struct ChaudhuriMre {
    /// Endpoints of 1 - (1 - lambda (n-1)) / sqrt(n) <= eps <= 1 - lambda.
    double lower = 0.0;
    double upper = 0.0;
    /// Even/odd overestimation formula; present only when overestimation is
    /// the dominant error, i.e. when it equals the maximum relative error.
    std::optional<double> exact_small_n;
    /// The even/odd formula value regardless of regime.
    double overestimation = 0.0;
};

ChaudhuriMre mre_chaudhuri_original(int n);

/// Bracket endpoints for an arbitrary lambda.
std::pair<double, double> chaudhuri_bracket(int n, double lambda);

/// The maximum relative error of D_lambda on the unit sphere for any lambda in (0, 1],
/// max(sqrt(1 + lambda^2 (n-1)) - 1, 1 - min_k (1 + lambda (k-1)) / sqrt(k)).
double mre_lambda_profile(int n, double lambda);

/// Coefficients of the quartic obtained by squaring
/// 1 - 2 sqrt(l - l^2) = sqrt(1 + l^2 (n-1)) - 1 twice, highest degree first.
std::array<double, 5> lambda_optimal_quartic(int n);

/// Residual of the unsquared equation at l.
double lambda_optimal_residual(int n, double lambda);

struct LambdaRoot {
    double lambda = 0.0;
    double residual = 0.0;
    bool used_fallback = false;  ///< bisection replaced an ambiguous Ferrari solve
};

LambdaRoot lambda_optimal_root(int n);
double solve_lambda_optimal(int n);
double mre_lambda_optimal(double lambda_prime);

struct MuLambda {
    double mu = 0.0;
    double lambda = 0.0;
    double mre = 0.0;
};

MuLambda mu_lambda_optimal(int n);
MuLambda mu_lambda_inferior(int n);

struct BarniSolution {
    double delta = 0.0;
    std::vector<double> alpha;
    double mre = 0.0;
};

BarniSolution barni_optimal(int n);

// ---------------------------------------------------------------------------
// Parameter sets
// ---------------------------------------------------------------------------

/// Optimal parameters of one approximation family for one dimension.
class NormParams {
public:
    static NormParams chaudhuri_original(int n);
    static NormParams lambda_optimal(int n);
    static NormParams mu_lambda(int n);
    static NormParams mu_lambda_inferior(int n);
    static NormParams barni(int n);
    static NormParams seol_cheun(int n, double a, double b, std::size_t fit_samples,
                                 std::uint64_t seed);

    NormFamily family() const noexcept { return family_; }
    int dimension() const noexcept { return n_; }

    double lambda() const;  ///< lambda, lambda' or lambda* depending on the family
    double mu() const;
    double delta() const;
    std::span<const double> alpha() const;
    double a() const;
    double b() const;
    std::size_t fit_samples() const;
    std::uint64_t seed() const;

private:
    struct Lambda {
        double lambda;
    };
    struct MuLambdaValues {
        double mu, lambda;
    };
    struct Barni {
        double delta;
        std::vector<double> alpha;
    };
    struct AB {
        double a, b;
        std::size_t fit_samples;
        std::uint64_t seed;
    };
    using Values = std::variant<Lambda, MuLambdaValues, Barni, AB>;

    NormParams(NormFamily family, int n, Values values)
        : family_(family), n_(n), values_(std::move(values))
    {
    }

    template <class T>
    const T& get(const char* what) const;

    NormFamily family_;
    int n_;
    Values values_;
};

/// Rank weights realizing the family as a weighted sorted D_1 norm.
WeightProfile weight_profile_of(const NormParams& params);

struct SeolCheunFit {
    double a = 0.0;
    double b = 0.0;
    double determinant = 0.0;
};

/// Least-squares (a, b) for a D_inf + b D_1 ~ D_2 under i.i.d. standard
/// Gaussian coordinates, from `sample_count` seeded draws. The result does not
/// depend on `threads`.
SeolCheunFit fit_seol_cheun_coefficients(int n, std::size_t sample_count, std::uint64_t seed,
                                         unsigned threads = 1);

NormParams fit_seol_cheun(int n, std::size_t sample_count, std::uint64_t seed, unsigned threads = 1);

inline constexpr std::size_t kDefaultFitSamples = 1'000'000;

/// Builds the parameters of any family; SeolCheunAB is fitted with the given budget.
NormParams make_params(NormFamily family, int n, std::uint64_t seed,
                       std::size_t fit_samples = kDefaultFitSamples, unsigned threads = 1);

}  // namespace normapprox
