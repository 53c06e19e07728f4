#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "normapprox/coverage.hpp"
#include "normapprox/norms.hpp"
#include "normapprox/params.hpp"
#include "normapprox/sampling.hpp"

namespace normapprox::report {

/// 6 significant digits, or 17 with full precision; '.' decimal separator.
std::string format_value(double v, bool full_precision);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;
};

void write_csv(std::ostream& out, const CsvTable& table);
std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

/// Parses "2^16..2^24", "65536,131072", "2^20" or mixtures thereof.
std::vector<std::size_t> parse_schedule(std::string_view text);

// ---------------------------------------------------------------------------
// Table of ARE / MRE_e / MRE_t for the three minimax families

inline constexpr NormFamily kMinimaxFamilies[] = {NormFamily::LambdaOptimal, NormFamily::MuLambda,
                                                  NormFamily::Barni};

struct MinimaxTableOptions {
    int n_min = 2;
    int n_max = 10;
    std::vector<std::size_t> schedule = default_schedule();
    double tol = kDefaultTolerance;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
};

struct MinimaxRow {
    int n = 0;
    std::vector<ErrorReport> reports;  ///< in kMinimaxFamilies order
};

std::vector<MinimaxRow> run_minimax_table(const MinimaxTableOptions& options);
CsvTable minimax_table_csv(const std::vector<MinimaxRow>& rows, bool full_precision);

/// Recomputes the analytic MRE_t columns of a parsed minimax table from n.
void recompute_analytic_columns(CsvTable& table, bool full_precision);

// ---------------------------------------------------------------------------
// D_{a,b}: fixed-budget protocol versus the converged protocol

struct SeolCheunTableOptions {
    int n_min = 2;
    int n_max = 10;
    std::size_t fit_samples = kDefaultFitSamples;
    std::size_t fixed_samples = 100000;
    std::vector<std::size_t> schedule = doubling_schedule(16, 28);
    double tol = kDefaultTolerance;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
};

struct SeolCheunRow {
    int n = 0;
    double a = 0.0;
    double b = 0.0;
    EmpiricalErrors fixed;      ///< normalized sphere points
    EmpiricalErrors fixed_raw;  ///< same budget, error measured against D_2 of raw Gaussians
    ErrorReport converged;
};

std::vector<SeolCheunRow> run_seol_cheun_table(const SeolCheunTableOptions& options);
CsvTable seol_cheun_table_csv(const std::vector<SeolCheunRow>& rows, const SeolCheunTableOptions& options,
                              bool full_precision);

// ---------------------------------------------------------------------------
// Analytic MRE curves

struct CurveRow {
    int n = 0;
    double lambda = 0.0;
    double mu_lambda = 0.0;
    double barni = 0.0;
};

std::vector<CurveRow> mre_curve(int n_max);
CsvTable mre_curve_csv(const std::vector<CurveRow>& rows, bool full_precision);

// ---------------------------------------------------------------------------
// Operation counts

struct OpCountRow {
    std::string norm;
    OpCount measured;
    OpCount expected;
    bool sorted = false;  ///< comparisons are checked against an n log n band instead
    bool matches = false;
};

/// Instrumented evaluation of D_inf, D_1, D_2, D_lambda, D_{mu,lambda}, D_B and
/// D_{a,b} on one deterministic vector of dimension n.
std::vector<OpCountRow> opcount_rows(int n, std::uint64_t seed);
/// Upper end of the accepted comparison band for a sort of n values.
std::uint64_t sort_comparison_limit(int n);
CsvTable opcount_csv(const std::vector<OpCountRow>& rows, int n);

// ---------------------------------------------------------------------------
// Coverage summary as JSON text

std::string coverage_json(int n, double epsilon, double budget, bool full_precision);

std::string seol_cheun_fit_json(const NormParams& params, bool full_precision);

}  // namespace normapprox::report
