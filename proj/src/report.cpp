#include "normapprox/report.hpp"

#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "normapprox/errors.hpp"
#include "normapprox/rng.hpp"

namespace normapprox::report {

std::string format_value(double v, bool full_precision)
{
    return full_precision ? fmt::format("{:.17g}", v) : fmt::format("{:.6g}", v);
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw InvalidParameterError("CSV has no column '" + std::string(name) + "'");
}

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out << ',';
        out << cells[i];
    }
    out << '\n';
}

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_count(const std::string& item)
{
    const std::string s = trim(item);
    if (s.empty())
        throw DomainError("schedule: empty entry");
    if (s.size() > 2 && s[0] == '2' && s[1] == '^') {
        std::size_t used = 0;
        const int e = std::stoi(s.substr(2), &used);
        if (used != s.size() - 2 || e < 0 || e > 62)
            throw DomainError("schedule: bad power of two '" + s + "'");
        return std::size_t{1} << e;
    }
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size() || v == 0)
        throw DomainError("schedule: bad count '" + s + "'");
    return static_cast<std::size_t>(v);
}

std::string flag(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_csv(std::ostream& out, const CsvTable& table)
{
    write_row(out, table.header);
    for (const auto& row : table.rows)
        write_row(out, row);
}

std::string to_csv(const CsvTable& table)
{
    std::ostringstream out;
    write_csv(out, table);
    return out.str();
}

CsvTable parse_csv(std::string_view text)
{
    CsvTable table;
    bool first = true;
    for (const std::string& raw : split(text, '\n')) {
        std::string line = raw;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto cells = split(line, ',');
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != table.header.size())
                throw InvalidParameterError("CSV row has " + std::to_string(cells.size()) + " cells, header has " +
                                            std::to_string(table.header.size()));
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

std::vector<std::size_t> parse_schedule(std::string_view text)
{
    std::vector<std::size_t> out;
    try {
        for (const std::string& item : split(text, ',')) {
            const auto dots = item.find("..");
            if (dots == std::string::npos) {
                out.push_back(parse_count(item));
                continue;
            }
            const std::string lo = trim(item.substr(0, dots));
            const std::string hi = trim(item.substr(dots + 2));
            if (lo.rfind("2^", 0) != 0 || hi.rfind("2^", 0) != 0)
                throw DomainError("schedule: ranges must be written 2^a..2^b");
            const auto first = parse_count(lo);
            const auto last = parse_count(hi);
            if (last < first)
                throw DomainError("schedule: empty range '" + item + "'");
            for (std::size_t v = first; v <= last && v != 0; v <<= 1)
                out.push_back(v);
        }
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const DomainError*>(&e))
            throw;
        throw DomainError("schedule: cannot parse '" + std::string(text) + "'");
    }
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1])
            throw DomainError("schedule: counts must be strictly increasing");
    if (out.empty())
        throw DomainError("schedule: no entries");
    return out;
}

// ---------------------------------------------------------------------------

std::vector<MinimaxRow> run_minimax_table(const MinimaxTableOptions& options)
{
    std::vector<MinimaxRow> rows;
    for (int n = options.n_min; n <= options.n_max; ++n) {
        std::vector<Approximant> approx;
        for (NormFamily f : kMinimaxFamilies)
            approx.emplace_back(make_params(f, n, options.seed));
        const SamplerConfig cfg{n, options.seed, 4096, options.threads};
        rows.push_back({n, converged_errors(approx, cfg, options.schedule, options.tol)});
    }
    return rows;
}

CsvTable minimax_table_csv(const std::vector<MinimaxRow>& rows, bool full_precision)
{
    CsvTable table;
    table.header = {"n"};
    for (NormFamily f : kMinimaxFamilies) {
        const std::string name(to_string(f));
        table.header.insert(table.header.end(), {name + "_are", name + "_mre_e", name + "_mre_t"});
    }
    for (NormFamily f : kMinimaxFamilies)
        table.header.push_back(std::string(to_string(f)) + "_samples");
    for (NormFamily f : kMinimaxFamilies)
        table.header.push_back(std::string(to_string(f)) + "_converged");
    table.header.push_back("seed");

    for (const MinimaxRow& row : rows) {
        std::vector<std::string> cells{std::to_string(row.n)};
        for (const ErrorReport& r : row.reports) {
            cells.push_back(format_value(r.are, full_precision));
            cells.push_back(format_value(r.mre_e, full_precision));
            cells.push_back(format_value(r.mre_t.value_or(NAN), full_precision));
        }
        for (const ErrorReport& r : row.reports)
            cells.push_back(std::to_string(r.samples_used));
        for (const ErrorReport& r : row.reports)
            cells.push_back(flag(r.converged));
        cells.push_back(std::to_string(row.reports.empty() ? 0 : row.reports.front().seed));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

void recompute_analytic_columns(CsvTable& table, bool full_precision)
{
    const std::size_t n_col = table.column("n");
    for (auto& row : table.rows) {
        const int n = std::stoi(row[n_col]);
        for (NormFamily f : kMinimaxFamilies) {
            const std::size_t col = table.column(std::string(to_string(f)) + "_mre_t");
            row[col] = format_value(*mre_theoretical(make_params(f, n, 0)), full_precision);
        }
    }
}

// ---------------------------------------------------------------------------

std::vector<SeolCheunRow> run_seol_cheun_table(const SeolCheunTableOptions& options)
{
    std::vector<SeolCheunRow> rows;
    for (int n = options.n_min; n <= options.n_max; ++n) {
        const NormParams params = fit_seol_cheun(n, options.fit_samples, options.seed, options.threads);
        const Approximant approx(params);
        const SamplerConfig cfg{n, options.seed, 4096, options.threads};
        SeolCheunRow row;
        row.n = n;
        row.a = params.a();
        row.b = params.b();
        row.fixed = fixed_sample_mre(approx, cfg, options.fixed_samples, FixedSampleMode::Normalized);
        row.fixed_raw = fixed_sample_mre(approx, cfg, options.fixed_samples, FixedSampleMode::RawGaussian);
        row.converged = converged_errors(approx, cfg, options.schedule, options.tol);
        rows.push_back(std::move(row));
    }
    return rows;
}

CsvTable seol_cheun_table_csv(const std::vector<SeolCheunRow>& rows, const SeolCheunTableOptions& options,
                              bool full_precision)
{
    CsvTable table;
    table.header = {"n",           "fixed_are",       "fixed_mre_e",     "converged_are",
                    "converged_mre_e", "a",           "b",               "fixed_raw_are",
                    "fixed_raw_mre_e", "fixed_samples", "converged_samples", "converged",
                    "fit_samples", "seed"};
    for (const SeolCheunRow& row : rows) {
        table.rows.push_back({std::to_string(row.n),
                              format_value(row.fixed.are, full_precision),
                              format_value(row.fixed.mre_e, full_precision),
                              format_value(row.converged.are, full_precision),
                              format_value(row.converged.mre_e, full_precision),
                              format_value(row.a, full_precision),
                              format_value(row.b, full_precision),
                              format_value(row.fixed_raw.are, full_precision),
                              format_value(row.fixed_raw.mre_e, full_precision),
                              std::to_string(row.fixed.samples),
                              std::to_string(row.converged.samples_used),
                              flag(row.converged.converged),
                              std::to_string(options.fit_samples),
                              std::to_string(options.seed)});
    }
    return table;
}

// ---------------------------------------------------------------------------

std::vector<CurveRow> mre_curve(int n_max)
{
    if (n_max < 2)
        throw DomainError("mre_curve: nmax must be at least 2");
    std::vector<CurveRow> rows;
    for (int n = 2; n <= n_max; ++n)
        rows.push_back({n, mre_lambda_optimal(solve_lambda_optimal(n)), mu_lambda_optimal(n).mre,
                        barni_optimal(n).mre});
    return rows;
}

CsvTable mre_curve_csv(const std::vector<CurveRow>& rows, bool full_precision)
{
    CsvTable table;
    table.header = {"n", "mre_lambda", "mre_mulambda", "mre_barni"};
    for (const CurveRow& r : rows)
        table.rows.push_back({std::to_string(r.n), format_value(r.lambda, full_precision),
                              format_value(r.mu_lambda, full_precision), format_value(r.barni, full_precision)});
    return table;
}

// ---------------------------------------------------------------------------

std::uint64_t sort_comparison_limit(int n)
{
    const auto un = static_cast<std::uint64_t>(n);
    const auto log2n = static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(n))));
    return 2 * un * std::max<std::uint64_t>(log2n, 1);
}

std::vector<OpCountRow> opcount_rows(int n, std::uint64_t seed)
{
    if (n < 2)
        throw DomainError("opcounts: n must be at least 2");
    auto engine = rng::block_engine(seed, rng::Stream::Auxiliary, static_cast<std::uint64_t>(n), 0);
    std::vector<double> coords(static_cast<std::size_t>(n));
    for (double& v : coords)
        v = 2.0 * rng::uniform01(engine) - 1.0;
    const VectorN x(coords);

    const auto un = static_cast<std::uint64_t>(n);
    std::vector<OpCountRow> rows;
    auto add = [&](std::string name, std::pair<double, OpCount> measured, OpCount expected, bool sorted) {
        OpCountRow row{std::move(name), measured.second, expected, sorted, false};
        if (sorted) {
            OpCount m = row.measured;
            m.comparisons = expected.comparisons;
            row.matches = m == expected && row.measured.comparisons >= un - 1 &&
                          row.measured.comparisons <= sort_comparison_limit(n);
        } else {
            row.matches = row.measured == expected;
        }
        rows.push_back(std::move(row));
    };

    add("D_inf", norm_p_counted(x, kInfinity), {un, un - 1, 0, 0, 0}, false);
    add("D_1", norm_p_counted(x, 1.0), {un, 0, un - 1, 0, 0}, false);
    add("D_2", norm_p_counted(x, 2.0), {0, 0, un - 1, un, 1}, false);
    add("D_lambda", norm_weighted_counted(x, weight_profile_of(NormParams::lambda_optimal(n))),
        {un, un - 1, un - 1, 1, 0}, false);
    add("D_mu_lambda", norm_weighted_counted(x, weight_profile_of(NormParams::mu_lambda(n))),
        {un, un - 1, un, 2, 0}, false);
    add("D_B", norm_weighted_counted(x, weight_profile_of(NormParams::barni(n))), {un, 0, un - 1, un, 0}, true);
    // Any admissible (a, b) exercises the same path; a small fit keeps this fast.
    add("D_ab", norm_weighted_counted(x, weight_profile_of(fit_seol_cheun(n, 10000, seed))),
        {un, un - 1, un, 2, 0}, false);
    return rows;
}

CsvTable opcount_csv(const std::vector<OpCountRow>& rows, int n)
{
    CsvTable table;
    table.header = {"norm",         "abs",           "comp",          "add",           "mult",
                    "sqrt",         "expected_abs",  "expected_comp", "expected_add",  "expected_mult",
                    "expected_sqrt", "match"};
    for (const OpCountRow& r : rows) {
        const std::string comp = r.sorted ? fmt::format("{}..{}", n - 1, sort_comparison_limit(n))
                                          : std::to_string(r.expected.comparisons);
        table.rows.push_back({r.norm, std::to_string(r.measured.abs_ops), std::to_string(r.measured.comparisons),
                              std::to_string(r.measured.additions), std::to_string(r.measured.multiplications),
                              std::to_string(r.measured.square_roots), std::to_string(r.expected.abs_ops), comp,
                              std::to_string(r.expected.additions), std::to_string(r.expected.multiplications),
                              std::to_string(r.expected.square_roots), flag(r.matches)});
    }
    return table;
}

// ---------------------------------------------------------------------------

namespace {

double rounded(double v, bool full_precision)
{
    return full_precision ? v : std::stod(format_value(v, false));
}

// Numbers outside double range become {"log10": value}.
nlohmann::json maybe_log(double linear, double natural_log, bool log_domain, bool full_precision)
{
    if (log_domain || !std::isfinite(linear) || (linear == 0.0 && std::isfinite(natural_log)))
        return {{"log10", rounded(natural_log / std::log(10.0), full_precision)}};
    return rounded(linear, full_precision);
}

}  // namespace

std::string coverage_json(int n, double epsilon, double budget, bool full_precision)
{
    const CoverageEstimate est = expected_samples(n, epsilon);
    const PatchCount patches = patch_count(n, epsilon);
    const double log_ratio = log_coverage_deficiency(n, epsilon, budget);

    nlohmann::json j;
    j["n"] = n;
    j["epsilon"] = epsilon;
    j["patch_count"] = maybe_log(patches.exact, patches.log_exact, false, full_precision);
    j["patch_count_approx"] = maybe_log(patches.approx, patches.log_approx, false, full_precision);
    j["expected_samples"] = maybe_log(est.log_domain ? NAN : est.expected_samples, est.ln_expected_samples(),
                                      est.log_domain, full_precision);
    j["expected_samples_model"] = "N ln N with constant 1 (order of magnitude)";
    j["budget"] = budget;
    j["deficiency_ratio"] = maybe_log(std::exp(log_ratio), log_ratio, false, full_precision);
    nlohmann::json tails = nlohmann::json::array();
    for (int s : {1, 2, 3}) {
        const TailBound t = tail_bound(std::max(patches.exact, 1.0 + 1e-9), s);
        tails.push_back({{"s", s},
                         {"union_bound", rounded(t.union_bound, full_precision)},
                         {"limit", rounded(t.limit, full_precision)}});
    }
    j["tail_bound"] = tails;
    return j.dump(2);
}

std::string seol_cheun_fit_json(const NormParams& params, bool full_precision)
{
    nlohmann::json j;
    j["family"] = std::string(to_string(params.family()));
    j["n"] = params.dimension();
    j["a"] = rounded(params.a(), full_precision);
    j["b"] = rounded(params.b(), full_precision);
    j["fit_samples"] = params.fit_samples();
    j["seed"] = params.seed();
    return j.dump(2);
}

}  // namespace normapprox::report
