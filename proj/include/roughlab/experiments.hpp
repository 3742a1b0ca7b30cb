#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "roughlab/estimator.hpp"
#include "roughlab/simulate.hpp"

namespace roughlab {

struct SummaryStats {
    std::size_t n = 0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double mean = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

// Type-7 (linear interpolation) quantiles; throws InvalidArgument on empty input.
SummaryStats quantiles(std::span<const double> samples);

// Type-7 quantile of an ascending sample at probability prob in [0, 1].
double quantile_sorted(std::span<const double> sorted, double prob);

inline constexpr std::size_t kHistogramBins = 40;

// Counts over kHistogramBins uniform bins on [0, 1]; values outside are clamped.
std::vector<std::size_t> histogram_counts(std::span<const double> samples);

// Largest tolerated share of failed paths in a cell.
inline constexpr double kMaxFailureFraction = 0.10;

struct StudyOptions {
    int threads = 0;  // 0: OpenMP default
    std::vector<double> h_grid = default_h_grid();
    EstimationMethod method = EstimationMethod::SingleT;
    double fine_dt = kTradingSecond;  // SV markets: time between fine samples
};

// One simulated path. fbm studies store their estimate in h_iv (the path is
// observed directly) and leave h_rv as NaN.
struct PathResult {
    std::string model;
    double hurst = 0.0;
    std::size_t path = 0;
    std::uint64_t seed = 0;
    double target = 0.0;
    double h_rv = 0.0;
    double h_iv = 0.0;
    bool ok = true;
    std::string reason;
};

// Summary of one estimate column of one (model, H) cell over its successful paths.
struct CellSummary {
    std::string model;
    double hurst = 0.0;
    std::string series;  // "path" (fbm), "rv" or "iv"
    std::size_t failures = 0;
    SummaryStats stats;  // n = 0 when every path failed
    std::vector<std::size_t> histogram;
};

struct ExperimentSpec {
    std::string name;
    std::string model;
    std::vector<double> hurst;
    std::size_t L = 0;
    std::size_t K = 0;
    std::size_t window = 0;  // 0 for fbm studies
    std::size_t n_paths = 0;
    std::uint64_t base_seed = 0;
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<PathResult> raw;        // cell-major, path index order
    std::vector<CellSummary> summaries; // cell order, then series
    double wall_seconds = 0.0;

    // True when some cell lost more than kMaxFailureFraction of its paths.
    bool failure_budget_exceeded() const;
    const CellSummary* find(double hurst, const std::string& series) const;
};

// n_paths fBM paths of L intervals on [0, 1] per H; estimate with K blocks.
ExperimentReport run_fbm_study(std::span<const double> hurst, std::size_t L, std::size_t K,
                               std::size_t n_paths, std::uint64_t base_seed,
                               const StudyOptions& options = {});

// Per path: a market of (L + 1) * window fine steps, normalized RV over
// non-overlapping windows (L + 1 points) and sigma at window left endpoints;
// both series are estimated with K blocks.
ExperimentReport run_sv_study(const ModelSpec& model, std::size_t L, std::size_t K,
                              std::size_t window, std::size_t n_paths, std::uint64_t base_seed,
                              const StudyOptions& options = {});

// run_sv_study over fou-sv models with gamma = theta = sigma0 = 1, one cell per H.
ExperimentReport run_fou_sweep(std::span<const double> hurst, std::size_t n_paths,
                               std::size_t L, std::size_t K, std::size_t window,
                               std::uint64_t base_seed, const StudyOptions& options = {});

struct KSensitivityPoint {
    std::size_t K = 0;
    double h_hat = 0.0;
    bool ok = true;
    std::string reason;
};

// Estimate for every K of the grid that divides the interval count; other
// values are skipped and described in `notes`. Throws InvalidArgument when no
// K is usable.
std::vector<KSensitivityPoint> run_k_sensitivity(const SampledPath& path,
                                                 std::span<const std::size_t> k_grid,
                                                 const StudyOptions& options = {},
                                                 std::vector<std::string>* notes = nullptr);

// CSV renderings (header row, 17 significant digits, no wall time).
std::string raw_csv(const ExperimentReport& report);
std::string summary_csv(const ExperimentReport& report);
std::string histogram_csv(const ExperimentReport& report);
// Mean with q1/q3 band per (H, series).
std::string band_csv(const ExperimentReport& report);
std::string k_sensitivity_csv(std::span<const KSensitivityPoint> points);

}  // namespace roughlab
