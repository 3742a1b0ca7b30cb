#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "roughlab/partitions.hpp"

namespace roughlab {

// Observed signal: strictly increasing times with one value per time.
class SampledPath {
public:
    SampledPath(std::vector<double> times, std::vector<double> values);

    // Values on the uniform grid i * horizon / (n - 1).
    static SampledPath uniform(std::vector<double> values, double horizon = 1.0);

    std::span<const double> times() const noexcept { return times_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t interval_count() const noexcept { return values_.size() - 1; }
    double start() const noexcept { return times_.front(); }
    double end() const noexcept { return times_.back(); }

    // Same values, times mapped affinely onto [0, 1].
    SampledPath rescaled_to_unit() const;
    SampledPath with_values(std::vector<double> values) const;

private:
    std::vector<double> times_;
    std::vector<double> values_;
};

// Sum of |x(t_{j+1}) - x(t_j)|^p over the intervals in `block`.
double pvar_sum(const SampledPath& path, IndexRange block, double p);

// Added to every block denominator when the epsilon guard is enabled.
inline constexpr double kDenominatorGuard = 1e-300;

struct StatisticOptions {
    bool epsilon_guard = false;
};

// Increments of a path grouped into K coarse blocks of m = L / K fine intervals,
// stored in the log domain so that W can be evaluated for any p without overflow.
class BlockedIncrements {
public:
    BlockedIncrements(const SampledPath& path, std::size_t block_count,
                      const StatisticOptions& options = {});

    std::size_t block_count() const noexcept { return log_coarse_.size(); }
    std::size_t block_size() const noexcept { return block_size_; }
    std::size_t sample_count() const noexcept { return block_size_ * log_coarse_.size(); }

    double start() const noexcept { return start_; }

    // Coarse right endpoint of block i.
    double block_end(std::size_t i) const noexcept { return block_end_[i]; }

    // Number of leading blocks whose right endpoint is <= t; throws on t outside the path.
    std::size_t blocks_up_to(double t) const;

    // log W over the first `blocks` coarse blocks.
    double log_statistic(double p, std::size_t blocks) const;

    // out[i] = log W after blocks 0..i, for i < out.size().
    void log_statistic_prefix(double p, std::span<double> out) const;

private:
    double block_log_term(double p, std::size_t i) const;

    std::size_t block_size_;
    double start_;
    bool guard_;
    std::vector<double> log_coarse_;   // log |X(t^K_{i+1}) - X(t^K_i)|
    std::vector<double> log_fine_max_; // log of the largest fine increment in block i
    std::vector<double> rel_fine_;     // log |fine increment| - log_fine_max_, block-major
    std::vector<double> log_dt_;       // log (t^K_{i+1} - t^K_i)
    std::vector<double> block_end_;
    std::vector<unsigned char> degenerate_;
};

// W(L, K, pi, p, t, X) with L = path.interval_count().
double normalized_pvar_statistic(const SampledPath& path, std::size_t block_count, double p,
                                 double t, const StatisticOptions& options = {});
double log_normalized_pvar_statistic(const SampledPath& path, std::size_t block_count,
                                     double p, double t, const StatisticOptions& options = {});

struct StatisticCurve {
    std::vector<double> h_grid;
    std::vector<double> log_w;
    double t_eval = 1.0;
    std::size_t block_count = 0;
    std::size_t sample_count = 0;

    std::size_t size() const noexcept { return h_grid.size(); }
    double w(std::size_t i) const;
    bool finite(std::size_t i) const;
};

// 0.01, 0.012, ..., 0.99 (491 points).
std::vector<double> default_h_grid();

// Validates that h_grid is strictly increasing inside (0, 1].
void check_h_grid(std::span<const double> h_grid);

// OpenMP over the grid; threads == 0 uses the runtime default.
StatisticCurve statistic_curve(const SampledPath& path, std::size_t block_count,
                               std::span<const double> h_grid, double t,
                               const StatisticOptions& options = {}, int threads = 0);

// Single-threaded reference; bitwise identical to statistic_curve.
StatisticCurve statistic_curve_serial(const SampledPath& path, std::size_t block_count,
                                      std::span<const double> h_grid, double t,
                                      const StatisticOptions& options = {});

// Same, reusing precomputed increments.
StatisticCurve statistic_curve(const BlockedIncrements& increments,
                               std::span<const double> h_grid, double t, int threads = 0);
StatisticCurve statistic_curve_serial(const BlockedIncrements& increments,
                                      std::span<const double> h_grid, double t);

}  // namespace roughlab
