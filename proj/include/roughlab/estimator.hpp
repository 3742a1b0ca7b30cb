#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "roughlab/pathvar.hpp"

namespace roughlab {

enum class EstimationMethod { SingleT, LeastSquares };

const char* to_string(EstimationMethod method) noexcept;

struct EstimateOptions {
    EstimationMethod method = EstimationMethod::SingleT;
    StatisticOptions statistic{};
    int threads = 0;
};

// Roughness index read off the normalized p-th variation curve.
struct RoughnessEstimate {
    double h_hat = 0.0;
    double p_hat = 0.0;
    StatisticCurve curve;
    EstimationMethod method = EstimationMethod::SingleT;
    std::size_t block_count = 0;   // K
    std::size_t sample_count = 0;  // L
    // single_t: |log W(p_hat, T) - log T| re-evaluated at p_hat;
    // least_squares: objective at the refined minimizer.
    double residual = 0.0;
    // single_t: sign changes of log W - log T seen on the grid.
    std::size_t sign_changes = 0;
    // least_squares: the grid argmin sits on the first or last grid point.
    bool at_boundary = false;
    // least_squares: sum_j (W(t_j) - t_j)^2 at every grid point.
    std::vector<double> objective;
};

// Solve W(L, K, pi, 1/h, T, X) = T on h_grid (single_t), or minimize
// sum_j (W(t_j) - t_j)^2 over coarse block endpoints t_j (least_squares).
RoughnessEstimate estimate_roughness(const SampledPath& path, std::size_t block_count,
                                     std::span<const double> h_grid,
                                     const EstimateOptions& options = {});

// Divisor of L nearest sqrt(L) inside [floor(sqrt L)/2, 2 floor(sqrt L)].
std::size_t default_block_count(std::size_t sample_count);

// Every divisor of L in [lo, hi], ascending.
std::vector<std::size_t> divisors_in(std::size_t sample_count, std::size_t lo, std::size_t hi);

// (1/n') sum_t |s_{t+delta} - s_t|^q with n' = len - delta.
double mq_delta(std::span<const double> series, double q, std::size_t delta);

struct LogRegressionEstimate {
    std::vector<double> q_grid;
    std::vector<std::size_t> delta_grid;
    std::vector<double> xi;          // slope of log m(q, delta) on log delta, per q
    std::vector<double> intercepts;  // log C_q, per q
    // log m(q, delta) per q (row) and delta (column); -inf where m is zero.
    std::vector<std::vector<double>> log_m;
    double h_hat_r = 0.0;
    std::vector<std::string> warnings;
};

std::vector<double> default_q_grid();
std::vector<std::size_t> default_delta_grid();

LogRegressionEstimate log_regression_estimate(std::span<const double> series,
                                              std::span<const double> q_grid,
                                              std::span<const std::size_t> delta_grid);

}  // namespace roughlab
