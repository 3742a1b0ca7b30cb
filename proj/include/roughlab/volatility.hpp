#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "roughlab/pathvar.hpp"
#include "roughlab/simulate.hpp"

namespace roughlab {

// Realized volatility over windows of `window_len` consecutive fine intervals.
// Window k covers intervals [k * step, k * step + window_len).
struct RVSeries {
    std::vector<double> times;   // window right endpoints
    std::vector<double> values;  // realized volatility per window
    std::size_t window_len = 0;
    std::size_t step = 0;
    bool normalized = true;  // divided by sqrt(window duration)

    std::size_t size() const noexcept { return values.size(); }
    std::size_t window_start(std::size_t k) const noexcept { return k * step; }
    SampledPath as_path() const;
};

// Sum of squared log-price increments over intervals ending at or before t.
double realized_variance(const SampledPath& log_price, double t);

RVSeries realized_vol_series(const SampledPath& log_price, std::size_t window_len,
                             std::size_t step, bool normalized = true);

// sigma at each window's left endpoint, aligned 1:1 with rv.
std::vector<double> spot_vol_series(const SimulatedMarket& market, const RVSeries& rv);

// rv - spot, or log rv - log spot.
std::vector<double> estimation_error(const RVSeries& rv, std::span<const double> spot,
                                     bool log_scale);

// Sample autocorrelation at lags 0..max_lag (biased 1/n normalization).
std::vector<double> acf(std::span<const double> series, std::size_t max_lag);

// RV series and left-endpoint spot vol of a market simulated with `windows`
// non-overlapping windows of `window_len` steps at fine step `fine_dt`,
// without storing the fine path. Bitwise equal to simulate_market followed by
// realized_vol_series (step = window_len) and spot_vol_series.
struct WindowedObservations {
    RVSeries rv;
    std::vector<double> spot;
};

WindowedObservations observe_market_windows(const ModelSpec& model, std::size_t windows,
                                            std::size_t window_len, double fine_dt,
                                            std::uint64_t seed, bool normalized = true,
                                            const StationaryGaussianSampler* fgn = nullptr);

}  // namespace roughlab
