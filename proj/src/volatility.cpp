#include "roughlab/volatility.hpp"

#include <cmath>
#include <string>

#include "roughlab/error.hpp"

namespace roughlab {

namespace {

void check_window(std::size_t intervals, std::size_t window_len, std::size_t step) {
    if (window_len < 2) {
        throw InvalidArgument("RV window must hold at least 2 intervals");
    }
    if (step < 1) {
        throw InvalidArgument("RV step must be >= 1");
    }
    if (window_len > intervals) {
        throw InvalidArgument("RV window of " + std::to_string(window_len) +
                              " exceeds the " + std::to_string(intervals) + " available intervals");
    }
}

}  // namespace

SampledPath RVSeries::as_path() const { return SampledPath(times, values); }

double realized_variance(const SampledPath& log_price, double t) {
    const auto times = log_price.times();
    const double span = log_price.end() - log_price.start();
    const double tol = kTimeTolerance * std::max(1.0, span);
    if (!(t >= log_price.start() - tol) || t > log_price.end() + tol) {
        throw InvalidArgument("realized variance time outside the path horizon");
    }
    const auto x = log_price.values();
    double rv = 0.0;
    for (std::size_t i = 0; i + 1 < x.size() && times[i + 1] <= t + tol; ++i) {
        const double d = x[i + 1] - x[i];
        rv += d * d;
    }
    return rv;
}

RVSeries realized_vol_series(const SampledPath& log_price, std::size_t window_len,
                             std::size_t step, bool normalized) {
    const std::size_t n = log_price.interval_count();
    check_window(n, window_len, step);
    const auto x = log_price.values();
    const auto t = log_price.times();
    RVSeries rv;
    rv.window_len = window_len;
    rv.step = step;
    rv.normalized = normalized;
    const std::size_t count = (n - window_len) / step + 1;
    rv.times.resize(count);
    rv.values.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t a = k * step;
        const std::size_t b = a + window_len;
        double s = 0.0;
        for (std::size_t j = a; j < b; ++j) {
            const double d = x[j + 1] - x[j];
            s += d * d;
        }
        double v = std::sqrt(s);
        if (normalized) v /= std::sqrt(t[b] - t[a]);
        rv.times[k] = t[b];
        rv.values[k] = v;
    }
    return rv;
}

std::vector<double> spot_vol_series(const SimulatedMarket& market, const RVSeries& rv) {
    const auto t = market.spot_vol.times();
    const auto sigma = market.spot_vol.values();
    std::vector<double> out(rv.size());
    for (std::size_t k = 0; k < rv.size(); ++k) {
        const std::size_t a = rv.window_start(k);
        const std::size_t b = a + rv.window_len;
        if (b >= t.size() || std::abs(t[b] - rv.times[k]) > kTimeTolerance * std::max(1.0, t.back())) {
            throw InvalidArgument("RV window " + std::to_string(k) +
                                  " is not aligned with the market grid");
        }
        out[k] = sigma[a];
    }
    return out;
}

std::vector<double> estimation_error(const RVSeries& rv, std::span<const double> spot,
                                     bool log_scale) {
    if (rv.size() != spot.size()) {
        throw InvalidArgument("RV and spot series differ in length");
    }
    if (!rv.normalized) {
        throw InvalidArgument("estimation error needs a normalized RV series");
    }
    std::vector<double> err(spot.size());
    for (std::size_t i = 0; i < err.size(); ++i) {
        if (log_scale) {
            if (!(rv.values[i] > 0.0) || !(spot[i] > 0.0)) {
                throw InvalidArgument("log estimation error needs positive values (index " +
                                      std::to_string(i) + ")");
            }
            err[i] = std::log(rv.values[i]) - std::log(spot[i]);
        } else {
            err[i] = rv.values[i] - spot[i];
        }
    }
    return err;
}

std::vector<double> acf(std::span<const double> series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n <= max_lag + 1) {
        throw InvalidArgument("series too short for the requested ACF lag");
    }
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    for (double v : series) c0 += (v - mean) * (v - mean);
    if (!(c0 > 0.0)) {
        throw DegenerateSeries("ACF of a series with zero variance");
    }
    std::vector<double> out(max_lag + 1);
    out[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) {
            ck += (series[i] - mean) * (series[i + k] - mean);
        }
        out[k] = ck / c0;
    }
    return out;
}

WindowedObservations observe_market_windows(const ModelSpec& model, std::size_t windows,
                                            std::size_t window_len, double fine_dt,
                                            std::uint64_t seed, bool normalized,
                                            const StationaryGaussianSampler* fgn) {
    if (windows < 1) {
        throw InvalidArgument("need at least one RV window");
    }
    if (window_len < 2) {
        throw InvalidArgument("RV window must hold at least 2 intervals");
    }
    if (!(fine_dt > 0.0)) {
        throw InvalidArgument("fine step must be positive");
    }
    const std::size_t n = windows * window_len;
    MarketStepper stepper(model, n, fine_dt * static_cast<double>(n), seed, fgn);
    WindowedObservations obs;
    obs.rv.window_len = window_len;
    obs.rv.step = window_len;
    obs.rv.normalized = normalized;
    obs.rv.times.resize(windows);
    obs.rv.values.resize(windows);
    obs.spot.resize(windows);
    for (std::size_t k = 0; k < windows; ++k) {
        const double t_start = stepper.time();
        obs.spot[k] = stepper.sigma();
        double x = stepper.log_price();
        double s = 0.0;
        for (std::size_t j = 0; j < window_len; ++j) {
            stepper.advance();
            const double next = stepper.log_price();
            const double d = next - x;
            s += d * d;
            x = next;
        }
        double v = std::sqrt(s);
        if (normalized) v /= std::sqrt(stepper.time() - t_start);
        obs.rv.times[k] = stepper.time();
        obs.rv.values[k] = v;
    }
    return obs;
}

}  // namespace roughlab
