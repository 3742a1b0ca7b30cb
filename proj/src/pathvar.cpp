#include "roughlab/pathvar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <omp.h>

#include "roughlab/error.hpp"

namespace roughlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

void check_exponent(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw InvalidArgument("variation exponent p must be positive and finite");
    }
}

}  // namespace

SampledPath::SampledPath(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.size() != values_.size()) {
        throw InvalidArgument("path times and values differ in length");
    }
    if (values_.size() < 2) {
        throw InvalidArgument("path needs at least two samples");
    }
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw InvalidArgument("path times must be strictly increasing (index " +
                                  std::to_string(i) + ")");
        }
    }
}

SampledPath SampledPath::uniform(std::vector<double> values, double horizon) {
    if (values.size() < 2) {
        throw InvalidArgument("path needs at least two samples");
    }
    if (!(horizon > 0.0)) {
        throw InvalidArgument("horizon must be positive");
    }
    const std::size_t n = values.size() - 1;
    std::vector<double> times(values.size());
    for (std::size_t i = 0; i <= n; ++i) {
        times[i] = horizon * static_cast<double>(i) / static_cast<double>(n);
    }
    times[n] = horizon;
    return SampledPath(std::move(times), std::move(values));
}

SampledPath SampledPath::rescaled_to_unit() const {
    const double a = start();
    const double span = end() - start();
    std::vector<double> t(times_.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = (times_[i] - a) / span;
    }
    t.front() = 0.0;
    t.back() = 1.0;
    return SampledPath(std::move(t), values_);
}

SampledPath SampledPath::with_values(std::vector<double> values) const {
    return SampledPath(times_, std::move(values));
}

double pvar_sum(const SampledPath& path, IndexRange block, double p) {
    check_exponent(p);
    if (block.empty() || block.last > path.interval_count()) {
        throw InvalidArgument("p-variation block must hold at least one interval of the path");
    }
    const auto x = path.values();
    double sum = 0.0;
    for (std::size_t j = block.first; j < block.last; ++j) {
        sum += std::pow(std::abs(x[j + 1] - x[j]), p);
    }
    return sum;
}

BlockedIncrements::BlockedIncrements(const SampledPath& path, std::size_t block_count,
                                     const StatisticOptions& options)
    : block_size_(0), start_(path.start()), guard_(options.epsilon_guard) {
    const std::size_t L = path.interval_count();
    if (block_count == 0 || block_count > L || L % block_count != 0) {
        throw InvalidArgument("block count K=" + std::to_string(block_count) +
                              " does not divide the interval count L=" + std::to_string(L));
    }
    block_size_ = L / block_count;
    const auto x = path.values();
    const auto t = path.times();
    log_coarse_.resize(block_count);
    log_fine_max_.resize(block_count);
    log_dt_.resize(block_count);
    block_end_.resize(block_count);
    degenerate_.assign(block_count, 0);
    rel_fine_.resize(L);
    for (std::size_t i = 0; i < block_count; ++i) {
        const std::size_t a = i * block_size_;
        const std::size_t b = a + block_size_;
        log_coarse_[i] = std::log(std::abs(x[b] - x[a]));
        double mx = kNegInf;
        for (std::size_t j = a; j < b; ++j) {
            const double lf = std::log(std::abs(x[j + 1] - x[j]));
            rel_fine_[j] = lf;
            mx = std::max(mx, lf);
        }
        log_fine_max_[i] = mx;
        if (mx == kNegInf) {
            degenerate_[i] = 1;
        } else {
            for (std::size_t j = a; j < b; ++j) {
                rel_fine_[j] -= mx;
            }
        }
        log_dt_[i] = std::log(t[b] - t[a]);
        block_end_[i] = t[b];
    }
}

std::size_t BlockedIncrements::blocks_up_to(double t) const {
    const double span = block_end_.back() - start_;
    const double tol = kTimeTolerance * std::max(1.0, span);
    if (!(t >= start_ - tol) || t > block_end_.back() + tol) {
        throw InvalidArgument("evaluation time outside the path horizon");
    }
    const auto it = std::upper_bound(block_end_.begin(), block_end_.end(), t + tol);
    const std::size_t blocks = static_cast<std::size_t>(it - block_end_.begin());
    if (!guard_) {
        for (std::size_t i = 0; i < blocks; ++i) {
            if (degenerate_[i]) throw DegenerateBlock(i);
        }
    }
    return blocks;
}

double BlockedIncrements::block_log_term(double p, std::size_t i) const {
    double log_den;
    if (degenerate_[i]) {
        log_den = std::log(kDenominatorGuard);
    } else {
        const double* rel = rel_fine_.data() + i * block_size_;
        double s = 0.0;
        for (std::size_t j = 0; j < block_size_; ++j) {
            s += std::exp(p * rel[j]);
        }
        log_den = p * log_fine_max_[i] + std::log(s);
        if (guard_) log_den = log_add_exp(log_den, std::log(kDenominatorGuard));
    }
    const double log_num = log_coarse_[i] == kNegInf ? kNegInf : p * log_coarse_[i];
    return log_num == kNegInf ? kNegInf : log_num - log_den + log_dt_[i];
}

double BlockedIncrements::log_statistic(double p, std::size_t blocks) const {
    check_exponent(p);
    double acc = kNegInf;
    for (std::size_t i = 0; i < blocks; ++i) {
        acc = log_add_exp(acc, block_log_term(p, i));
    }
    return acc;
}

void BlockedIncrements::log_statistic_prefix(double p, std::span<double> out) const {
    check_exponent(p);
    double acc = kNegInf;
    for (std::size_t i = 0; i < out.size(); ++i) {
        acc = log_add_exp(acc, block_log_term(p, i));
        out[i] = acc;
    }
}

double log_normalized_pvar_statistic(const SampledPath& path, std::size_t block_count, double p,
                                     double t, const StatisticOptions& options) {
    check_exponent(p);
    const BlockedIncrements inc(path, block_count, options);
    return inc.log_statistic(p, inc.blocks_up_to(t));
}

double normalized_pvar_statistic(const SampledPath& path, std::size_t block_count, double p,
                                 double t, const StatisticOptions& options) {
    return std::exp(log_normalized_pvar_statistic(path, block_count, p, t, options));
}

double StatisticCurve::w(std::size_t i) const { return std::exp(log_w[i]); }

bool StatisticCurve::finite(std::size_t i) const {
    return std::isfinite(log_w[i]) && std::isfinite(std::exp(log_w[i]));
}

std::vector<double> default_h_grid() {
    std::vector<double> grid(491);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = (10.0 + 2.0 * static_cast<double>(i)) / 1000.0;
    }
    return grid;
}

void check_h_grid(std::span<const double> h_grid) {
    if (h_grid.empty()) {
        throw InvalidArgument("H grid is empty");
    }
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        if (!(h_grid[i] > 0.0 && h_grid[i] <= 1.0)) {
            throw InvalidArgument("H grid values must lie in (0, 1]");
        }
        if (i > 0 && !(h_grid[i] > h_grid[i - 1])) {
            throw InvalidArgument("H grid must be strictly increasing");
        }
    }
}

namespace {

StatisticCurve make_curve(const BlockedIncrements& inc, std::span<const double> h_grid,
                          double t) {
    StatisticCurve curve;
    curve.h_grid.assign(h_grid.begin(), h_grid.end());
    curve.log_w.assign(h_grid.size(), 0.0);
    curve.t_eval = t;
    curve.block_count = inc.block_count();
    curve.sample_count = inc.sample_count();
    return curve;
}

}  // namespace

StatisticCurve statistic_curve_serial(const BlockedIncrements& inc,
                                      std::span<const double> h_grid, double t) {
    check_h_grid(h_grid);
    const std::size_t blocks = inc.blocks_up_to(t);
    StatisticCurve curve = make_curve(inc, h_grid, t);
    for (std::size_t i = 0; i < h_grid.size(); ++i) {
        curve.log_w[i] = inc.log_statistic(1.0 / h_grid[i], blocks);
    }
    return curve;
}

StatisticCurve statistic_curve(const BlockedIncrements& inc, std::span<const double> h_grid,
                               double t, int threads) {
    check_h_grid(h_grid);
    const std::size_t blocks = inc.blocks_up_to(t);
    StatisticCurve curve = make_curve(inc, h_grid, t);
    const int n = threads > 0 ? threads : omp_get_max_threads();
    const auto count = static_cast<std::ptrdiff_t>(h_grid.size());
    double* out = curve.log_w.data();
    const double* h = h_grid.data();
#pragma omp parallel for schedule(static) num_threads(n)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        out[i] = inc.log_statistic(1.0 / h[i], blocks);
    }
    return curve;
}

StatisticCurve statistic_curve_serial(const SampledPath& path, std::size_t block_count,
                                      std::span<const double> h_grid, double t,
                                      const StatisticOptions& options) {
    check_h_grid(h_grid);
    return statistic_curve_serial(BlockedIncrements(path, block_count, options), h_grid, t);
}

StatisticCurve statistic_curve(const SampledPath& path, std::size_t block_count,
                               std::span<const double> h_grid, double t,
                               const StatisticOptions& options, int threads) {
    check_h_grid(h_grid);
    return statistic_curve(BlockedIncrements(path, block_count, options), h_grid, t, threads);
}

}  // namespace roughlab
