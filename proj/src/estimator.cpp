#include "roughlab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <omp.h>

#include "roughlab/error.hpp"

namespace roughlab {

namespace {

constexpr double kFlatTolerance = 1e-12;

int sign_of(double y) { return y > 0.0 ? 1 : (y < 0.0 ? -1 : 0); }

[[noreturn]] void throw_no_crossing(const std::string& why, const StatisticCurve& curve) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : curve.log_w) {
        if (std::isnan(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::ostringstream os;
    os << why << " (log W ranges over [" << lo << ", " << hi << "] on H in ["
       << curve.h_grid.front() << ", " << curve.h_grid.back() << "])";
    throw NoCrossing(os.str(), lo, hi);
}

void solve_single_t(const BlockedIncrements& inc, RoughnessEstimate& est) {
    const StatisticCurve& curve = est.curve;
    const double log_target = std::log(curve.t_eval - inc.start());
    std::vector<double> y(curve.size());
    bool flat = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = curve.log_w[i] - log_target;
        if (!(std::abs(y[i]) <= kFlatTolerance)) flat = false;
    }
    if (flat) {
        throw_no_crossing("degenerate statistic curve: W(T) = T for every p", curve);
    }

    std::size_t changes = 0;
    bool found = false;
    double root = 0.0;
    std::size_t prev = y.size();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (std::isnan(y[i])) continue;
        if (!found && y[i] == 0.0) {
            root = curve.h_grid[i];
            found = true;
        }
        if (prev < y.size() && sign_of(y[prev]) * sign_of(y[i]) < 0) {
            ++changes;
            if (!found) {
                const double h0 = curve.h_grid[prev];
                const double h1 = curve.h_grid[i];
                const double y0 = y[prev];
                const double y1 = y[i];
                if (std::isfinite(y0) && std::isfinite(y1)) {
                    root = h0 + (0.0 - y0) * (h1 - h0) / (y1 - y0);
                } else if (std::isfinite(y0)) {
                    root = h0;
                } else if (std::isfinite(y1)) {
                    root = h1;
                } else {
                    root = 0.5 * (h0 + h1);
                }
                found = true;
            }
        }
        prev = i;
    }
    if (!found) {
        throw_no_crossing("W(1/h, T) never crosses T on the H grid", curve);
    }
    est.h_hat = root;
    est.sign_changes = changes;
    const std::size_t blocks = inc.blocks_up_to(curve.t_eval);
    est.residual = std::abs(inc.log_statistic(1.0 / root, blocks) - log_target);
}

double ls_objective(const BlockedIncrements& inc, double p, std::span<double> scratch) {
    inc.log_statistic_prefix(p, scratch);
    double f = 0.0;
    for (std::size_t j = 0; j < scratch.size(); ++j) {
        const double d = std::exp(scratch[j]) - (inc.block_end(j) - inc.start());
        f += d * d;
    }
    return f;
}

void solve_least_squares(const BlockedIncrements& inc, RoughnessEstimate& est, int threads) {
    StatisticCurve& curve = est.curve;
    const std::size_t blocks = inc.blocks_up_to(curve.t_eval);
    const auto n = static_cast<std::ptrdiff_t>(curve.size());
    est.objective.assign(curve.size(), 0.0);
    double* obj = est.objective.data();
    const double* h = curve.h_grid.data();
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
    {
        std::vector<double> scratch(blocks);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            obj[i] = ls_objective(inc, 1.0 / h[i], scratch);
        }
    }

    std::size_t best = curve.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double f = est.objective[i];
        if (!std::isfinite(f)) continue;
        hi = std::max(hi, f);
        if (f < lo) {
            lo = f;
            best = i;
        }
    }
    if (best == curve.size()) {
        throw_no_crossing("least-squares objective is non-finite on the whole H grid", curve);
    }
    if (hi - lo <= kFlatTolerance) {
        throw_no_crossing("degenerate statistic curve: least-squares objective is flat", curve);
    }

    double root = curve.h_grid[best];
    if (best == 0 || best + 1 == curve.size() || !std::isfinite(est.objective[best - 1]) ||
        !std::isfinite(est.objective[best + 1])) {
        est.at_boundary = best == 0 || best + 1 == curve.size();
    } else {
        const double a = curve.h_grid[best - 1], b = root, c = curve.h_grid[best + 1];
        const double fa = est.objective[best - 1], fb = est.objective[best],
                     fc = est.objective[best + 1];
        const double num = (b - a) * (b - a) * (fb - fc) - (b - c) * (b - c) * (fb - fa);
        const double den = (b - a) * (fb - fc) - (b - c) * (fb - fa);
        if (den != 0.0) {
            root = std::clamp(b - 0.5 * num / den, a, c);
        }
    }
    est.h_hat = root;
    std::vector<double> scratch(blocks);
    est.residual = ls_objective(inc, 1.0 / root, scratch);
}

}  // namespace

const char* to_string(EstimationMethod method) noexcept {
    return method == EstimationMethod::SingleT ? "single_t" : "least_squares";
}

RoughnessEstimate estimate_roughness(const SampledPath& path, std::size_t block_count,
                                     std::span<const double> h_grid,
                                     const EstimateOptions& options) {
    check_h_grid(h_grid);
    const BlockedIncrements inc(path, block_count, options.statistic);
    RoughnessEstimate est;
    est.method = options.method;
    est.block_count = inc.block_count();
    est.sample_count = inc.sample_count();
    est.curve = statistic_curve(inc, h_grid, path.end(), options.threads);
    if (options.method == EstimationMethod::SingleT) {
        solve_single_t(inc, est);
    } else {
        solve_least_squares(inc, est, options.threads);
    }
    est.p_hat = 1.0 / est.h_hat;
    return est;
}

std::vector<std::size_t> divisors_in(std::size_t sample_count, std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out;
    for (std::size_t d = std::max<std::size_t>(lo, 1); d <= hi && d <= sample_count; ++d) {
        if (sample_count % d == 0) out.push_back(d);
    }
    return out;
}

std::size_t default_block_count(std::size_t sample_count) {
    if (sample_count < 4) {
        throw InvalidArgument("default K needs L >= 4");
    }
    auto s = static_cast<std::size_t>(std::sqrt(static_cast<double>(sample_count)));
    while (s * s > sample_count) --s;
    while ((s + 1) * (s + 1) <= sample_count) ++s;
    const double root = std::sqrt(static_cast<double>(sample_count));
    const double lo = static_cast<double>(s) / 2.0;
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t d : divisors_in(sample_count, static_cast<std::size_t>(std::ceil(lo)),
                                     2 * s)) {
        const double dist = std::abs(static_cast<double>(d) - root);
        if (dist <= best_dist) {  // ties go to the larger divisor
            best = d;
            best_dist = dist;
        }
    }
    if (best == 0) {
        throw InvalidArgument("no divisor of L=" + std::to_string(sample_count) +
                              " near sqrt(L); choose K explicitly");
    }
    return best;
}

double mq_delta(std::span<const double> series, double q, std::size_t delta) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw InvalidArgument("moment order q must be positive");
    }
    if (delta < 1 || delta >= series.size()) {
        throw InvalidArgument("lag " + std::to_string(delta) + " out of range for a series of " +
                              std::to_string(series.size()) + " points");
    }
    const std::size_t n = series.size() - delta;
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        sum += std::pow(std::abs(series[t + delta] - series[t]), q);
    }
    return sum / static_cast<double>(n);
}

std::vector<double> default_q_grid() { return {0.5, 1.0, 1.5, 2.0, 3.0}; }

std::vector<std::size_t> default_delta_grid() {
    std::vector<std::size_t> d(50);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = i + 1;
    return d;
}

LogRegressionEstimate log_regression_estimate(std::span<const double> series,
                                              std::span<const double> q_grid,
                                              std::span<const std::size_t> delta_grid) {
    if (q_grid.empty() || delta_grid.empty()) {
        throw InvalidArgument("q and delta grids must be non-empty");
    }
    for (double v : series) {
        if (!std::isfinite(v)) throw InvalidArgument("series contains non-finite values");
    }
    LogRegressionEstimate est;
    est.q_grid.assign(q_grid.begin(), q_grid.end());
    est.delta_grid.assign(delta_grid.begin(), delta_grid.end());
    double sqx = 0.0, sqq = 0.0;
    for (double q : q_grid) {
        std::vector<double> xs, ys, row;
        for (std::size_t d : delta_grid) {
            const double m = mq_delta(series, q, d);
            row.push_back(m > 0.0 ? std::log(m) : -std::numeric_limits<double>::infinity());
            if (m > 0.0) {
                xs.push_back(std::log(static_cast<double>(d)));
                ys.push_back(std::log(m));
            } else {
                std::ostringstream os;
                os << "m(q=" << q << ", delta=" << d << ") is zero; excluded";
                est.warnings.push_back(os.str());
            }
        }
        if (xs.size() < 3) {
            std::ostringstream os;
            os << "fewer than 3 usable lags for q=" << q;
            throw InsufficientData(os.str());
        }
        const double n = static_cast<double>(xs.size());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= n;
        my /= n;
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxy += (xs[i] - mx) * (ys[i] - my);
            sxx += (xs[i] - mx) * (xs[i] - mx);
        }
        if (!(sxx > 0.0)) {
            std::ostringstream os;
            os << "lags for q=" << q << " are not distinct";
            throw InsufficientData(os.str());
        }
        const double slope = sxy / sxx;
        est.xi.push_back(slope);
        est.intercepts.push_back(my - slope * mx);
        est.log_m.push_back(std::move(row));
        sqx += q * slope;
        sqq += q * q;
    }
    est.h_hat_r = sqx / sqq;
    return est;
}

}  // namespace roughlab
