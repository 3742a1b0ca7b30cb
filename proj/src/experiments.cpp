#include "roughlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>

#include <omp.h>

#include "roughlab/csv.hpp"
#include "roughlab/error.hpp"
#include "roughlab/random.hpp"
#include "roughlab/volatility.hpp"

namespace roughlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int worker_count(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// Runs body(i) for i < count on up to `threads` workers. Results must be
// written by index; the first exception (lowest index) is rethrown.
template <class Body>
void fan_out(std::size_t count, int threads, Body&& body) {
    std::vector<std::exception_ptr> errors(count);
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count(threads))
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

void check_study(std::size_t L, std::size_t K, std::size_t n_paths) {
    if (n_paths < 1) throw InvalidArgument("n_paths must be >= 1");
    if (L < 2) throw InvalidArgument("L must be >= 2");
    if (K < 1 || K > L || L % K != 0) {
        throw InvalidArgument("K = " + std::to_string(K) + " must divide L = " + std::to_string(L));
    }
}

void check_hurst(double h) {
    if (!(h > 0.0 && h < 1.0)) throw InvalidArgument("Hurst index must lie in (0, 1)");
}

EstimateOptions estimate_options(const StudyOptions& options) {
    EstimateOptions o;
    o.method = options.method;
    o.threads = 1;
    return o;
}

double estimate_series(std::vector<double> values, std::size_t K, const StudyOptions& options) {
    const SampledPath path = SampledPath::uniform(std::move(values), 1.0);
    return estimate_roughness(path, K, options.h_grid, estimate_options(options)).h_hat;
}

CellSummary summarize(const std::vector<PathResult>& raw, std::size_t first, std::size_t count,
                      const std::string& series, double PathResult::*field) {
    CellSummary cell;
    cell.model = raw[first].model;
    cell.hurst = raw[first].hurst;
    cell.series = series;
    std::vector<double> values;
    for (std::size_t i = first; i < first + count; ++i) {
        if (raw[i].ok) {
            values.push_back(raw[i].*field);
        } else {
            ++cell.failures;
        }
    }
    if (values.empty()) {
        cell.stats = SummaryStats{0, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
    } else {
        cell.stats = quantiles(values);
    }
    cell.histogram = histogram_counts(values);
    return cell;
}

std::string clean_reason(std::string s) {
    for (char& c : s) {
        if (c == ',') c = ';';
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

// Estimates of one SV path: RV and spot series from streamed windows.
void run_sv_path(const ModelSpec& model, std::size_t L, std::size_t K, std::size_t window,
                 const StudyOptions& options, const StationaryGaussianSampler* fgn,
                 PathResult& out) {
    try {
        auto obs = observe_market_windows(model, L + 1, window, options.fine_dt, out.seed, true, fgn);
        out.h_rv = estimate_series(std::move(obs.rv.values), K, options);
        out.h_iv = estimate_series(std::move(obs.spot), K, options);
    } catch (const NumericalError& e) {
        out.ok = false;
        out.h_rv = kNaN;
        out.h_iv = kNaN;
        out.reason = e.what();
    }
}

void run_sv_cell(const ModelSpec& model, std::size_t L, std::size_t K, std::size_t window,
                 std::size_t n_paths, std::uint64_t base_seed, const StudyOptions& options,
                 ExperimentReport& report) {
    validate(model);
    const std::size_t first = report.raw.size();
    const std::string name = model_name(model);
    const double h = model_hurst(model);
    for (std::size_t i = 0; i < n_paths; ++i) {
        PathResult r;
        r.model = name;
        r.hurst = h;
        r.path = i;
        r.seed = derive_stream_seed(base_seed, i);
        r.target = h;
        report.raw.push_back(std::move(r));
    }
    std::optional<StationaryGaussianSampler> fgn;
    if (const auto* f = std::get_if<FouSvModel>(&model)) {
        fgn.emplace(make_fgn_sampler(f->hurst, (L + 1) * window));
    }
    const StationaryGaussianSampler* shared = fgn ? &*fgn : nullptr;
    fan_out(n_paths, options.threads, [&](std::size_t i) {
        run_sv_path(model, L, K, window, options, shared, report.raw[first + i]);
    });
    report.summaries.push_back(summarize(report.raw, first, n_paths, "rv", &PathResult::h_rv));
    report.summaries.push_back(summarize(report.raw, first, n_paths, "iv", &PathResult::h_iv));
}

void check_sv(std::size_t L, std::size_t K, std::size_t window, std::size_t n_paths,
              const StudyOptions& options) {
    check_study(L, K, n_paths);
    if (window < 2) throw InvalidArgument("RV window must be >= 2");
    if (!(options.fine_dt > 0.0)) throw InvalidArgument("fine step must be positive");
    check_h_grid(options.h_grid);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double prob) {
    if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
    const double pos = prob * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SummaryStats quantiles(std::span<const double> samples) {
    if (samples.empty()) throw InvalidArgument("summary statistics of an empty sample");
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    SummaryStats out;
    out.n = s.size();
    out.min = s.front();
    out.max = s.back();
    out.q1 = quantile_sorted(s, 0.25);
    out.median = quantile_sorted(s, 0.5);
    out.q3 = quantile_sorted(s, 0.75);
    double sum = 0.0;
    for (double v : samples) sum += v;
    out.mean = std::clamp(sum / static_cast<double>(s.size()), out.min, out.max);
    return out;
}

std::vector<std::size_t> histogram_counts(std::span<const double> samples) {
    std::vector<std::size_t> counts(kHistogramBins, 0);
    for (double v : samples) {
        if (std::isnan(v)) continue;
        const double x = std::clamp(v, 0.0, 1.0) * static_cast<double>(kHistogramBins);
        const auto bin = std::min(static_cast<std::size_t>(x), kHistogramBins - 1);
        ++counts[bin];
    }
    return counts;
}

bool ExperimentReport::failure_budget_exceeded() const {
    for (const auto& c : summaries) {
        const std::size_t total = c.failures + c.stats.n;
        if (total > 0 && static_cast<double>(c.failures) >
                             kMaxFailureFraction * static_cast<double>(total)) {
            return true;
        }
    }
    return false;
}

const CellSummary* ExperimentReport::find(double hurst, const std::string& series) const {
    for (const auto& c : summaries) {
        if (c.hurst == hurst && c.series == series) return &c;
    }
    return nullptr;
}

ExperimentReport run_fbm_study(std::span<const double> hurst, std::size_t L, std::size_t K,
                               std::size_t n_paths, std::uint64_t base_seed,
                               const StudyOptions& options) {
    check_study(L, K, n_paths);
    check_h_grid(options.h_grid);
    if (hurst.empty()) throw InvalidArgument("fbm study needs at least one Hurst index");
    for (double h : hurst) check_hurst(h);

    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.spec = ExperimentSpec{"fbm-table", "fbm", {hurst.begin(), hurst.end()}, L, K, 0,
                                 n_paths, base_seed};
    for (double h : hurst) {
        const std::size_t first = report.raw.size();
        for (std::size_t i = 0; i < n_paths; ++i) {
            PathResult r;
            r.model = "fbm";
            r.hurst = h;
            r.path = i;
            r.seed = derive_stream_seed(base_seed, i);
            r.target = h;
            r.h_rv = kNaN;
            report.raw.push_back(std::move(r));
        }
        const StationaryGaussianSampler fgn = make_fgn_sampler(h, L);
        fan_out(n_paths, options.threads, [&](std::size_t i) {
            PathResult& r = report.raw[first + i];
            try {
                const SampledPath path = simulate_fbm(fgn, h, 1.0, r.seed);
                r.h_iv = estimate_roughness(path, K, options.h_grid, estimate_options(options)).h_hat;
            } catch (const NumericalError& e) {
                r.ok = false;
                r.h_iv = kNaN;
                r.reason = e.what();
            }
        });
        report.summaries.push_back(summarize(report.raw, first, n_paths, "path", &PathResult::h_iv));
    }
    report.wall_seconds = seconds_since(t0);
    return report;
}

ExperimentReport run_sv_study(const ModelSpec& model, std::size_t L, std::size_t K,
                              std::size_t window, std::size_t n_paths, std::uint64_t base_seed,
                              const StudyOptions& options) {
    if (std::holds_alternative<FbmModel>(model)) {
        throw InvalidArgument("sv study needs a stochastic volatility model, not fbm");
    }
    validate(model);
    check_sv(L, K, window, n_paths, options);
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.spec = ExperimentSpec{"sv-table", model_name(model), {model_hurst(model)}, L, K, window,
                                 n_paths, base_seed};
    run_sv_cell(model, L, K, window, n_paths, base_seed, options, report);
    report.wall_seconds = seconds_since(t0);
    return report;
}

ExperimentReport run_fou_sweep(std::span<const double> hurst, std::size_t n_paths,
                               std::size_t L, std::size_t K, std::size_t window,
                               std::uint64_t base_seed, const StudyOptions& options) {
    check_sv(L, K, window, n_paths, options);
    if (hurst.empty()) throw InvalidArgument("fou sweep needs at least one Hurst index");
    for (double h : hurst) check_hurst(h);
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.spec = ExperimentSpec{"fou-sweep", "fou-sv", {hurst.begin(), hurst.end()}, L, K, window,
                                 n_paths, base_seed};
    for (double h : hurst) {
        FouSvModel m;
        m.hurst = h;
        run_sv_cell(m, L, K, window, n_paths, base_seed, options, report);
    }
    report.wall_seconds = seconds_since(t0);
    return report;
}

std::vector<KSensitivityPoint> run_k_sensitivity(const SampledPath& path,
                                                 std::span<const std::size_t> k_grid,
                                                 const StudyOptions& options,
                                                 std::vector<std::string>* notes) {
    check_h_grid(options.h_grid);
    const std::size_t L = path.interval_count();
    std::vector<KSensitivityPoint> points;
    for (std::size_t K : k_grid) {
        if (K < 1 || K > L || L % K != 0) {
            if (notes) {
                notes->push_back("skipped K = " + std::to_string(K) + ": does not divide L = " +
                                 std::to_string(L));
            }
            continue;
        }
        points.push_back(KSensitivityPoint{K, 0.0, true, {}});
    }
    if (points.empty()) {
        throw InvalidArgument("no K in the grid divides L = " + std::to_string(L));
    }
    fan_out(points.size(), options.threads, [&](std::size_t i) {
        KSensitivityPoint& pt = points[i];
        try {
            pt.h_hat = estimate_roughness(path, pt.K, options.h_grid, estimate_options(options)).h_hat;
        } catch (const NumericalError& e) {
            pt.ok = false;
            pt.h_hat = kNaN;
            pt.reason = e.what();
        }
    });
    return points;
}

std::string raw_csv(const ExperimentReport& report) {
    CsvWriter w({"model", "hurst", "path", "seed", "target", "h_rv", "h_iv", "status", "reason"});
    for (const auto& r : report.raw) {
        w.row_text({r.model, format_number(r.hurst), std::to_string(r.path), std::to_string(r.seed),
                    format_number(r.target), format_number(r.h_rv), format_number(r.h_iv),
                    r.ok ? "ok" : "failed", clean_reason(r.reason)});
    }
    return w.text();
}

std::string summary_csv(const ExperimentReport& report) {
    CsvWriter w({"model", "hurst", "series", "n", "failures", "min", "q1", "median", "mean", "q3",
                 "max"});
    for (const auto& c : report.summaries) {
        const auto& s = c.stats;
        w.row_text({c.model, format_number(c.hurst), c.series, std::to_string(s.n),
                    std::to_string(c.failures), format_number(s.min), format_number(s.q1),
                    format_number(s.median), format_number(s.mean), format_number(s.q3),
                    format_number(s.max)});
    }
    return w.text();
}

std::string histogram_csv(const ExperimentReport& report) {
    CsvWriter w({"model", "hurst", "series", "bin_lo", "bin_hi", "count"});
    const double width = 1.0 / static_cast<double>(kHistogramBins);
    for (const auto& c : report.summaries) {
        for (std::size_t b = 0; b < c.histogram.size(); ++b) {
            w.row_text({c.model, format_number(c.hurst), c.series,
                        format_number(static_cast<double>(b) * width),
                        format_number(static_cast<double>(b + 1) * width),
                        std::to_string(c.histogram[b])});
        }
    }
    return w.text();
}

std::string band_csv(const ExperimentReport& report) {
    CsvWriter w({"hurst", "series", "mean", "q1", "q3"});
    for (const auto& c : report.summaries) {
        w.row_text({format_number(c.hurst), c.series, format_number(c.stats.mean),
                    format_number(c.stats.q1), format_number(c.stats.q3)});
    }
    return w.text();
}

std::string k_sensitivity_csv(std::span<const KSensitivityPoint> points) {
    CsvWriter w({"K", "h_hat", "status", "reason"});
    for (const auto& p : points) {
        w.row_text({std::to_string(p.K), format_number(p.h_hat), p.ok ? "ok" : "failed",
                    clean_reason(p.reason)});
    }
    return w.text();
}

}  // namespace roughlab
