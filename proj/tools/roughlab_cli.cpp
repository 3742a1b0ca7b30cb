// roughlab: command line front end.
//
//   roughlab simulate   --model fbm --hurst 0.3 --steps 90000 -o fbm.csv
//   roughlab rv         --input market.csv --window 300 -o rv.csv
//   roughlab estimate   --input rv.csv --auto-k --curve-out curve.csv
//   roughlab regress    --input rv.csv --column rv --log-input
//   roughlab experiment fbm-table --paths 50 --seed 42 -o out/fbm
//   roughlab acf        --input err.csv --column value --max-lag 20
//
// Exit codes: 0 ok, 2 usage or validation, 3 numerical failure, 4 I/O.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roughlab/csv.hpp"
#include "roughlab/error.hpp"
#include "roughlab/estimator.hpp"
#include "roughlab/experiments.hpp"
#include "roughlab/parallel.hpp"
#include "roughlab/simulate.hpp"
#include "roughlab/volatility.hpp"

namespace {

using namespace roughlab;

struct Globals {
    std::uint64_t seed = 1;
    std::optional<int> threads;
    std::string config;
    std::string output;
};

// ---------------------------------------------------------------------------
// config file: key=value per line, '#' starts a comment line

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(path, line_no, "expected key=value");
        std::string key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        if (key.empty()) throw ParseError(path, line_no, "empty key");
        if (key == "config") throw ParseError(path, line_no, "config files cannot nest");
        pairs.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return pairs;
}

// Appends config entries whose flag is absent from the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
    }
    if (config.empty()) return args;
    auto present = [&](const std::string& key) {
        const std::string flag = "--" + key;
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    std::vector<std::string> extra;
    for (const auto& [key, value] : read_config(config)) {
        if (present(key)) continue;
        extra.push_back(value.empty() ? "--" + key : "--" + key + "=" + value);
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

// ---------------------------------------------------------------------------
// helpers

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    auto to_size = [&](const std::string& s) -> std::size_t {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw InvalidArgument(std::string(what) + ": '" + s + "' is not an integer");
        }
        if (pos != s.size() || v < 1) {
            throw InvalidArgument(std::string(what) + ": '" + s + "' is not a positive integer");
        }
        return static_cast<std::size_t>(v);
    };
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dash = item.find_first_of("-:", 1);
        if (dash == std::string::npos) {
            out.push_back(to_size(item));
            continue;
        }
        const std::size_t a = to_size(item.substr(0, dash));
        const std::size_t b = to_size(item.substr(dash + 1));
        if (b < a) throw InvalidArgument(std::string(what) + ": empty range '" + item + "'");
        for (std::size_t v = a; v <= b; ++v) out.push_back(v);
    }
    if (out.empty()) throw InvalidArgument(std::string(what) + " is empty");
    return out;
}

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

EstimationMethod parse_method(std::string m) {
    std::replace(m.begin(), m.end(), '_', '-');
    if (m == "single-t") return EstimationMethod::SingleT;
    if (m == "least-squares") return EstimationMethod::LeastSquares;
    throw InvalidArgument("--method must be single-t or least-squares");
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

void require_writable(const std::string& path) {
    if (!path.empty() && path != "-") check_writable(path);
}

// Chooses a data column: explicit name, else the first of `fallbacks` present.
std::vector<double> pick_column(const CsvTable& table, const std::string& name,
                                std::initializer_list<const char*> fallbacks,
                                std::string* chosen = nullptr) {
    if (!name.empty()) {
        if (chosen) *chosen = name;
        return table.column(name);
    }
    for (const char* f : fallbacks) {
        if (table.find(f) != CsvTable::npos) {
            if (chosen) *chosen = f;
            return table.column(f);
        }
    }
    // Single non-time column files need no name.
    std::vector<std::size_t> data;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] != "time" && table.header[i] != "timestamp") data.push_back(i);
    }
    if (data.size() == 1) {
        if (chosen) *chosen = table.header[data[0]];
        return table.columns[data[0]];
    }
    throw InvalidArgument("cannot tell which column to use; pass --column");
}

const std::vector<double>* time_column(const CsvTable& table) {
    for (const char* name : {"time", "timestamp"}) {
        if (table.find(name) != CsvTable::npos) return &table.column(name);
    }
    return nullptr;
}

// Observed series with its own time column if present, else sample index.
SampledPath load_series(const CsvTable& table, const std::vector<double>& values) {
    if (values.size() < 2) throw InvalidArgument("series needs at least 2 rows");
    if (const auto* t = time_column(table)) return SampledPath(*t, values);
    std::vector<double> idx(values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    return SampledPath(std::move(idx), values);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string model;
    double hurst = 0.5;
    std::size_t steps = 0;
    double horizon = 1.0;
    double gamma = 1.0;
    double theta = 1.0;
    double sigma0 = 1.0;
    double y0 = 0.0;
};

ModelSpec build_model(const SimulateArgs& a) {
    std::string m = a.model;
    std::replace(m.begin(), m.end(), '_', '-');
    ModelSpec spec;
    if (m == "fbm") {
        spec = FbmModel{a.hurst};
    } else if (m == "abs-bm-vol") {
        spec = AbsBmVolModel{};
    } else if (m == "ou-sv") {
        spec = OuSvModel{a.gamma, a.theta, a.sigma0, a.y0};
    } else if (m == "fou-sv") {
        spec = FouSvModel{a.hurst, a.gamma, a.theta, a.sigma0, a.y0};
    } else {
        throw InvalidArgument("unknown model '" + a.model + "' (fbm, abs-bm-vol, ou-sv, fou-sv)");
    }
    validate(spec);
    return spec;
}

int cmd_simulate(const SimulateArgs& a, const Globals& g) {
    const ModelSpec model = build_model(a);
    if (a.steps < 2) throw InvalidArgument("--steps must be >= 2");
    check_positive(a.horizon, "--horizon");
    require_writable(g.output);

    const SimulatedMarket market = simulate_market(model, a.steps, a.horizon, g.seed);
    CsvWriter w({"time", "price", "log_price", "spot_vol"});
    const auto t = market.log_price.times();
    const auto x = market.log_price.values();
    const auto s = market.price.values();
    const auto v = market.spot_vol.values();
    for (std::size_t i = 0; i < t.size(); ++i) w.row({t[i], s[i], x[i], v[i]});
    emit(g.output, w.text());
    return 0;
}

// ---------------------------------------------------------------------------
// rv

struct RvArgs {
    std::string input;
    std::size_t window = 300;
    std::size_t step = 0;
    bool normalized = true;
    bool log = false;
};

int cmd_rv(const RvArgs& a, const Globals& g) {
    if (a.window < 2) throw InvalidArgument("--window must be >= 2");
    require_writable(g.output);
    const CsvTable table = read_csv(a.input);
    const auto* t = time_column(table);
    if (t == nullptr) throw InvalidArgument("input needs a 'time' or 'timestamp' column");
    const auto& price = table.column("price");
    if (price.size() < a.window + 1) {
        throw InvalidArgument("input has " + std::to_string(price.size()) +
                              " rows; the window needs at least " + std::to_string(a.window + 1));
    }
    std::vector<double> x(price.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(price[i] > 0.0)) {
            throw InvalidArgument("price must be positive for log returns (row " +
                                  std::to_string(i + 2) + ")");
        }
        x[i] = std::log(price[i]);
    }
    const RVSeries rv =
        realized_vol_series(SampledPath(*t, std::move(x)), a.window, a.step == 0 ? a.window : a.step,
                            a.normalized);
    CsvWriter w({"time", a.log ? "log_rv" : "rv"});
    for (std::size_t k = 0; k < rv.size(); ++k) {
        double v = rv.values[k];
        if (a.log) {
            if (!(v > 0.0)) {
                throw DegenerateSeries("window " + std::to_string(k) +
                                       " has zero realized volatility; its log is undefined");
            }
            v = std::log(v);
        }
        w.row({rv.times[k], v});
    }
    emit(g.output, w.text());
    return 0;
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateArgs {
    std::string input;
    std::string column;
    std::size_t k = 0;
    bool auto_k = false;
    std::string method = "single-t";
    std::string curve_out;
    bool epsilon_guard = false;
};

int cmd_estimate(const EstimateArgs& a, const Globals& g, int threads) {
    EstimateOptions opts;
    opts.method = parse_method(a.method);
    if (a.auto_k && a.k != 0) throw InvalidArgument("--k and --auto-k are exclusive");
    opts.statistic.epsilon_guard = a.epsilon_guard;
    opts.threads = threads;
    require_writable(a.curve_out);
    require_writable(g.output);

    const CsvTable table = read_csv(a.input);
    std::string chosen;
    const auto values = pick_column(table, a.column, {"value", "rv", "log_rv", "log_price"}, &chosen);
    const SampledPath path = load_series(table, values).rescaled_to_unit();
    const std::size_t L = path.interval_count();
    const std::size_t K = a.k != 0 ? a.k : default_block_count(L);
    if (K > L || L % K != 0) {
        throw InvalidArgument("K = " + std::to_string(K) + " does not divide L = " + std::to_string(L) +
                              " (try --auto-k)");
    }
    const auto grid = default_h_grid();
    const RoughnessEstimate est = estimate_roughness(path, K, grid, opts);

    std::ostringstream out;
    out << "column    " << chosen << '\n'
        << "h_hat     " << format_number(est.h_hat) << '\n'
        << "p_hat     " << format_number(est.p_hat) << '\n'
        << "method    " << to_string(est.method) << '\n'
        << "K         " << est.block_count << '\n'
        << "L         " << est.sample_count << '\n'
        << "residual  " << format_number(est.residual) << '\n';
    if (est.method == EstimationMethod::SingleT) {
        out << "crossings " << est.sign_changes << '\n';
    } else if (est.at_boundary) {
        out << "warning   minimizer on the edge of the H grid\n";
    }
    if (!a.curve_out.empty()) {
        CsvWriter w({"H", "log_W"});
        for (std::size_t i = 0; i < est.curve.size(); ++i) {
            w.row({est.curve.h_grid[i], est.curve.log_w[i]});
        }
        emit(a.curve_out, w.text());
    }
    emit(g.output, out.str());
    return 0;
}

// ---------------------------------------------------------------------------
// regress

struct RegressArgs {
    std::string input;
    std::string column;
    std::vector<double> q_grid = default_q_grid();
    std::string delta_grid = "1-50";
    bool log_input = false;
};

int cmd_regress(const RegressArgs& a, const Globals& g) {
    const auto deltas = parse_size_list(a.delta_grid, "--delta-grid");
    for (double q : a.q_grid) check_positive(q, "--q-grid entries");
    require_writable(g.output);

    const CsvTable table = read_csv(a.input);
    std::string chosen;
    auto series = pick_column(table, a.column, {"value", "rv", "log_rv", "spot_vol"}, &chosen);
    if (a.log_input) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (!(series[i] > 0.0)) {
                throw InvalidArgument("--log-input needs positive values (row " +
                                      std::to_string(i + 2) + ")");
            }
            series[i] = std::log(series[i]);
        }
    }
    const auto est = log_regression_estimate(series, a.q_grid, deltas);
    for (const auto& w : est.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "column " << chosen << (a.log_input ? " (log)" : "") << '\n';
    std::cout << "q,xi,log_C\n";
    for (std::size_t i = 0; i < est.q_grid.size(); ++i) {
        std::cout << format_number(est.q_grid[i]) << ',' << format_number(est.xi[i]) << ','
                  << format_number(est.intercepts[i]) << '\n';
    }
    std::cout << "H_R " << format_number(est.h_hat_r) << '\n';
    if (!g.output.empty()) {
        CsvWriter w({"q", "delta", "log_delta", "log_m"});
        for (std::size_t i = 0; i < est.q_grid.size(); ++i) {
            for (std::size_t j = 0; j < est.delta_grid.size(); ++j) {
                w.row({est.q_grid[i], static_cast<double>(est.delta_grid[j]),
                       std::log(static_cast<double>(est.delta_grid[j])), est.log_m[i][j]});
            }
        }
        emit(g.output, w.text());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentArgs {
    std::string name;
    std::optional<std::size_t> paths;
    std::optional<std::size_t> L;
    std::optional<std::size_t> K;
    std::optional<std::size_t> window;
    std::vector<double> hurst;
    std::string model = "ou-sv";
    std::string k_grid;
    std::string method = "single-t";
};

void print_summary(const ExperimentReport& r) {
    std::printf("%-10s %-6s %-6s %5s %5s %8s %8s %8s %8s %8s %8s\n", "model", "H", "series", "n",
                "fail", "min", "q1", "median", "mean", "q3", "max");
    for (const auto& c : r.summaries) {
        const auto& s = c.stats;
        std::printf("%-10s %-6.3g %-6s %5zu %5zu %8.4f %8.4f %8.4f %8.4f %8.4f %8.4f\n",
                    c.model.c_str(), c.hurst, c.series.c_str(), s.n, c.failures, s.min, s.q1,
                    s.median, s.mean, s.q3, s.max);
    }
}

int cmd_experiment(const ExperimentArgs& a, const Globals& g, int threads) {
    const std::string& n = a.name;
    if (n != "fbm-table" && n != "sv-table" && n != "fou-sweep" && n != "k-sensitivity") {
        throw InvalidArgument("unknown experiment '" + n +
                              "' (fbm-table, sv-table, fou-sweep, k-sensitivity)");
    }
    StudyOptions opts;
    opts.threads = threads;
    opts.method = parse_method(a.method);
    const std::string prefix = g.output.empty() ? n : g.output;
    const std::size_t L = a.L.value_or(90000);
    const std::size_t K = a.K.value_or(300);
    const std::size_t window = a.window.value_or(300);
    for (const char* suffix : {"_raw.csv", "_summary.csv", "_hist.csv", "_band.csv"}) {
        require_writable(prefix + suffix);
    }

    if (n == "k-sensitivity") {
        const double h = a.hurst.empty() ? 0.1 : a.hurst.front();
        if (!(h > 0.0 && h < 1.0)) throw InvalidArgument("Hurst index must lie in (0, 1)");
        if (L < 2) throw InvalidArgument("--L must be >= 2");
        const auto grid = a.k_grid.empty() ? divisors_in(L, std::max<std::size_t>(1, K / 2), 2 * K)
                                           : parse_size_list(a.k_grid, "--k-grid");
        const SampledPath path = simulate_fbm(h, L, 1.0, g.seed);
        std::vector<std::string> notes;
        const auto points = run_k_sensitivity(path, grid, opts, &notes);
        for (const auto& note : notes) std::cerr << "note: " << note << '\n';
        std::vector<double> ok;
        for (const auto& p : points) {
            if (p.ok) ok.push_back(p.h_hat);
        }
        std::printf("%8s %10s\n", "K", "h_hat");
        for (const auto& p : points) {
            std::printf("%8zu %10.4f%s\n", p.K, p.h_hat, p.ok ? "" : "  (failed)");
        }
        write_file(prefix + "_raw.csv", k_sensitivity_csv(points));
        CsvWriter w({"hurst", "L", "n", "min", "q1", "median", "mean", "q3", "max"});
        if (!ok.empty()) {
            const auto s = quantiles(ok);
            w.row({h, static_cast<double>(L), static_cast<double>(s.n), s.min, s.q1, s.median,
                   s.mean, s.q3, s.max});
        }
        write_file(prefix + "_summary.csv", w.text());
        return ok.empty() ? exit_code(ErrorKind::Numerical) : 0;
    }

    ExperimentReport report;
    if (n == "fbm-table") {
        const std::vector<double> h = a.hurst.empty() ? std::vector<double>{0.1, 0.3, 0.5, 0.8} : a.hurst;
        report = run_fbm_study(h, L, K, a.paths.value_or(50), g.seed, opts);
    } else if (n == "sv-table") {
        SimulateArgs sa;
        sa.model = a.model;
        if (!a.hurst.empty()) sa.hurst = a.hurst.front();
        report = run_sv_study(build_model(sa), L, K, window, a.paths.value_or(100), g.seed, opts);
    } else {
        const std::vector<double> h = a.hurst.empty()
                                          ? std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}
                                          : a.hurst;
        report = run_fou_sweep(h, a.paths.value_or(100), L, K, window, g.seed, opts);
    }
    write_file(prefix + "_raw.csv", raw_csv(report));
    write_file(prefix + "_summary.csv", summary_csv(report));
    write_file(prefix + "_hist.csv", histogram_csv(report));
    if (n == "fou-sweep") write_file(prefix + "_band.csv", band_csv(report));
    print_summary(report);
    std::fprintf(stderr, "wall time %.1f s\n", report.wall_seconds);
    if (report.failure_budget_exceeded()) {
        std::cerr << "error: more than 10% of paths failed in some cell; outputs kept\n";
        return exit_code(ErrorKind::Numerical);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// acf

struct AcfArgs {
    std::string input;
    std::string column;
    std::size_t max_lag = 20;
};

int cmd_acf(const AcfArgs& a, const Globals& g) {
    require_writable(g.output);
    const CsvTable table = read_csv(a.input);
    const auto series = pick_column(table, a.column, {"value", "error"});
    const auto r = acf(series, a.max_lag);
    CsvWriter w({"lag", "acf"});
    for (std::size_t k = 0; k < r.size(); ++k) w.row({static_cast<double>(k), r[k]});
    emit(g.output, w.text());
    return 0;
}

int run(int argc, char** argv) {
    Globals g;
    SimulateArgs sim;
    RvArgs rv;
    EstimateArgs est;
    RegressArgs reg;
    ExperimentArgs exp;
    AcfArgs ac;

    CLI::App app{"Pathwise roughness estimation and realized volatility experiments", "roughlab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (default: ROUGHLAB_THREADS, then all cores)");
    app.add_option("--config", g.config, "key=value file supplying long flags");
    app.add_option("-o,--output", g.output, "Output file (or prefix for experiment)");

    auto* s = app.add_subcommand("simulate", "Simulate a model and write a market CSV");
    s->add_option("--model", sim.model, "fbm, abs-bm-vol, ou-sv or fou-sv")->required();
    s->add_option("--hurst", sim.hurst, "Hurst index (fbm, fou-sv)")->capture_default_str();
    s->add_option("--steps", sim.steps, "Number of intervals")->required();
    s->add_option("--horizon", sim.horizon, "Time horizon")->capture_default_str();
    s->add_option("--gamma", sim.gamma, "Mean reversion of log vol")->capture_default_str();
    s->add_option("--theta", sim.theta, "Vol of log vol")->capture_default_str();
    s->add_option("--sigma0", sim.sigma0, "Vol level")->capture_default_str();
    s->add_option("--y0", sim.y0, "Initial log vol")->capture_default_str();

    auto* r = app.add_subcommand("rv", "Realized volatility series from a price CSV");
    r->add_option("-i,--input", rv.input, "CSV with time and price columns")->required();
    r->add_option("--window", rv.window, "Samples per window")->capture_default_str();
    r->add_option("--step", rv.step, "Samples between window starts (default: window)");
    r->add_flag("--normalized,!--no-normalized", rv.normalized,
                "Divide by sqrt(window duration)")
        ->capture_default_str();
    r->add_flag("--log", rv.log, "Emit log rv");

    auto* e = app.add_subcommand("estimate", "Roughness index of a series");
    e->add_option("-i,--input", est.input, "CSV series")->required();
    e->add_option("--column", est.column, "Value column");
    e->add_option("--k", est.k, "Number of coarse blocks K");
    e->add_flag("--auto-k", est.auto_k, "Pick K near sqrt(L) (default when --k is absent)");
    e->add_option("--method", est.method, "single-t or least-squares")->capture_default_str();
    e->add_option("--curve-out", est.curve_out, "Write the (H, log W) curve");
    e->add_flag("--epsilon-guard", est.epsilon_guard, "Guard zero block denominators");

    auto* q = app.add_subcommand("regress", "Log-regression roughness estimate H_R");
    q->add_option("-i,--input", reg.input, "CSV series")->required();
    q->add_option("--column", reg.column, "Value column");
    q->add_option("--q-grid", reg.q_grid, "Moment orders")->delimiter(',')->capture_default_str();
    q->add_option("--delta-grid", reg.delta_grid, "Lags, e.g. 1-50 or 1,2,4")->capture_default_str();
    q->add_flag("--log-input", reg.log_input, "Take logs of the series first");

    auto* x = app.add_subcommand("experiment", "Reproduce a Monte Carlo study");
    x->add_option("name", exp.name, "fbm-table, sv-table, fou-sweep or k-sensitivity")->required();
    x->add_option("--paths", exp.paths, "Paths per cell");
    x->add_option("-L,--L", exp.L, "Series length (intervals)");
    x->add_option("-K,--K", exp.K, "Number of coarse blocks");
    x->add_option("--window", exp.window, "RV window in fine samples (sv studies)");
    x->add_option("--hurst", exp.hurst, "Hurst indices")->delimiter(',');
    x->add_option("--model", exp.model, "sv-table model: abs-bm-vol, ou-sv or fou-sv")
        ->capture_default_str();
    x->add_option("--k-grid", exp.k_grid, "k-sensitivity grid, e.g. 150-600");
    x->add_option("--method", exp.method, "single-t or least-squares")->capture_default_str();

    auto* c = app.add_subcommand("acf", "Sample autocorrelation of a series");
    c->add_option("-i,--input", ac.input, "CSV series")->required();
    c->add_option("--column", ac.column, "Value column");
    c->add_option("--max-lag", ac.max_lag, "Largest lag")->capture_default_str();

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(std::move(args));
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return exit_code(err.kind());
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : exit_code(ErrorKind::InvalidArgument);
    }

    try {
        const int threads = resolve_threads(g.threads);
        if (s->parsed()) return cmd_simulate(sim, g);
        if (r->parsed()) return cmd_rv(rv, g);
        if (e->parsed()) return cmd_estimate(est, g, threads);
        if (q->parsed()) return cmd_regress(reg, g);
        if (x->parsed()) return cmd_experiment(exp, g, threads);
        if (c->parsed()) return cmd_acf(ac, g);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return exit_code(err.kind());
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return exit_code(ErrorKind::Numerical);
    }
    return exit_code(ErrorKind::InvalidArgument);
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
