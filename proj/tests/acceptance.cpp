// Acceptance runner: one PASS/FAIL line per criterion, details indented below.
// Usage: acceptance [--slow] [criterion numbers...]
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "roughlab/error.hpp"
#include "roughlab/estimator.hpp"
#include "roughlab/experiments.hpp"
#include "roughlab/fgn.hpp"
#include "roughlab/pathvar.hpp"
#include "roughlab/random.hpp"
#include "roughlab/simulate.hpp"
#include "roughlab/volatility.hpp"

namespace fs = std::filesystem;
using namespace roughlab;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        detail << "    [" << (cond ? "ok" : "MISS") << "] " << what << '\n';
        ok = ok && cond;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

std::string band(double v, double target, double tol) {
    return fmt(v) + " vs " + fmt(target) + " +/- " + fmt(tol);
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return quantile_sorted(v, 0.5);
}

void describe_failures(Check& c, const ExperimentReport& r) {
    for (const auto& s : r.summaries) {
        if (s.failures > 0) {
            c.detail << "    note: H=" << s.hurst << " " << s.series << " lost " << s.failures
                     << " path(s)\n";
        }
    }
}

Check criterion1() {
    Check c;
    const std::vector<double> hurst{0.1, 0.3, 0.5, 0.8};
    const std::vector<double> target{0.1009, 0.2976, 0.4978, 0.7891};
    const auto r = run_fbm_study(hurst, 90000, 300, 50, kSeed);
    describe_failures(c, r);
    for (std::size_t i = 0; i < hurst.size(); ++i) {
        const auto* s = r.find(hurst[i], "path");
        c.expect(s && s->stats.n > 0 && within(s->stats.mean, target[i], 0.02),
                 "H=" + fmt(hurst[i]) + " mean " + band(s ? s->stats.mean : NAN, target[i], 0.02));
    }
    return c;
}

Check criterion2() {
    Check c;
    const std::vector<double> hurst{0.1};
    const auto r = run_fbm_study(hurst, 4000000, 2000, 10, kSeed);
    describe_failures(c, r);
    const auto* s = r.find(0.1, "path");
    const double m = s ? s->stats.mean : NAN;
    c.expect(m > 0.085 && m < 0.115, "mean " + fmt(m) + " in (0.085, 0.115)");
    return c;
}

Check criterion3() {
    Check c;
    const auto r = run_sv_study(OuSvModel{}, 90000, 300, 300, 100, kSeed);
    describe_failures(c, r);
    const auto* rv = r.find(0.5, "rv");
    const auto* iv = r.find(0.5, "iv");
    if (!rv || !iv || rv->stats.n == 0 || iv->stats.n == 0) {
        c.expect(false, "no successful paths");
        return c;
    }
    c.expect(within(rv->stats.mean, 0.137, 0.03), "RV mean " + band(rv->stats.mean, 0.137, 0.03));
    c.expect(within(iv->stats.mean, 0.557, 0.03), "IV mean " + band(iv->stats.mean, 0.557, 0.03));
    c.expect(rv->stats.q3 < iv->stats.q1,
             "RV q3 " + fmt(rv->stats.q3) + " < IV q1 " + fmt(iv->stats.q1));
    return c;
}

Check criterion4() {
    Check c;
    const auto r = run_sv_study(AbsBmVolModel{}, 250000, 500, 300, 25, kSeed);
    describe_failures(c, r);
    const auto* rv = r.find(0.5, "rv");
    const auto* iv = r.find(0.5, "iv");
    const double mrv = rv ? rv->stats.median : NAN;
    const double miv = iv ? iv->stats.median : NAN;
    c.expect(within(mrv, 0.27, 0.05), "RV median " + band(mrv, 0.27, 0.05));
    c.expect(within(miv, 0.49, 0.05), "sigma median " + band(miv, 0.49, 0.05));
    return c;
}

Check criterion5() {
    Check c;
    const std::vector<double> hurst{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
    const auto r = run_fou_sweep(hurst, 20, 90000, 300, 300, kSeed);
    describe_failures(c, r);
    for (double h : hurst) {
        const auto* rv = r.find(h, "rv");
        const auto* iv = r.find(h, "iv");
        const double mrv = rv && rv->stats.n ? rv->stats.mean : NAN;
        const double miv = iv && iv->stats.n ? iv->stats.mean : NAN;
        c.expect(within(miv, h, 0.05), "H=" + fmt(h) + " IV mean " + band(miv, h, 0.05));
        c.expect(mrv <= 0.3, "H=" + fmt(h) + " RV mean " + fmt(mrv) + " <= 0.3");
    }
    const struct {
        double h, iv, rv;
    } rows[] = {{0.5, 0.507, 0.130}, {0.8, 0.756, 0.052}};
    for (const auto& row : rows) {
        const auto* rv = r.find(row.h, "rv");
        const auto* iv = r.find(row.h, "iv");
        const double mrv = rv && rv->stats.n ? rv->stats.mean : NAN;
        const double miv = iv && iv->stats.n ? iv->stats.mean : NAN;
        c.expect(within(miv, row.iv, 0.05), "row H=" + fmt(row.h) + " IV " + band(miv, row.iv, 0.05));
        c.expect(within(mrv, row.rv, 0.05), "row H=" + fmt(row.h) + " RV " + band(mrv, row.rv, 0.05));
    }
    return c;
}

Check criterion6() {
    Check c;
    constexpr std::size_t steps = 250000;
    constexpr std::size_t window = 300;
    constexpr std::size_t seeds = 25;
    const auto q = default_q_grid();
    const auto d = default_delta_grid();
    std::vector<double> hiv, hrv;
    for (std::size_t i = 0; i < seeds; ++i) {
        const auto market = simulate_market(AbsBmVolModel{}, steps,
                                            static_cast<double>(steps) * kTradingSecond,
                                            derive_stream_seed(kSeed, i));
        const auto sigma = market.spot_vol.values();
        hiv.push_back(log_regression_estimate(sigma, q, d).h_hat_r);
        const auto rv = realized_vol_series(market.log_price, window, window, true);
        std::vector<double> log_rv(rv.values.size());
        for (std::size_t k = 0; k < log_rv.size(); ++k) log_rv[k] = std::log(rv.values[k]);
        hrv.push_back(log_regression_estimate(log_rv, q, d).h_hat_r);
    }
    const double miv = median_of(hiv);
    const double mrv = median_of(hrv);
    c.expect(within(miv, 0.499, 0.03), "H_R(sigma) median " + band(miv, 0.499, 0.03));
    c.expect(within(mrv, 0.342, 0.05), "H_R(log RV) median " + band(mrv, 0.342, 0.05));
    return c;
}

double max_identity_gap(const SampledPath& path, std::size_t K, double p) {
    const BlockedIncrements inc(path, K);
    std::vector<double> prefix(K);
    inc.log_statistic_prefix(p, prefix);
    double gap = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
        gap = std::max(gap, std::abs(std::exp(prefix[j]) - (inc.block_end(j) - inc.start())));
    }
    return gap;
}

Check criterion7() {
    Check c;
    constexpr std::size_t seeds = 20;

    std::size_t thm22 = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < seeds; ++i) {
        const auto bm = simulate_fbm(0.5, 90000, 1.0, derive_stream_seed(kSeed + 1, i));
        const double gap = max_identity_gap(bm, 300, 2.0);
        worst = std::max(worst, gap);
        if (gap <= 0.1) ++thm22;
    }
    c.expect(thm22 == seeds, "BM p=2 max|W(t)-t| <= 0.1 in " + std::to_string(thm22) +
                                 "/20 seeds (worst " + fmt(worst) + ")");

    // One fine path per seed, observed along the nested partitions L | 900000
    // with K fixed, so only the block size m = L / K grows.
    const std::size_t Ls[] = {9000, 90000, 900000};
    constexpr std::size_t K = 300;
    std::size_t dec2 = 0, inc5 = 0;
    for (std::size_t i = 0; i < seeds; ++i) {
        const auto fine = simulate_fbm(0.3, Ls[2], 1.0, derive_stream_seed(kSeed + 2, i));
        double w2[3], w5[3];
        for (int j = 0; j < 3; ++j) {
            const std::size_t stride = Ls[2] / Ls[j];
            std::vector<double> v;
            for (std::size_t k = 0; k <= Ls[2]; k += stride) v.push_back(fine.values()[k]);
            const BlockedIncrements inc(SampledPath::uniform(std::move(v), 1.0), K);
            w2[j] = inc.log_statistic(2.0, K);
            w5[j] = inc.log_statistic(5.0, K);
        }
        if (w2[0] > w2[1] && w2[1] > w2[2]) ++dec2;
        if (w5[0] < w5[1] && w5[1] < w5[2]) ++inc5;
    }
    c.expect(dec2 >= 18, "fBM H=0.3 q=2 decreasing in L: " + std::to_string(dec2) + "/20 (>= 18)");
    c.expect(inc5 >= 18, "fBM H=0.3 q=5 increasing in L: " + std::to_string(inc5) + "/20 (>= 18)");

    double block_gap = 0.0;
    bool block_ok = true;
    for (std::size_t i = 0; i < seeds; ++i) {
        const std::size_t n = 1000 + 50 * i;
        const auto path = simulate_fbm(0.3, n, 1.0, derive_stream_seed(kSeed + 3, i));
        for (double p : {1.0, 2.0, 3.5}) {
            const double gap = max_identity_gap(path, n, p);
            block_gap = std::max(block_gap, gap / static_cast<double>(n));
            block_ok = block_ok && gap <= 1e-12 * static_cast<double>(n);
        }
    }
    c.expect(block_ok, "K=L identity, worst gap/N " + std::to_string(block_gap));

    const auto grid = default_h_grid();
    double inv_gap = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        const auto path = simulate_fbm(0.3, 90000, 1.0, derive_stream_seed(kSeed + 4, i));
        const double h0 = estimate_roughness(path, 300, grid).h_hat;
        for (auto [a, b] : {std::pair{3.7, 0.0}, std::pair{-0.02, 5.0}, std::pair{1e3, -7.0}}) {
            auto v = std::vector<double>(path.values().begin(), path.values().end());
            for (double& x : v) x = a * x + b;
            const double h1 = estimate_roughness(path.with_values(std::move(v)), 300, grid).h_hat;
            inv_gap = std::max(inv_gap, std::abs(h1 - h0));
        }
    }
    c.expect(inv_gap <= 1e-9, "scale/affine invariance, worst |dh| " + std::to_string(inv_gap));

    constexpr std::size_t n = 64, reps = 2000, max_lag = 5;
    bool fgn_ok = true;
    double worst_z = 0.0;
    for (double h : {0.1, 0.3, 0.5, 0.8}) {
        const auto sampler = make_fgn_sampler(h, n);
        std::vector<double> sum(max_lag + 1, 0.0), sum2(max_lag + 1, 0.0);
        for (std::size_t r = 0; r < reps; ++r) {
            NormalStream normals(derive_stream_seed(kSeed + 5, r));
            const auto x = sampler.sample(normals);
            for (std::size_t k = 0; k <= max_lag; ++k) {
                double acc = 0.0;
                for (std::size_t t = 0; t + k < n; ++t) acc += x[t] * x[t + k];
                acc /= static_cast<double>(n - k);
                sum[k] += acc;
                sum2[k] += acc * acc;
            }
        }
        for (std::size_t k = 0; k <= max_lag; ++k) {
            const double mean = sum[k] / reps;
            const double var = (sum2[k] / reps - mean * mean) * reps / (reps - 1.0);
            const double se = std::sqrt(var / reps);
            const double z = std::abs(mean - fgn_autocovariance(h, k)) / se;
            worst_z = std::max(worst_z, z);
            fgn_ok = fgn_ok && z <= 3.0;
        }
    }
    c.expect(fgn_ok, "fGN autocovariance within 3 SE, worst z " + fmt(worst_z));
    return c;
}

int run_cli(const std::string& args) {
    const std::string cmd = "'" ROUGHLAB_CLI "' " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Check criterion8() {
    Check c;
    const fs::path dir = fs::temp_directory_path() / "roughlab_acceptance_threads";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const struct {
        std::string name, args;
        std::vector<std::string> files;
    } runs[] = {
        {"fbm-table", "--paths 6", {"_raw.csv", "_summary.csv", "_hist.csv"}},
        {"sv-table", "--model ou-sv --paths 4 -L 8100 -K 90", {"_raw.csv", "_summary.csv", "_hist.csv"}},
        {"fou-sweep", "--paths 3 -L 8100 -K 90 --hurst 0.2,0.4",
         {"_raw.csv", "_summary.csv", "_hist.csv", "_band.csv"}},
    };
    for (const auto& run : runs) {
        std::vector<std::string> outputs;
        for (int threads : {1, 2, 4}) {
            const std::string prefix = (dir / (run.name + std::to_string(threads))).string();
            const int code = run_cli("experiment " + run.name + " " + run.args + " --seed 5 --threads " +
                                     std::to_string(threads) + " -o '" + prefix + "'");
            c.expect(code == 0, run.name + " --threads " + std::to_string(threads) + " exit " +
                                    std::to_string(code));
            std::string all;
            for (const auto& f : run.files) all += slurp(prefix + f);
            outputs.push_back(all);
        }
        c.expect(!outputs[0].empty() && outputs[0] == outputs[1] && outputs[1] == outputs[2],
                 run.name + " CSVs identical across --threads 1/2/4");
    }
    fs::remove_all(dir);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    bool slow = false;
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--slow") {
            slow = true;
        } else {
            only.insert(std::atoi(a.c_str()));
        }
    }
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"fBM estimator accuracy at L=90000 K=300", criterion1},
        {"high-frequency fBM at L=4e6 K=2000", criterion2},
        {"OU-SV separation of RV and IV estimates", criterion3},
        {"|BM|-vol medians over 25 seeds", criterion4},
        {"fOU sweep", criterion5},
        {"log-regression replication", criterion6},
        {"theorem suites", criterion7},
        {"experiment CSVs independent of thread count", criterion8},
    };
    // With --slow only the slow criterion runs; the default run skips it.
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        const bool is_slow = id == 2;
        if (!only.empty() && !only.count(id)) continue;
        if (only.empty() && is_slow != slow) {
            if (is_slow) std::cout << "SKIP criterion 2: " << criteria[i].first << " (needs --slow)\n";
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[i].first
                  << " (" << fmt(secs) << " s)\n"
                  << c.detail.str() << std::flush;
        if (!c.ok) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
