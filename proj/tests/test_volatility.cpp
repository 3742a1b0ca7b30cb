#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "roughlab/error.hpp"
#include "roughlab/simulate.hpp"
#include "roughlab/volatility.hpp"

using namespace roughlab;

namespace {

bool bitwise_equal(std::span<const double> a, std::span<const double> b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Constant volatility sigma0 (OU noise switched off).
OuSvModel constant_vol(double sigma) { return OuSvModel{1.0, 1e-300, sigma, 0.0}; }

}  // namespace

TEST_CASE("realized_variance") {
    const auto flat = SampledPath::uniform(std::vector<double>(11, 2.0));
    CHECK(realized_variance(flat, 1.0) == 0.0);
    const auto p = SampledPath::uniform({0.0, 0.1, 0.0, 0.2});
    CHECK(realized_variance(p, 1.0) == doctest::Approx(0.06).epsilon(1e-14));
    CHECK(realized_variance(p, 0.0) == 0.0);
    CHECK(realized_variance(p, 0.5) == doctest::Approx(0.01));
    CHECK_THROWS_AS(realized_variance(p, 1.5), InvalidArgument);
    CHECK_THROWS_AS(realized_variance(p, -0.5), InvalidArgument);

    const auto m = simulate_market(OuSvModel{}, 1000, 1.0, 2);
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double rv = realized_variance(m.log_price, i / 100.0);
        CHECK(rv >= prev);
        prev = rv;
    }
}

TEST_CASE("realized_vol_series counting and zeros") {
    const auto m = simulate_market(OuSvModel{}, 9000, 1.0, 3);
    CHECK(realized_vol_series(m.log_price, 300, 300).size() == 30);
    CHECK(realized_vol_series(m.log_price, 300, 1).size() == 9000 - 300 + 1);
    CHECK(realized_vol_series(m.log_price, 400, 400).size() == 22);
    CHECK_THROWS_AS(realized_vol_series(m.log_price, 9001, 1), InvalidArgument);
    CHECK_THROWS_AS(realized_vol_series(m.log_price, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(realized_vol_series(m.log_price, 10, 0), InvalidArgument);

    std::vector<double> x(601, 0.0);
    for (std::size_t i = 301; i <= 600; ++i) x[i] = 0.01 * static_cast<double>(i % 7);
    const auto rv = realized_vol_series(SampledPath::uniform(x), 300, 300);
    CHECK(rv.values[0] == 0.0);
    CHECK(rv.values[1] > 0.0);
    CHECK(rv.times[1] == 1.0);
}

TEST_CASE("normalized RV recovers a constant volatility") {
    const auto m = simulate_market(constant_vol(0.2), 90000, 1.0, 7);
    const auto rv = realized_vol_series(m.log_price, 300, 300, true);
    CHECK(mean(rv.values) == doctest::Approx(0.2).epsilon(0.05));
    for (double v : rv.values) CHECK(v > 0.0);
}

TEST_CASE("telescoping: windows partition the realized variance") {
    const auto m = simulate_market(AbsBmVolModel{}, 3000, 1.0, 5);
    const auto rv = realized_vol_series(m.log_price, 300, 300, false);
    double sum = 0.0;
    for (double v : rv.values) sum += v * v;
    CHECK(sum == doctest::Approx(realized_variance(m.log_price, 1.0)).epsilon(1e-12));
}

TEST_CASE("spot_vol_series alignment") {
    const auto m = simulate_market(OuSvModel{}, 3000, 1.0, 8);
    const auto rv = realized_vol_series(m.log_price, 300, 100);
    const auto spot = spot_vol_series(m, rv);
    REQUIRE(spot.size() == rv.size());
    for (std::size_t k = 0; k < rv.size(); ++k) CHECK(spot[k] == m.spot_vol.values()[k * 100]);

    const auto c = simulate_market(constant_vol(0.3), 3000, 1.0, 8);
    for (double s : spot_vol_series(c, realized_vol_series(c.log_price, 300, 300))) CHECK(s == 0.3);

    const auto other = simulate_market(OuSvModel{}, 6000, 1.0, 8);
    CHECK_THROWS_AS(spot_vol_series(m, realized_vol_series(other.log_price, 300, 300)),
                    InvalidArgument);
}

TEST_CASE("estimation_error") {
    RVSeries rv;
    rv.values = {0.1, 0.2, 0.4};
    rv.times = {1, 2, 3};
    rv.window_len = 2;
    rv.step = 2;
    const std::vector<double> same{0.1, 0.2, 0.4};
    for (double e : estimation_error(rv, same, false)) CHECK(e == 0.0);
    const std::vector<double> half{0.05, 0.1, 0.2};
    for (double e : estimation_error(rv, half, true)) CHECK(e == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(estimation_error(rv, std::vector<double>{0.1}, false), InvalidArgument);
    CHECK_THROWS_AS(estimation_error(rv, std::vector<double>{0.1, 0.0, 0.2}, true), InvalidArgument);
    rv.normalized = false;
    CHECK_THROWS_AS(estimation_error(rv, same, false), InvalidArgument);
}

TEST_CASE("acf") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> z;
    std::vector<double> noise(10000);
    for (double& v : noise) v = z(rng);
    const auto r = acf(noise, 10);
    CHECK(r[0] == 1.0);
    for (std::size_t k = 1; k <= 10; ++k) CHECK(std::abs(r[k]) < 0.05);

    std::vector<double> alt(1000);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 == 0 ? 1.0 : -1.0;
    CHECK(acf(alt, 1)[1] == doctest::Approx(-1.0).epsilon(0.002));

    CHECK_THROWS_AS(acf(std::vector<double>(50, 1.0), 5), DegenerateSeries);
    CHECK_THROWS_AS(acf(std::vector<double>{1, 2, 3}, 2), InvalidArgument);
}

TEST_CASE("ou-sv log estimation error has little lag-5 autocorrelation") {
    const auto obs = observe_market_windows(OuSvModel{}, 2000, 300, kTradingSecond, 19);
    const auto err = estimation_error(obs.rv, obs.spot, true);
    const double r5 = acf(err, 5)[5];
    CHECK(r5 > -0.1);
    CHECK(r5 < 0.1);
}

TEST_CASE("RV tracks spot volatility better on finer grids") {
    // m = sqrt(L): 300 windows of 300 steps against 600 windows of 600 steps.
    auto mae = [](std::size_t m, std::uint64_t seed) {
        const auto market = simulate_market(OuSvModel{}, m * m, 1.0, seed);
        const auto rv = realized_vol_series(market.log_price, m, m);
        const auto spot = spot_vol_series(market, rv);
        double s = 0.0;
        for (std::size_t k = 0; k < spot.size(); ++k) s += std::abs(rv.values[k] - spot[k]);
        return s / static_cast<double>(spot.size());
    };
    double coarse = 0.0, fine = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        coarse += mae(300, seed);
        fine += mae(600, seed);
    }
    CHECK(fine < coarse);
}

TEST_CASE("streamed windows equal the stored-market route bitwise") {
    const std::vector<ModelSpec> models{AbsBmVolModel{}, OuSvModel{}, FouSvModel{0.3, 1, 1, 1, 0},
                                        FouSvModel{0.7, 2, 0.5, 0.8, 0.1}};
    const std::size_t windows = 41, m = 25;
    const double dt = kTradingSecond;
    for (const auto& model : models) {
        for (std::uint64_t seed : {1u, 99u}) {
            const auto obs = observe_market_windows(model, windows, m, dt, seed);
            const auto market = simulate_market(model, windows * m, dt * windows * m, seed);
            const auto rv = realized_vol_series(market.log_price, m, m, true);
            const auto spot = spot_vol_series(market, rv);
            CHECK(bitwise_equal(obs.rv.values, rv.values));
            CHECK(bitwise_equal(obs.rv.times, rv.times));
            CHECK(bitwise_equal(obs.spot, spot));

            const auto raw = observe_market_windows(model, windows, m, dt, seed, false);
            CHECK(bitwise_equal(raw.rv.values, realized_vol_series(market.log_price, m, m, false).values));
        }
    }
    const auto fgn = make_fgn_sampler(0.3, windows * m);
    const auto a = observe_market_windows(FouSvModel{0.3, 1, 1, 1, 0}, windows, m, dt, 5, true, &fgn);
    const auto b = observe_market_windows(FouSvModel{0.3, 1, 1, 1, 0}, windows, m, dt, 5);
    CHECK(bitwise_equal(a.rv.values, b.rv.values));
}
