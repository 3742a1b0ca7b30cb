#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "roughlab/fgn.hpp"
#include "roughlab/pathvar.hpp"
#include "roughlab/random.hpp"

namespace roughlab {

// One second of trading time in years (252 days of 6.5 hours).
inline constexpr double kTradingSecond = 1.0 / (252.0 * 23400.0);

struct FbmModel {
    double hurst = 0.5;
};

// sigma_t = |W_t| with W a Brownian motion independent of the price noise.
struct AbsBmVolModel {};

// sigma_t = sigma0 * exp(Y_t), dY = -gamma Y dt + theta dB'.
struct OuSvModel {
    double gamma = 1.0;
    double theta = 1.0;
    double sigma0 = 1.0;
    double y0 = 0.0;
};

// sigma_t = sigma0 * exp(Y_t), dY = -gamma Y dt + theta dB^H.
struct FouSvModel {
    double hurst = 0.5;
    double gamma = 1.0;
    double theta = 1.0;
    double sigma0 = 1.0;
    double y0 = 0.0;
};

using ModelSpec = std::variant<FbmModel, AbsBmVolModel, OuSvModel, FouSvModel>;

// Throws InvalidArgument when a parameter is outside its domain.
void validate(const ModelSpec& model);
std::string model_name(const ModelSpec& model);
// Hurst index of the volatility (or of the path itself for fbm); 0.5 for diffusive models.
double model_hurst(const ModelSpec& model);

struct SimulatedMarket {
    SampledPath price;
    SampledPath spot_vol;
    SampledPath log_price;
    std::uint64_t seed = 0;
    ModelSpec model;
};

// Exact fBM on the uniform grid with n_steps intervals, B^H(0) = 0.
SampledPath simulate_fbm(double hurst, std::size_t n_steps, double horizon, std::uint64_t seed);

// As above with a prebuilt unit-step fGN sampler of length n_steps.
SampledPath simulate_fbm(const StationaryGaussianSampler& fgn, double hurst, double horizon,
                         std::uint64_t seed);

SimulatedMarket simulate_market(const ModelSpec& model, std::size_t n_steps, double horizon,
                                std::uint64_t seed);

// Step-by-step generator shared by simulate_market and the windowed
// observers: state i holds (t_i, X_i, sigma_i); advance() moves to i + 1.
// For fbm the state is X_i = B^H(t_i) and sigma_i = 0.
class MarketStepper {
public:
    // `fgn` may supply a cached unit-step fGN sampler of length n_steps for fbm/fou_sv.
    MarketStepper(const ModelSpec& model, std::size_t n_steps, double horizon,
                  std::uint64_t seed, const StationaryGaussianSampler* fgn = nullptr);

    std::size_t index() const noexcept { return index_; }
    std::size_t steps() const noexcept { return n_steps_; }
    double time() const noexcept;
    double time_at(std::size_t i) const noexcept;
    double log_price() const noexcept { return x_; }
    double sigma() const noexcept { return sigma_; }
    void advance();

private:
    double vol_from_state() const noexcept;

    ModelSpec model_;
    std::size_t n_steps_;
    double horizon_;
    double dt_;
    double sqrt_dt_;
    std::size_t index_ = 0;
    double x_ = 0.0;
    double sigma_ = 0.0;
    double state_ = 0.0;  // W (abs_bm_vol) or Y (ou_sv, fou_sv)
    double ou_decay_ = 0.0;
    double ou_scale_ = 0.0;
    NormalStream price_noise_;
    NormalStream vol_noise_;
    std::vector<double> fgn_;  // fractional increments (fbm, fou_sv)
};

}  // namespace roughlab
