#include "roughlab/simulate.hpp"

#include <cmath>
#include <sstream>

#include "roughlab/error.hpp"

namespace roughlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
}

void check_grid(std::size_t n_steps, double horizon) {
    require(n_steps >= 2, "simulation needs at least 2 steps");
    require(horizon > 0.0 && std::isfinite(horizon), "simulation horizon must be positive");
}

}  // namespace

void validate(const ModelSpec& model) {
    std::visit(overloaded{
                   [](const FbmModel& m) {
                       require(m.hurst > 0.0 && m.hurst < 1.0, "Hurst index must lie in (0, 1)");
                   },
                   [](const AbsBmVolModel&) {},
                   [](const OuSvModel& m) {
                       require(m.gamma > 0.0, "gamma must be positive");
                       require(m.theta > 0.0, "theta must be positive");
                       require(m.sigma0 > 0.0, "sigma0 must be positive");
                       require(std::isfinite(m.y0), "y0 must be finite");
                   },
                   [](const FouSvModel& m) {
                       require(m.hurst > 0.0 && m.hurst < 1.0, "Hurst index must lie in (0, 1)");
                       require(m.gamma > 0.0, "gamma must be positive");
                       require(m.theta > 0.0, "theta must be positive");
                       require(m.sigma0 > 0.0, "sigma0 must be positive");
                       require(std::isfinite(m.y0), "y0 must be finite");
                   },
               },
               model);
}

std::string model_name(const ModelSpec& model) {
    return std::visit(overloaded{
                          [](const FbmModel&) { return std::string("fbm"); },
                          [](const AbsBmVolModel&) { return std::string("abs-bm-vol"); },
                          [](const OuSvModel&) { return std::string("ou-sv"); },
                          [](const FouSvModel&) { return std::string("fou-sv"); },
                      },
                      model);
}

double model_hurst(const ModelSpec& model) {
    return std::visit(overloaded{
                          [](const FbmModel& m) { return m.hurst; },
                          [](const AbsBmVolModel&) { return 0.5; },
                          [](const OuSvModel&) { return 0.5; },
                          [](const FouSvModel& m) { return m.hurst; },
                      },
                      model);
}

SampledPath simulate_fbm(const StationaryGaussianSampler& fgn, double hurst, double horizon,
                         std::uint64_t seed) {
    require(hurst > 0.0 && hurst < 1.0, "Hurst index must lie in (0, 1)");
    const std::size_t n = fgn.size();
    check_grid(n, horizon);
    NormalStream normals(seed);
    std::vector<double> values(n + 1);
    fgn.sample(normals, std::span<double>(values).subspan(1));
    const double scale = std::pow(horizon / static_cast<double>(n), hurst);
    values[0] = 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        acc += scale * values[i];
        values[i] = acc;
    }
    return SampledPath::uniform(std::move(values), horizon);
}

SampledPath simulate_fbm(double hurst, std::size_t n_steps, double horizon, std::uint64_t seed) {
    require(hurst > 0.0 && hurst < 1.0, "Hurst index must lie in (0, 1)");
    check_grid(n_steps, horizon);
    return simulate_fbm(make_fgn_sampler(hurst, n_steps), hurst, horizon, seed);
}

MarketStepper::MarketStepper(const ModelSpec& model, std::size_t n_steps, double horizon,
                             std::uint64_t seed, const StationaryGaussianSampler* fgn)
    : model_(model),
      n_steps_(n_steps),
      horizon_(horizon),
      dt_(horizon / static_cast<double>(n_steps)),
      sqrt_dt_(std::sqrt(horizon / static_cast<double>(n_steps))),
      price_noise_(derive_stream_seed(seed, kPriceStream)),
      vol_noise_(derive_stream_seed(seed, kVolStream)) {
    validate(model);
    check_grid(n_steps, horizon);
    if (fgn != nullptr && fgn->size() != n_steps) {
        throw InvalidArgument("cached fGN sampler length does not match the step count");
    }
    auto fractional_increments = [&](double hurst, std::uint64_t stream_seed) {
        std::unique_ptr<StationaryGaussianSampler> own;
        if (fgn == nullptr) {
            own = std::make_unique<StationaryGaussianSampler>(make_fgn_sampler(hurst, n_steps));
            fgn = own.get();
        }
        NormalStream normals(stream_seed);
        fgn_ = fgn->sample(normals);
        const double scale = std::pow(dt_, hurst);
        for (double& v : fgn_) v *= scale;
    };
    std::visit(overloaded{
                   [&](const FbmModel& m) { fractional_increments(m.hurst, seed); },
                   [&](const AbsBmVolModel&) { state_ = 0.0; },
                   [&](const OuSvModel& m) {
                       state_ = m.y0;
                       ou_decay_ = std::exp(-m.gamma * dt_);
                       ou_scale_ =
                           m.theta * std::sqrt((1.0 - std::exp(-2.0 * m.gamma * dt_)) / (2.0 * m.gamma));
                   },
                   [&](const FouSvModel& m) {
                       state_ = m.y0;
                       fractional_increments(m.hurst, derive_stream_seed(seed, kVolStream));
                   },
               },
               model_);
    sigma_ = vol_from_state();
}

double MarketStepper::time_at(std::size_t i) const noexcept {
    return i == n_steps_ ? horizon_
                         : horizon_ * static_cast<double>(i) / static_cast<double>(n_steps_);
}

double MarketStepper::time() const noexcept { return time_at(index_); }

double MarketStepper::vol_from_state() const noexcept {
    return std::visit(overloaded{
                          [](const FbmModel&) { return 0.0; },
                          [&](const AbsBmVolModel&) { return std::abs(state_); },
                          [&](const OuSvModel& m) { return m.sigma0 * std::exp(state_); },
                          [&](const FouSvModel& m) { return m.sigma0 * std::exp(state_); },
                      },
                      model_);
}

void MarketStepper::advance() {
    if (index_ >= n_steps_) {
        throw InvalidArgument("market stepper advanced past its horizon");
    }
    const std::size_t i = index_;
    std::visit(overloaded{
                   [&](const FbmModel&) { x_ += fgn_[i]; },
                   [&](const AbsBmVolModel&) {
                       x_ += -0.5 * sigma_ * sigma_ * dt_ + sigma_ * sqrt_dt_ * price_noise_();
                       state_ += sqrt_dt_ * vol_noise_();
                   },
                   [&](const OuSvModel&) {
                       x_ += -0.5 * sigma_ * sigma_ * dt_ + sigma_ * sqrt_dt_ * price_noise_();
                       state_ = state_ * ou_decay_ + ou_scale_ * vol_noise_();
                   },
                   [&](const FouSvModel& m) {
                       x_ += -0.5 * sigma_ * sigma_ * dt_ + sigma_ * sqrt_dt_ * price_noise_();
                       state_ = state_ - m.gamma * state_ * dt_ + m.theta * fgn_[i];
                   },
               },
               model_);
    ++index_;
    sigma_ = vol_from_state();
}

SimulatedMarket simulate_market(const ModelSpec& model, std::size_t n_steps, double horizon,
                                std::uint64_t seed) {
    MarketStepper stepper(model, n_steps, horizon, seed);
    std::vector<double> times(n_steps + 1), x(n_steps + 1), s(n_steps + 1), sigma(n_steps + 1);
    for (std::size_t i = 0;; ++i) {
        times[i] = stepper.time();
        x[i] = stepper.log_price();
        s[i] = std::exp(x[i]);
        sigma[i] = stepper.sigma();
        if (i == n_steps) break;
        stepper.advance();
    }
    SampledPath log_price(times, std::move(x));
    SampledPath price(times, std::move(s));
    SampledPath spot(std::move(times), std::move(sigma));
    return SimulatedMarket{std::move(price), std::move(spot), std::move(log_price), seed, model};
}

}  // namespace roughlab
