#include "roughlab/fgn.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "roughlab/error.hpp"

namespace roughlab {

namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t count) {
    void* p = fftw_malloc(sizeof(T) * count);
    if (p == nullptr) {
        throw SimulationFailure("out of memory allocating an FFT buffer of " +
                                std::to_string(count) + " elements");
    }
    return std::unique_ptr<T[], FftwFree>(static_cast<T*>(p));
}

class Plan {
public:
    explicit Plan(fftw_plan p) : plan_(p) {
        if (plan_ == nullptr) throw SimulationFailure("FFTW could not create a plan");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

constexpr double kNegativeEigenTolerance = -1e-10;

// Lags from here on use the binomial series for the autocovariance.
constexpr std::size_t kSeriesLag = 64;

}  // namespace

double fgn_autocovariance(double hurst, std::size_t lag) {
    const double k = static_cast<double>(lag);
    const double h2 = 2.0 * hurst;
    if (lag == 0) return 1.0;
    if (lag < kSeriesLag) {
        return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(k - 1.0, h2));
    }
    // The second difference cancels catastrophically at long lags; expand
    // (1 + x)^a + (1 - x)^a - 2 = 2 sum_j binom(a, 2j) x^(2j) with x = 1/k.
    const double x2 = 1.0 / (k * k);
    double binom = 1.0;  // binom(a, 2j), built incrementally
    double pw = 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 64; ++j) {
        binom *= (h2 - (2.0 * j - 2.0)) * (h2 - (2.0 * j - 1.0)) / ((2.0 * j - 1.0) * (2.0 * j));
        pw *= x2;
        const double term = binom * pw;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return std::pow(k, h2) * sum;
}

StationaryGaussianSampler::StationaryGaussianSampler(
    std::function<double(std::size_t)> autocov, std::size_t n, Method preferred)
    : n_(n), method_(preferred) {
    if (n == 0) {
        throw InvalidArgument("Gaussian sequence length must be positive");
    }
    if (preferred == Method::Cholesky) {
        if (n > kCholeskyLimit) {
            throw SimulationFailure("Cholesky sampling is capped at n <= " +
                                    std::to_string(kCholeskyLimit));
        }
        build_cholesky(autocov);
        return;
    }

    const std::size_t half = next_pow2(n);
    embedding_ = 2 * half;
    const std::size_t count = half + 1;
    auto buf = fftw_buffer<double>(count);
    for (std::size_t k = 0; k < count; ++k) {
        buf[k] = autocov(k);
    }
    std::unique_ptr<Plan> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = std::make_unique<Plan>(fftw_plan_r2r_1d(static_cast<int>(count), buf.get(),
                                                       buf.get(), FFTW_REDFT00, FFTW_ESTIMATE));
    }
    if (count > 1) {
        plan->execute();
    }
    plan.reset();

    double min_eigen = buf[0];
    double max_eigen = buf[0];
    for (std::size_t k = 0; k < count; ++k) {
        min_eigen = std::min(min_eigen, buf[k]);
        max_eigen = std::max(max_eigen, buf[k]);
    }
    // FFT rounding scales with the largest eigenvalue.
    if (min_eigen < kNegativeEigenTolerance * std::max(1.0, max_eigen)) {
        embedding_ = 0;
        if (n > kCholeskyLimit) {
            throw SimulationFailure(
                "circulant embedding has a negative eigenvalue and n exceeds the Cholesky cap");
        }
        method_ = Method::Cholesky;
        build_cholesky(autocov);
        return;
    }
    const double m = static_cast<double>(embedding_);
    sqrt_eigen_.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        sqrt_eigen_[k] = std::sqrt(std::max(buf[k], 0.0) / m);
    }
}

void StationaryGaussianSampler::build_cholesky(
    const std::function<double(std::size_t)>& autocov) {
    const std::size_t n = n_;
    std::vector<double> cov(n);
    for (std::size_t k = 0; k < n; ++k) cov[k] = autocov(k);
    chol_.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = cov[0];
        for (std::size_t k = 0; k < j; ++k) d -= chol_[j * n + k] * chol_[j * n + k];
        if (!(d > 0.0)) {
            throw SimulationFailure("covariance matrix is not positive definite (pivot " +
                                    std::to_string(j) + ")");
        }
        const double ljj = std::sqrt(d);
        chol_[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = cov[i - j];
            for (std::size_t k = 0; k < j; ++k) s -= chol_[i * n + k] * chol_[j * n + k];
            chol_[i * n + j] = s / ljj;
        }
    }
}

void StationaryGaussianSampler::sample(NormalStream& normals, std::span<double> out) const {
    if (out.size() != n_) {
        throw InvalidArgument("output span does not match the sampler length");
    }
    if (method_ == Method::Cholesky) {
        sample_cholesky(normals, out);
    } else {
        sample_circulant(normals, out);
    }
}

std::vector<double> StationaryGaussianSampler::sample(NormalStream& normals) const {
    std::vector<double> out(n_);
    sample(normals, out);
    return out;
}

void StationaryGaussianSampler::sample_circulant(NormalStream& normals,
                                                 std::span<double> out) const {
    const std::size_t m = embedding_;
    const std::size_t half = m / 2;
    // In-place complex-to-real transform: half + 1 complex inputs, m real outputs.
    auto buf = fftw_buffer<fftw_complex>(half + 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    buf[0][0] = sqrt_eigen_[0] * normals();
    buf[0][1] = 0.0;
    buf[half][0] = sqrt_eigen_[half] * normals();
    buf[half][1] = 0.0;
    for (std::size_t k = 1; k < half; ++k) {
        const double s = sqrt_eigen_[k] * inv_sqrt2;
        buf[k][0] = s * normals();
        buf[k][1] = s * normals();
    }
    std::unique_ptr<Plan> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = std::make_unique<Plan>(fftw_plan_dft_c2r_1d(
            static_cast<int>(m), buf.get(), reinterpret_cast<double*>(buf.get()), FFTW_ESTIMATE));
    }
    plan->execute();
    const double* real = reinterpret_cast<const double*>(buf.get());
    std::copy(real, real + n_, out.begin());
}

void StationaryGaussianSampler::sample_cholesky(NormalStream& normals,
                                                std::span<double> out) const {
    const std::size_t n = n_;
    std::vector<double> z(n);
    for (auto& v : z) v = normals();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += chol_[i * n + k] * z[k];
        out[i] = s;
    }
}

StationaryGaussianSampler make_fgn_sampler(double hurst, std::size_t n) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        throw InvalidArgument("Hurst index must lie in (0, 1)");
    }
    return StationaryGaussianSampler([hurst](std::size_t k) { return fgn_autocovariance(hurst, k); },
                                     n);
}

}  // namespace roughlab
