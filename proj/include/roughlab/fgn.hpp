#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "roughlab/random.hpp"

namespace roughlab {

// Autocovariance of unit-step fractional Gaussian noise at lag k.
double fgn_autocovariance(double hurst, std::size_t lag);

// Largest n for which the dense Cholesky fallback is attempted.
inline constexpr std::size_t kCholeskyLimit = 4096;

// Exact sampler for a stationary Gaussian sequence x_0..x_{n-1} with
// Cov(x_i, x_j) = autocov(|i - j|). Uses circulant embedding (Davies-Harte)
// with an FFT, and a dense Cholesky factor when the embedding has
// eigenvalues below -1e-10. Immutable after construction; sample() may be
// called concurrently with distinct streams.
class StationaryGaussianSampler {
public:
    enum class Method { CirculantEmbedding, Cholesky };

    StationaryGaussianSampler(std::function<double(std::size_t)> autocov, std::size_t n,
                              Method preferred = Method::CirculantEmbedding);

    std::size_t size() const noexcept { return n_; }
    Method method() const noexcept { return method_; }
    // Circulant size M (0 for Cholesky).
    std::size_t embedding_size() const noexcept { return embedding_; }

    void sample(NormalStream& normals, std::span<double> out) const;
    std::vector<double> sample(NormalStream& normals) const;

private:
    void sample_circulant(NormalStream& normals, std::span<double> out) const;
    void sample_cholesky(NormalStream& normals, std::span<double> out) const;
    void build_cholesky(const std::function<double(std::size_t)>& autocov);

    std::size_t n_;
    Method method_;
    std::size_t embedding_ = 0;
    std::vector<double> sqrt_eigen_;  // sqrt(lambda_k / M), k = 0..M/2
    std::vector<double> chol_;        // lower factor, row-major packed n x n
};

// Unit-step fractional Gaussian noise sampler for (hurst, n).
StationaryGaussianSampler make_fgn_sampler(double hurst, std::size_t n);

}  // namespace roughlab
