#pragma once

#include <cstdint>
#include <random>

namespace roughlab {

// Seed of an independent stream derived from a base seed; a bijection in
// stream_id for fixed base_seed, so distinct streams never share a seed.
std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t stream_id) noexcept;

// Stream identifiers used inside one simulated market.
inline constexpr std::uint64_t kPriceStream = 0;
inline constexpr std::uint64_t kVolStream = 1;

// Standard normal draws from a seeded 64-bit Mersenne twister.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
    double operator()() { return dist_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace roughlab
