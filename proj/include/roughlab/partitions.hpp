#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace roughlab {

// Absolute tolerance for comparing time points on a normalized horizon.
inline constexpr double kTimeTolerance = 1e-12;

// Half-open range [first, last) of interval indices; interval i is [t_i, t_{i+1}].
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t size() const noexcept { return last - first; }
    bool empty() const noexcept { return last == first; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

// Strictly increasing grid 0 = t_0 < ... < t_N = T.
class Partition {
public:
    explicit Partition(std::vector<double> times);

    std::span<const double> times() const noexcept { return times_; }
    std::size_t interval_count() const noexcept { return times_.size() - 1; }
    double horizon() const noexcept { return times_.back(); }

private:
    std::vector<double> times_;
};

struct PartitionSpec {
    enum class Kind { Uniform, Dyadic };
    Kind kind = Kind::Uniform;
    double horizon = 1.0;
};

struct Mesh {
    double max_step;
    double min_step;
};

// Level-n member of the sequence: n intervals (uniform) or 2^n intervals (dyadic).
Partition build(const PartitionSpec& spec, std::size_t level);

Mesh mesh(const Partition& p);

// Intervals [t_i, t_{i+1}] with t_{i+1} <= t, always a prefix.
IndexRange restrict_to(const Partition& p, double t);

// Every time of `coarse` occurs in `fine` (within kTimeTolerance).
bool is_subpartition(const Partition& coarse, const Partition& fine);

}  // namespace roughlab
