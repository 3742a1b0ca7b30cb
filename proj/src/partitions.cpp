#include "roughlab/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughlab/error.hpp"

namespace roughlab {

Partition::Partition(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2) {
        throw InvalidArgument("partition needs at least two time points");
    }
    if (times_.front() != 0.0) {
        throw InvalidArgument("partition must start at 0");
    }
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw InvalidArgument("partition times must be strictly increasing (index " +
                                  std::to_string(i) + ")");
        }
    }
}

Partition build(const PartitionSpec& spec, std::size_t level) {
    if (level == 0) {
        throw InvalidArgument("partition level must be >= 1");
    }
    if (!(spec.horizon > 0.0) || !std::isfinite(spec.horizon)) {
        throw InvalidArgument("partition horizon must be positive");
    }
    std::size_t n = level;
    if (spec.kind == PartitionSpec::Kind::Dyadic) {
        if (level >= 8 * sizeof(std::size_t) - 1) {
            throw InvalidArgument("dyadic level too large");
        }
        n = std::size_t{1} << level;
    }
    std::vector<double> times(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        times[i] = spec.horizon * static_cast<double>(i) / static_cast<double>(n);
    }
    times[n] = spec.horizon;
    return Partition(std::move(times));
}

Mesh mesh(const Partition& p) {
    const auto t = p.times();
    Mesh m{0.0, t.back() - t.front()};
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double step = t[i] - t[i - 1];
        m.max_step = std::max(m.max_step, step);
        m.min_step = std::min(m.min_step, step);
    }
    return m;
}

IndexRange restrict_to(const Partition& p, double t) {
    const auto times = p.times();
    if (!(t >= -kTimeTolerance) || t > p.horizon() + kTimeTolerance) {
        throw InvalidArgument("restriction time outside [0, T]");
    }
    // First right endpoint strictly beyond t (+ tolerance).
    const auto it = std::upper_bound(times.begin() + 1, times.end(), t + kTimeTolerance);
    return IndexRange{0, static_cast<std::size_t>(it - (times.begin() + 1))};
}

bool is_subpartition(const Partition& coarse, const Partition& fine) {
    if (std::abs(coarse.horizon() - fine.horizon()) > kTimeTolerance) {
        throw InvalidArgument("partitions have different horizons");
    }
    const auto f = fine.times();
    for (double c : coarse.times()) {
        auto it = std::lower_bound(f.begin(), f.end(), c - kTimeTolerance);
        if (it == f.end() || std::abs(*it - c) > kTimeTolerance) {
            return false;
        }
    }
    return true;
}

}  // namespace roughlab
