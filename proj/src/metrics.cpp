#include "windmfc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace windmfc {

SampleRange metrics_range(double t0, double t1, double dt, std::size_t n_samples) {
    if (n_samples == 0) throw std::invalid_argument("empty record");
    if (!(t0 < t1)) throw std::invalid_argument("metrics window must satisfy t0 < t1");
    const auto first = static_cast<std::size_t>(std::max(0.0, std::ceil(t0 / dt - 1e-9)));
    const auto last = std::min(n_samples - 1, static_cast<std::size_t>(std::floor(t1 / dt + 1e-9)));
    if (first > last) throw std::invalid_argument("metrics window holds no samples");
    return {first, last};
}

namespace {

template <class ErrAt>
ErrorStats stats(SampleRange r, ErrAt err) {
    const auto n = static_cast<double>(r.last - r.first + 1);
    double sum = 0.0;
    double sum_abs = 0.0;
    for (std::size_t k = r.first; k <= r.last; ++k) {
        const double e = err(k);
        sum += e;
        sum_abs += std::abs(e);
    }
    ErrorStats s;
    s.mean = sum / n;
    s.mae = sum_abs / n;
    double ss = 0.0;
    for (std::size_t k = r.first; k <= r.last; ++k) {
        const double d = err(k) - s.mean;
        ss += d * d;
    }
    s.std = std::sqrt(ss / n);
    return s;
}

}  // namespace

ErrorStats error_stats(std::span<const double> a, std::span<const double> b, SampleRange r) {
    if (r.last >= a.size() || r.last >= b.size()) throw std::out_of_range("metrics range exceeds series");
    return stats(r, [&](std::size_t k) { return a[k] - b[k]; });
}

ErrorStats error_stats(std::span<const double> a, double c, SampleRange r) {
    if (r.last >= a.size()) throw std::out_of_range("metrics range exceeds series");
    return stats(r, [&](std::size_t k) { return a[k] - c; });
}

}  // namespace windmfc
