#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace windmfc {

/// Comparison figures over the metrics window.
struct RunMetrics {
    double mae_omega = 0.0;  // mean |omega_t - omega_ref| [rad/s]
    double std_omega = 0.0;  // population std of omega_t - omega_ref [rad/s]
    double mean_P_t = 0.0;   // [W]
    // Only defined when the region has a power reference (high speed).
    std::optional<double> mae_P_e;  // mean |P_e - P_ref| [W]
    std::optional<double> std_P_e;  // population std of P_e - P_ref [W]
};

struct SampleRange {
    std::size_t first = 0;
    std::size_t last = 0;  // inclusive
};

/// Sample indices with t0 <= k dt <= t1 (1e-9 slack on both ends).
[[nodiscard]] SampleRange metrics_range(double t0, double t1, double dt, std::size_t n_samples);

struct ErrorStats {
    double mae = 0.0;
    double std = 0.0;
    double mean = 0.0;
};

/// Statistics of (a - b) over the range.
[[nodiscard]] ErrorStats error_stats(std::span<const double> a, std::span<const double> b, SampleRange r);
/// Statistics of (a - c) for a constant c.
[[nodiscard]] ErrorStats error_stats(std::span<const double> a, double c, SampleRange r);

}  // namespace windmfc
