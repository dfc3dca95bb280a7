#pragma once

#include "windmfc/metrics.hpp"
#include "windmfc/scenario.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace windmfc {

/// Uniformly sampled time series of one run, stored column-wise.
struct RunRecord {
    std::vector<double> t;
    std::vector<double> V;
    std::vector<double> omega_t;
    std::vector<double> omega_ref;
    std::vector<double> beta_cmd;
    std::vector<double> T_g_cmd;
    std::vector<double> T_g_act;
    std::vector<double> P_t;
    std::vector<double> P_e;
    std::vector<double> F_est_loop1;
    std::vector<double> F_est_loop2;
    bool has_F_est_loop1 = false;
    bool has_F_est_loop2 = false;

    [[nodiscard]] std::size_t size() const { return t.size(); }
    void reserve(std::size_t n);
};

struct RunResult {
    RunRecord record;
    RunMetrics metrics;
    std::vector<std::string> warnings;
};

/// Raised when a controller faults mid-run; carries the sample time and the loop name.
class ScenarioAbort : public std::runtime_error {
public:
    ScenarioAbort(double t, std::string loop, const std::string& why);
    double t;
    std::string loop;
};

/// omega_ref = lambda_opt * V / R.
[[nodiscard]] double reference_low_speed(double V, const OperatingPoint& op, double R);

/// Stateful low-speed reference: optional low-pass on the wind, backward-difference derivative.
class LowSpeedReference {
public:
    LowSpeedReference(OperatingPoint op, double R, double filter_tau, double dt);
    /// Returns (omega_ref, omega_ref_dot); the derivative is 0 on the first sample.
    std::pair<double, double> update(double V);

private:
    OperatingPoint op_;
    double R_;
    double blend_;
    double dt_;
    double V_filtered_ = 0.0;
    double prev_ref_ = 0.0;
    bool primed_ = false;
};

struct HighSpeedReference {
    double omega_ref = 0.0;
    double P_ref = 0.0;
};

[[nodiscard]] HighSpeedReference reference_high_speed(const OperatingPoint& op, const TurbineParams& p);

/// Ideal generator: P_e = T_g * omega_t.
[[nodiscard]] inline double electrical_power(double T_g_actuated, double omega_t) { return T_g_actuated * omega_t; }

/// Torque delivered by a possibly faulty actuator, clamped to [0, T_g_max].
[[nodiscard]] double apply_fault(double T_g_cmd, const FaultSpec& fault, double t, double T_g_max);

/// Fixed point u = law(measure(u)) on [lo, hi] by bisection. `law` must return a value in
/// [lo, hi]; used when the measured output responds to the command within the same sample.
template <class Law, class Measure>
double resolve_feedthrough(Law&& law, Measure&& measure, double lo, double hi) {
    auto g = [&](double u) { return u - law(measure(u)); };
    if (g(lo) >= 0.0) return lo;
    if (g(hi) <= 0.0) return hi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (g(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Runs the closed loop over [0, duration] and evaluates the metrics window.
/// Throws std::invalid_argument for an invalid scenario and ScenarioAbort on a controller fault.
[[nodiscard]] RunResult run_scenario(const Scenario& scenario);

/// A run is stable when rotor-speed tracking stays within a quarter of the mean reference.
[[nodiscard]] bool closed_loop_stable(const RunRecord& record, const RunMetrics& metrics);

}  // namespace windmfc
