#include "windmfc/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace windmfc {

namespace {

void check(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

bool finite(double v) { return std::isfinite(v); }

void validate_loop(const LoopConfig& l, ControllerKind kind, double dt, const std::string& name) {
    check(finite(l.K_P), name + ".K_P must be finite");
    check(finite(l.u_scale) && l.u_scale > 0.0, name + ".u_scale must be > 0");
    check(finite(l.y_scale) && l.y_scale > 0.0, name + ".y_scale must be > 0");
    check(finite(l.u_min) && finite(l.u_max) && l.u_min < l.u_max, name + ": u_min must be < u_max");
    if (kind == ControllerKind::ip) {
        check(finite(l.alpha) && l.alpha != 0.0, name + ".alpha must be non-zero");
        check(finite(l.tau) && l.tau > 0.0, name + ".tau must be > 0");
        check(l.tau >= 2.0 * dt, name + ".tau must be >= 2 dt");
    } else {
        check(finite(l.K_I), name + ".K_I must be finite");
    }
}

}  // namespace

void Scenario::validate() const {
    turbine.validate();
    check(finite(dt) && dt > 0.0, "dt must be > 0");
    check(finite(duration) && duration > 0.0, "duration must be > 0");
    const double steps = duration / dt;
    check(std::abs(steps - std::round(steps)) <= 1e-9 * std::max(1.0, steps), "dt must divide duration");
    check(finite(metrics_t0) && finite(metrics_t1) && metrics_t0 >= 0.0 && metrics_t0 < metrics_t1,
          "metrics window must satisfy 0 <= t0 < t1");
    check(metrics_t1 <= duration + 1e-9, "metrics window must end within the run");
    check(finite(initial_omega) && initial_omega >= 0.0, "initial omega_t must be >= 0");
    check(finite(pitch_min) && finite(pitch_max) && pitch_min >= 0.0 && pitch_min < pitch_max,
          "pitch limits must satisfy 0 <= min < max");
    check(finite(initial_beta) && initial_beta >= pitch_min && initial_beta <= pitch_max,
          "initial beta outside pitch limits");
    check(finite(initial_T_g) && initial_T_g >= 0.0 && initial_T_g <= turbine.T_g_max,
          "initial T_g outside [0, T_g_max]");
    check(finite(pitch_slew_rate) && pitch_slew_rate > 0.0, "pitch slew rate must be > 0");
    check(finite(pitch_hold) && pitch_hold >= pitch_min && pitch_hold <= pitch_max, "pitch hold outside limits");
    check(finite(reference_filter_tau) && reference_filter_tau >= 0.0, "reference filter tau must be >= 0");
    check(finite(V_cut_in) && finite(V_cut_off) && 0.0 < V_cut_in && V_cut_in < V_cut_off,
          "cut-in/cut-off speeds must satisfy 0 < cut-in < cut-off");

    switch (fault.kind) {
        case FaultKind::none:
            break;
        case FaultKind::efficiency_loss:
            check(finite(fault.factor) && fault.factor > 0.0 && fault.factor <= 1.0,
                  "fault factor must lie in (0, 1]");
            break;
        case FaultKind::bias:
            check(finite(fault.offset), "fault offset must be finite");
            break;
    }
    check(finite(fault.t_onset) && fault.t_onset >= 0.0, "fault onset must be >= 0");

    validate_loop(speed_loop, controller, dt, "speed_loop");
    if (region == Region::high_speed) {
        check(power_loop.has_value(), "high-speed scenarios need a power loop");
        validate_loop(*power_loop, controller, dt, "power_loop");
    } else {
        check(!power_loop.has_value(), "low-speed scenarios have no power loop");
    }
}

std::size_t Scenario::sample_count() const { return static_cast<std::size_t>(std::llround(duration / dt)) + 1; }

const char* to_string(Region r) { return r == Region::low_speed ? "low_speed" : "high_speed"; }
const char* to_string(ControllerKind k) { return k == ControllerKind::ip ? "ip" : "pi"; }
const char* to_string(ErrorConvention c) {
    return c == ErrorConvention::y_minus_ref ? "y_minus_ref" : "ref_minus_y";
}
const char* to_string(Estimator e) { return e == Estimator::algebraic ? "algebraic" : "closed_loop"; }
const char* to_string(AmplitudeRule r) { return r == AmplitudeRule::table ? "table" : "reciprocal"; }
const char* to_string(FaultKind k) {
    switch (k) {
        case FaultKind::none:
            return "none";
        case FaultKind::efficiency_loss:
            return "efficiency_loss";
        case FaultKind::bias:
            return "bias";
    }
    return "none";
}

}  // namespace windmfc
