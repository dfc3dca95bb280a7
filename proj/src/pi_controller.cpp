#include "windmfc/pi_controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace windmfc {

void PiConfig::validate() const {
    if (!std::isfinite(K_P) || !std::isfinite(K_I)) throw std::invalid_argument("PI gains must be finite");
    if (!std::isfinite(dt) || dt <= 0.0) throw std::invalid_argument("dt must be > 0");
    if (!(limits.u_min < limits.u_max)) throw std::invalid_argument("u_min must be < u_max");
}

PiOutput pi_step(PiState& state, double e, const PiConfig& cfg) { return pi_step(state, e, cfg, cfg.limits); }

PiOutput pi_step(PiState& state, double e, const PiConfig& cfg, ActuatorLimits limits) {
    if (!std::isfinite(e)) throw ControllerFault("non-finite tracking error");
    if (!(limits.u_min < limits.u_max)) throw std::invalid_argument("u_min must be < u_max");

    PiOutput out;
    out.u_raw = cfg.K_P * e + cfg.K_I * state.integral;
    if (std::isnan(out.u_raw)) throw ControllerFault("control law produced NaN");
    out.u_applied = std::clamp(out.u_raw, limits.u_min, limits.u_max);

    const double push = cfg.K_I * e;  // direction the integral term moves the output
    const bool inside = out.u_raw >= limits.u_min && out.u_raw <= limits.u_max;
    const bool unwinding = (out.u_raw > limits.u_max && push < 0.0) || (out.u_raw < limits.u_min && push > 0.0);
    if (inside || unwinding) state.integral += e * cfg.dt;
    return out;
}

PiController::PiController(PiConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void PiController::initialize_output(double u0) {
    state_.integral = cfg_.K_I != 0.0 ? u0 / cfg_.K_I : 0.0;
}

PiOutput PiController::evaluate(double y, double y_ref, ActuatorLimits limits) const {
    PiState scratch = state_;
    return pi_step(scratch, tracking_error(y, y_ref, cfg_.error_convention), cfg_, limits);
}

PiOutput PiController::step(double y, double y_ref, ActuatorLimits limits) {
    if (!std::isfinite(y) || !std::isfinite(y_ref)) throw ControllerFault("non-finite measurement");
    return pi_step(state_, tracking_error(y, y_ref, cfg_.error_convention), cfg_, limits);
}

}  // namespace windmfc
