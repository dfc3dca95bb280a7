#pragma once

#include "windmfc/ultra_local.hpp"

namespace windmfc {

struct PiConfig {
    double K_P = 0.0;
    double K_I = 0.0;  // [1/s]
    double dt = 0.01;
    ActuatorLimits limits{0.0, 1.0};
    ErrorConvention error_convention = ErrorConvention::y_minus_ref;

    void validate() const;
};

struct PiState {
    double integral = 0.0;  // accumulated error [error unit * s]
};

struct PiOutput {
    double u_raw = 0.0;
    double u_applied = 0.0;
};

/// u_raw = K_P e + K_I I, clamped. I advances by e dt (forward rectangle) unless the output is
/// saturated and e would push it further out (conditional integration).
[[nodiscard]] PiOutput pi_step(PiState& state, double e, const PiConfig& cfg);
[[nodiscard]] PiOutput pi_step(PiState& state, double e, const PiConfig& cfg, ActuatorLimits limits);

/// Classical PI baseline with per-instance state.
class PiController {
public:
    explicit PiController(PiConfig cfg);

    /// Sets the accumulator so that a zero error reproduces u0 (bumpless start).
    void initialize_output(double u0);

    [[nodiscard]] PiOutput evaluate(double y, double y_ref, ActuatorLimits limits) const;
    PiOutput step(double y, double y_ref, ActuatorLimits limits);
    PiOutput step(double y, double y_ref) { return step(y, y_ref, cfg_.limits); }

    [[nodiscard]] const PiConfig& config() const { return cfg_; }
    [[nodiscard]] const PiState& state() const { return state_; }

private:
    PiConfig cfg_;
    PiState state_;
};

}  // namespace windmfc
