#pragma once

#include "windmfc/turbine.hpp"
#include "windmfc/ultra_local.hpp"
#include "windmfc/wind.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace windmfc {

enum class Region { low_speed, high_speed };
enum class ControllerKind { ip, pi };
enum class FaultKind { none, efficiency_loss, bias };

struct FaultSpec {
    FaultKind kind = FaultKind::none;
    double factor = 1.0;   // efficiency_loss: delivered fraction of the command, in (0, 1]
    double offset = 0.0;   // bias: added to the command [N m]
    double t_onset = 0.0;  // [s]
};

/// One monovariable control loop. Gains are expressed in controller units: the controller sees
/// y / y_scale and its output u is multiplied by u_scale before reaching the plant. Limits are SI.
struct LoopConfig {
    // iP
    double alpha = 1.0;
    double tau = 20.0;
    Estimator estimator = Estimator::algebraic;
    // shared by iP and PI
    double K_P = 0.0;
    // PI
    double K_I = 0.0;

    double u_scale = 1.0;
    double y_scale = 1.0;
    double u_min = 0.0;
    double u_max = 1.0;
};

struct Scenario {
    std::string name = "scenario";
    Region region = Region::low_speed;
    WindProfile wind{{{0.0, 8.0}}};
    ControllerKind controller = ControllerKind::ip;
    ErrorConvention error_convention = ErrorConvention::y_minus_ref;

    /// Low speed: T_g tracking omega_ref. High speed: beta tracking omega_ref.
    LoopConfig speed_loop;
    /// High speed only: T_g tracking P_rated.
    std::optional<LoopConfig> power_loop;

    FaultSpec fault;
    double duration = 600.0;
    double dt = 0.01;
    double metrics_t0 = 60.0;
    double metrics_t1 = 600.0;

    double initial_omega = 0.0;  // [rad/s]
    double initial_beta = 0.0;   // [deg]
    double initial_T_g = 0.0;    // [N m]

    /// First-order low-pass time constant on the wind feeding the low-speed reference; 0 = off.
    double reference_filter_tau = 0.0;
    /// Pitch held in the low-speed region [deg].
    double pitch_hold = 0.0;
    double pitch_slew_rate = 10.0;  // [deg/s]
    double pitch_min = 0.0;
    double pitch_max = 90.0;

    double V_cut_in = 4.0;
    double V_cut_off = 25.0;

    TurbineParams turbine;

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;

    [[nodiscard]] std::size_t sample_count() const;
};

[[nodiscard]] const char* to_string(Region r);
[[nodiscard]] const char* to_string(ControllerKind k);
[[nodiscard]] const char* to_string(FaultKind k);
[[nodiscard]] const char* to_string(ErrorConvention c);
[[nodiscard]] const char* to_string(Estimator e);
[[nodiscard]] const char* to_string(AmplitudeRule r);

}  // namespace windmfc
