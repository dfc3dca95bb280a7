#include "windmfc/presets.hpp"

namespace windmfc {

namespace {

// Torque loops act in kN m; the gains only make sense in that unit.
constexpr double kTorqueUnit = 1000.0;
// Torque command authority; the actuator still clamps to T_g_max after any fault.
constexpr double kTorqueCommandMax = 2.0 * 1.62e5;

Scenario low_speed(ControllerKind kind) {
    Scenario s;
    s.region = Region::low_speed;
    s.controller = kind;
    s.error_convention = ErrorConvention::y_minus_ref;
    s.wind = WindProfile({{0.0, 7.0}, {200.0, 8.0}, {400.0, 9.0}}, AmplitudeRule::table);
    const OperatingPoint op = optimal_operating_point(s.turbine);
    s.initial_omega = op.lambda_opt * 7.0 / s.turbine.R;
    s.initial_beta = 0.0;
    s.initial_T_g = 0.0;
    s.reference_filter_tau = 30.0;
    s.pitch_hold = 0.0;

    LoopConfig& l = s.speed_loop;
    l.u_scale = kTorqueUnit;
    l.y_scale = 1.0;
    l.u_min = 0.0;
    l.u_max = s.turbine.T_g_max;
    if (kind == ControllerKind::ip) {
        l.alpha = 0.0005;
        l.K_P = -0.45;
        l.tau = 20.0;
        l.estimator = Estimator::algebraic;
    } else {
        l.K_P = 500.0;
        l.K_I = 10.0;
    }
    return s;
}

Scenario high_speed(ControllerKind kind, std::vector<WindStage> schedule) {
    Scenario s;
    s.region = Region::high_speed;
    s.controller = kind;
    s.error_convention = ErrorConvention::y_minus_ref;
    s.wind = WindProfile(std::move(schedule), AmplitudeRule::table);
    const OperatingPoint op = optimal_operating_point(s.turbine);
    s.initial_omega = op.omega_rated;
    s.initial_beta = 30.0;
    s.initial_T_g = 0.0;

    LoopConfig pitch;
    pitch.u_min = 0.0;
    pitch.u_max = 90.0;
    LoopConfig torque;
    torque.u_scale = kTorqueUnit;
    torque.u_min = 0.0;
    torque.u_max = kTorqueCommandMax;
    if (kind == ControllerKind::ip) {
        pitch.alpha = 1.0;
        pitch.K_P = -4.0;
        pitch.tau = 20.0;
        torque.alpha = 1000.0;
        torque.K_P = 3.0;
        torque.tau = 20.0;
    } else {
        pitch.K_P = -0.006;
        pitch.K_I = 0.52;
        torque.K_P = -0.0003;
        torque.K_I = -0.00026;
    }
    s.speed_loop = pitch;
    s.power_loop = torque;
    return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"low-ip",  "low-pi",           "high-ip",
                                                "high-pi", "fault-efficiency", "fault-bias"};
    return names;
}

ScenarioFile make_preset(std::string_view name) {
    ScenarioFile f;
    Scenario& s = f.scenario;
    if (name == "low-ip") {
        s = low_speed(ControllerKind::ip);
    } else if (name == "low-pi") {
        s = low_speed(ControllerKind::pi);
    } else if (name == "high-ip") {
        s = high_speed(ControllerKind::ip, {{0.0, 16.0}, {300.0, 20.0}});
    } else if (name == "high-pi") {
        s = high_speed(ControllerKind::pi, {{0.0, 16.0}, {300.0, 20.0}});
    } else if (name == "fault-efficiency") {
        s = high_speed(ControllerKind::ip, {{0.0, 16.0}});
        s.fault = {FaultKind::efficiency_loss, 0.85, 0.0, 300.0};
    } else if (name == "fault-bias") {
        s = high_speed(ControllerKind::ip, {{0.0, 16.0}});
        s.fault = {FaultKind::bias, 1.0, -5.0e4, 300.0};
    } else {
        std::string valid;
        for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
        throw ConfigError("unknown preset '" + std::string(name) + "'; valid names: " + valid);
    }
    s.name = std::string(name);
    return f;
}

}  // namespace windmfc
