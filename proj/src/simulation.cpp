#include "windmfc/simulation.hpp"

#include "windmfc/pi_controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace windmfc {

void RunRecord::reserve(std::size_t n) {
    for (auto* v : {&t, &V, &omega_t, &omega_ref, &beta_cmd, &T_g_cmd, &T_g_act, &P_t, &P_e, &F_est_loop1,
                    &F_est_loop2})
        v->reserve(n);
}

ScenarioAbort::ScenarioAbort(double t_, std::string loop_, const std::string& why)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "controller fault at t=" << t_ << " s in loop '" << loop_ << "': " << why;
          return os.str();
      }()),
      t(t_),
      loop(std::move(loop_)) {}

double reference_low_speed(double V, const OperatingPoint& op, double R) { return op.lambda_opt * V / R; }

LowSpeedReference::LowSpeedReference(OperatingPoint op, double R, double filter_tau, double dt)
    : op_(op), R_(R), blend_(filter_tau > 0.0 ? -std::expm1(-dt / filter_tau) : 1.0), dt_(dt) {}

std::pair<double, double> LowSpeedReference::update(double V) {
    if (!primed_) {
        V_filtered_ = V;
        prev_ref_ = reference_low_speed(V_filtered_, op_, R_);
        primed_ = true;
        return {prev_ref_, 0.0};
    }
    V_filtered_ += blend_ * (V - V_filtered_);
    const double ref = reference_low_speed(V_filtered_, op_, R_);
    const double rate = (ref - prev_ref_) / dt_;
    prev_ref_ = ref;
    return {ref, rate};
}

HighSpeedReference reference_high_speed(const OperatingPoint& op, const TurbineParams& p) {
    return {op.omega_rated, p.P_rated};
}

double apply_fault(double T_g_cmd, const FaultSpec& fault, double t, double T_g_max) {
    double out = T_g_cmd;
    if (t >= fault.t_onset) {
        if (fault.kind == FaultKind::efficiency_loss)
            out = fault.factor * T_g_cmd;
        else if (fault.kind == FaultKind::bias)
            out = T_g_cmd + fault.offset;
    }
    return std::clamp(out, 0.0, T_g_max);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Either controller behind SI <-> controller-unit scaling.
class Loop {
public:
    Loop(const LoopConfig& cfg, ControllerKind kind, ErrorConvention conv, double dt, std::string name)
        : cfg_(cfg), name_(std::move(name)) {
        if (kind == ControllerKind::ip) {
            UltraLocalConfig c;
            c.alpha = cfg.alpha;
            c.K_P = cfg.K_P;
            c.tau = cfg.tau;
            c.estimator = cfg.estimator;
            c.dt = dt;
            c.error_convention = conv;
            ip_ = std::make_unique<UltraLocalController>(c);
        } else {
            PiConfig c;
            c.K_P = cfg.K_P;
            c.K_I = cfg.K_I;
            c.dt = dt;
            c.limits = scaled({cfg.u_min, cfg.u_max});
            c.error_convention = conv;
            pi_ = std::make_unique<PiController>(c);
        }
    }

    void initialize_output(double u_si) {
        if (pi_) pi_->initialize_output(u_si / cfg_.u_scale);
    }

    [[nodiscard]] bool has_estimate() const { return ip_ != nullptr; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] ActuatorLimits limits() const { return {cfg_.u_min, cfg_.u_max}; }

    [[nodiscard]] double prepare() const { return ip_ ? ip_->estimate() : kNaN; }

    [[nodiscard]] double law(double F, double y, double y_ref, double ydot_ref, ActuatorLimits lim) const {
        const ActuatorLimits lc = scaled(lim);
        if (ip_) {
            return ip_->evaluate(F, y / cfg_.y_scale, y_ref / cfg_.y_scale, ydot_ref / cfg_.y_scale, lc).u_applied *
                   cfg_.u_scale;
        }
        return pi_->evaluate(y / cfg_.y_scale, y_ref / cfg_.y_scale, lc).u_applied * cfg_.u_scale;
    }

    double commit(double F, double y, double y_ref, double ydot_ref, ActuatorLimits lim) {
        const ActuatorLimits lc = scaled(lim);
        if (ip_) {
            return ip_->commit(F, y / cfg_.y_scale, y_ref / cfg_.y_scale, ydot_ref / cfg_.y_scale, lc).u_applied *
                   cfg_.u_scale;
        }
        return pi_->step(y / cfg_.y_scale, y_ref / cfg_.y_scale, lc).u_applied * cfg_.u_scale;
    }

private:
    [[nodiscard]] ActuatorLimits scaled(ActuatorLimits lim) const {
        return {lim.u_min / cfg_.u_scale, lim.u_max / cfg_.u_scale};
    }

    LoopConfig cfg_;
    std::string name_;
    std::unique_ptr<UltraLocalController> ip_;
    std::unique_ptr<PiController> pi_;
};

void region_warnings(const Scenario& s, const OperatingPoint& op, std::vector<std::string>& out) {
    for (const auto& stage : s.wind.schedule()) {
        const double v = stage.V_moy;
        const bool inside = s.region == Region::low_speed ? (v >= s.V_cut_in && v < op.V_rated)
                                                          : (v >= op.V_rated && v <= s.V_cut_off);
        if (!inside) {
            std::ostringstream os;
            os << "mean wind " << v << " m/s from t=" << stage.t_start << " s lies outside the " << to_string(s.region)
               << " region (V_rated = " << op.V_rated << " m/s)";
            out.push_back(os.str());
        }
    }
}

}  // namespace

RunResult run_scenario(const Scenario& s) {
    s.validate();
    const TurbineParams& p = s.turbine;
    const OperatingPoint op = optimal_operating_point(p);
    const std::size_t n = s.sample_count();
    const double dt = s.dt;
    const bool high = s.region == Region::high_speed;

    RunResult result;
    region_warnings(s, op, result.warnings);

    Loop speed(s.speed_loop, s.controller, s.error_convention, dt, high ? "pitch" : "torque");
    std::unique_ptr<Loop> power;
    if (high) power = std::make_unique<Loop>(*s.power_loop, s.controller, s.error_convention, dt, "torque");

    speed.initialize_output(high ? s.initial_beta : s.initial_T_g);
    if (power) power->initialize_output(s.initial_T_g);

    LowSpeedReference low_ref(op, p.R, s.reference_filter_tau, dt);
    const HighSpeedReference high_ref = reference_high_speed(op, p);

    const auto wind_fn = [&s](double t) { return s.wind.speed(t); };

    RunRecord& rec = result.record;
    rec.reserve(n);
    rec.has_F_est_loop1 = speed.has_estimate();
    rec.has_F_est_loop2 = power && power->has_estimate();

    TurbineState state{s.initial_omega, 0.0};
    double beta = s.initial_beta;
    std::size_t outside_band = 0;

    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        state.t = t;
        const double V = s.wind.speed(t);
        const double omega = state.omega_t;
        if (!std::isfinite(omega)) throw ScenarioAbort(t, "plant", "rotor speed is not finite");
        if (!(V > 0.0)) throw ScenarioAbort(t, "plant", "wind speed is not positive");
        if (V < s.V_cut_in || V > s.V_cut_off) ++outside_band;

        double omega_ref = 0.0;
        double omega_ref_dot = 0.0;
        if (high) {
            omega_ref = high_ref.omega_ref;
        } else {
            std::tie(omega_ref, omega_ref_dot) = low_ref.update(V);
        }

        const double slew = s.pitch_slew_rate * dt;
        const double beta_lo = std::max(s.pitch_min, beta - slew);
        const double beta_hi = std::min(s.pitch_max, beta + slew);

        double T_g_cmd = 0.0;
        double F1 = kNaN;
        double F2 = kNaN;
        const Loop* active = &speed;
        try {
            F1 = speed.prepare();
            if (!high) {
                T_g_cmd = speed.commit(F1, omega, omega_ref, omega_ref_dot, speed.limits());
                beta = std::clamp(s.pitch_hold, beta_lo, beta_hi);
            } else {
                const ActuatorLimits lim = speed.limits();
                const ActuatorLimits pitch_lim{std::max(beta_lo, lim.u_min), std::min(beta_hi, lim.u_max)};
                if (pitch_lim.u_min < pitch_lim.u_max)
                    beta = speed.commit(F1, omega, omega_ref, omega_ref_dot, pitch_lim);
                else
                    beta = std::clamp(beta, pitch_lim.u_min, pitch_lim.u_max);

                // P_e responds to the torque command within the sample: resolve the loop implicitly.
                active = power.get();
                F2 = power->prepare();
                const ActuatorLimits tlim = power->limits();
                const auto measure = [&](double u) {
                    return electrical_power(apply_fault(u, s.fault, t, p.T_g_max), omega);
                };
                const auto law = [&](double y) { return power->law(F2, y, high_ref.P_ref, 0.0, tlim); };
                const double u_fixed = resolve_feedthrough(law, measure, tlim.u_min, tlim.u_max);
                T_g_cmd = power->commit(F2, measure(u_fixed), high_ref.P_ref, 0.0, tlim);
            }
        } catch (const ControllerFault& e) {
            throw ScenarioAbort(t, active->name(), e.what());
        }

        const double T_g_act = apply_fault(T_g_cmd, s.fault, t, p.T_g_max);

        rec.t.push_back(t);
        rec.V.push_back(V);
        rec.omega_t.push_back(omega);
        rec.omega_ref.push_back(omega_ref);
        rec.beta_cmd.push_back(beta);
        rec.T_g_cmd.push_back(T_g_cmd);
        rec.T_g_act.push_back(T_g_act);
        rec.P_t.push_back(aerodynamic_power(V, omega, beta, p));
        rec.P_e.push_back(electrical_power(T_g_act, omega));
        rec.F_est_loop1.push_back(F1);
        rec.F_est_loop2.push_back(F2);

        if (k + 1 < n) state = step(state, T_g_act, beta, wind_fn, dt, p);
    }

    if (outside_band > 0) {
        std::ostringstream os;
        os << outside_band << " samples with wind outside [" << s.V_cut_in << ", " << s.V_cut_off << "] m/s";
        result.warnings.push_back(os.str());
    }

    const SampleRange r = metrics_range(s.metrics_t0, s.metrics_t1, dt, n);
    const ErrorStats w = error_stats(rec.omega_t, rec.omega_ref, r);
    result.metrics.mae_omega = w.mae;
    result.metrics.std_omega = w.std;
    result.metrics.mean_P_t = error_stats(rec.P_t, 0.0, r).mean;
    if (high) {
        const ErrorStats pe = error_stats(rec.P_e, high_ref.P_ref, r);
        result.metrics.mae_P_e = pe.mae;
        result.metrics.std_P_e = pe.std;
    }
    return result;
}

bool closed_loop_stable(const RunRecord& record, const RunMetrics& metrics) {
    if (record.size() == 0) return false;
    double ref_sum = 0.0;
    for (std::size_t k = 0; k < record.size(); ++k) {
        if (!std::isfinite(record.omega_t[k])) return false;
        ref_sum += record.omega_ref[k];
    }
    const double ref_mean = ref_sum / static_cast<double>(record.size());
    return std::isfinite(metrics.mae_omega) && metrics.mae_omega <= 0.25 * ref_mean;
}

}  // namespace windmfc
