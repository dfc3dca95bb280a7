#include "windmfc/ultra_local.hpp"

#include <algorithm>
#include <cmath>

namespace windmfc {

void UltraLocalConfig::validate() const {
    if (!std::isfinite(alpha) || alpha == 0.0) throw std::invalid_argument("alpha must be finite and non-zero");
    if (!std::isfinite(K_P)) throw std::invalid_argument("K_P must be finite");
    if (!std::isfinite(tau) || tau <= 0.0) throw std::invalid_argument("tau must be > 0");
    if (!std::isfinite(dt) || dt <= 0.0) throw std::invalid_argument("dt must be > 0");
    if (tau < 2.0 * dt) throw std::invalid_argument("tau must be >= 2 dt");
}

SampleWindow::SampleWindow(std::size_t capacity) : buf_(capacity) {
    if (capacity < 2) throw std::invalid_argument("sample window capacity must be >= 2");
}

void SampleWindow::push(const WindowSample& s) {
    if (fill_ < buf_.size()) {
        buf_[(head_ + fill_) % buf_.size()] = s;
        ++fill_;
    } else {
        buf_[head_] = s;
        head_ = (head_ + 1) % buf_.size();
    }
}

void SampleWindow::clear() {
    head_ = 0;
    fill_ = 0;
}

std::size_t window_capacity(double tau, double dt) {
    return static_cast<std::size_t>(std::llround(tau / dt)) + 1;
}

double ip_control(double F_est, double ydot_ref, double e, const UltraLocalConfig& cfg) {
    return -(F_est - ydot_ref + cfg.K_P * e) / cfg.alpha;
}

std::optional<double> estimate_f_algebraic(const SampleWindow& w, double alpha, double dt) {
    const std::size_t n = w.size();
    if (n < 2) return std::nullopt;
    const double tau = static_cast<double>(n - 1) * dt;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double sigma = static_cast<double>(j) * dt;
        const double weight = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        const WindowSample& s = w[j];
        acc += weight * ((tau - 2.0 * sigma) * s.y + alpha * sigma * (tau - sigma) * s.u_applied);
    }
    return -6.0 / (tau * tau * tau) * acc * dt;
}

std::optional<double> estimate_f_closed_loop(const SampleWindow& w, double alpha, double K_P, double dt) {
    const std::size_t n = w.size();
    if (n < 2) return std::nullopt;
    const double tau = static_cast<double>(n - 1) * dt;
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double weight = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        const WindowSample& s = w[j];
        acc += weight * (s.ydot_ref - alpha * s.u_applied - K_P * s.e);
    }
    return acc * dt / tau;
}

UltraLocalController::UltraLocalController(UltraLocalConfig cfg)
    : cfg_((cfg.validate(), cfg)), window_(window_capacity(cfg.tau, cfg.dt)) {}

double UltraLocalController::estimate() const {
    std::optional<double> f;
    if (cfg_.estimator == Estimator::algebraic)
        f = estimate_f_algebraic(window_, cfg_.alpha, cfg_.dt);
    else
        f = estimate_f_closed_loop(window_, cfg_.alpha, cfg_.K_P, cfg_.dt);
    return f.value_or(0.0);
}

ControllerOutput UltraLocalController::evaluate(double F_est, double y, double y_ref, double ydot_ref,
                                                ActuatorLimits limits) const {
    ControllerOutput out;
    out.F_est = F_est;
    out.u_raw = ip_control(F_est, ydot_ref, tracking_error(y, y_ref, cfg_.error_convention), cfg_);
    out.u_applied = std::clamp(out.u_raw, limits.u_min, limits.u_max);
    return out;
}

ControllerOutput UltraLocalController::step(double y, double y_ref, double ydot_ref, ActuatorLimits limits) {
    return commit(estimate(), y, y_ref, ydot_ref, limits);
}

ControllerOutput UltraLocalController::commit(double F_est, double y, double y_ref, double ydot_ref,
                                              ActuatorLimits limits) {
    if (!std::isfinite(y) || !std::isfinite(y_ref) || !std::isfinite(ydot_ref))
        throw ControllerFault("non-finite measurement");
    if (!(limits.u_min < limits.u_max)) throw std::invalid_argument("u_min must be < u_max");
    const ControllerOutput out = evaluate(F_est, y, y_ref, ydot_ref, limits);
    if (std::isnan(out.u_raw)) throw ControllerFault("control law produced NaN");
    window_.push({out.u_applied, y, ydot_ref, tracking_error(y, y_ref, cfg_.error_convention)});
    return out;
}

}  // namespace windmfc
