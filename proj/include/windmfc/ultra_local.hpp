#pragma once

// Model-free control: first-order ultra-local model  ẏ = F + α u,
// intelligent proportional (iP) law and the two sliding-window estimators of F.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace windmfc {

enum class Estimator { algebraic, closed_loop };

/// Sign convention of the tracking error handed to the control law.
enum class ErrorConvention { y_minus_ref, ref_minus_y };

[[nodiscard]] inline double tracking_error(double y, double y_ref, ErrorConvention c) {
    return c == ErrorConvention::y_minus_ref ? y - y_ref : y_ref - y;
}

struct ActuatorLimits {
    double u_min = 0.0;
    double u_max = 0.0;
};

/// Raised when a controller receives a non-finite measurement.
class ControllerFault : public std::runtime_error {
public:
    explicit ControllerFault(const std::string& what) : std::runtime_error(what) {}
};

struct UltraLocalConfig {
    double alpha = 1.0;
    double K_P = 1.0;    // [1/s]
    double tau = 1.0;    // estimation window length [s]
    Estimator estimator = Estimator::algebraic;
    double dt = 0.01;    // sample period [s]
    ErrorConvention error_convention = ErrorConvention::y_minus_ref;

    /// Throws std::invalid_argument unless alpha != 0, tau > 0, dt > 0 and tau >= 2 dt.
    void validate() const;
};

struct WindowSample {
    double u_applied = 0.0;
    double y = 0.0;
    double ydot_ref = 0.0;
    double e = 0.0;
};

/// Fixed-capacity ring buffer of controller samples, iterated oldest to newest.
/// The capacity is round(tau/dt) + 1 so that a full window spans exactly tau seconds.
class SampleWindow {
public:
    explicit SampleWindow(std::size_t capacity);

    void push(const WindowSample& s);
    void clear();

    [[nodiscard]] std::size_t size() const { return fill_; }
    [[nodiscard]] std::size_t capacity() const { return buf_.size(); }
    [[nodiscard]] bool full() const { return fill_ == buf_.size(); }

    /// i = 0 is the oldest retained sample.
    [[nodiscard]] const WindowSample& operator[](std::size_t i) const { return buf_[(head_ + i) % buf_.size()]; }

private:
    std::vector<WindowSample> buf_;
    std::size_t head_ = 0;
    std::size_t fill_ = 0;
};

[[nodiscard]] std::size_t window_capacity(double tau, double dt);

/// u = −(F_est − ẏ* + K_P e)/α.
[[nodiscard]] double ip_control(double F_est, double ydot_ref, double e, const UltraLocalConfig& cfg);

/// F_est = −(6/τ³) ∫₀^τ [(τ − 2σ) y(σ) + α σ (τ − σ) u(σ)] dσ with σ the window-local time,
/// trapezoidal rule, τ replaced by the span of the retained samples. Empty when fewer than
/// two samples are held.
[[nodiscard]] std::optional<double> estimate_f_algebraic(const SampleWindow& w, double alpha, double dt);

/// F_est = (1/τ) ∫ (ẏ* − α u − K_P e) dσ over the window, trapezoidal rule.
[[nodiscard]] std::optional<double> estimate_f_closed_loop(const SampleWindow& w, double alpha, double K_P,
                                                          double dt);

struct ControllerOutput {
    double u_raw = 0.0;
    double u_applied = 0.0;
    double F_est = 0.0;
};

/// Single-owner iP controller with its estimation window.
class UltraLocalController {
public:
    explicit UltraLocalController(UltraLocalConfig cfg);

    /// F_est from the samples recorded so far (0 before two samples exist).
    [[nodiscard]] double estimate() const;

    /// Control law for a given estimate and measurement; does not touch the window.
    [[nodiscard]] ControllerOutput evaluate(double F_est, double y, double y_ref, double ydot_ref,
                                            ActuatorLimits limits) const;

    /// estimate() + evaluate(), then records (u_applied, y, ẏ*, e). Throws ControllerFault on a NaN law or a
    /// non-finite measurement and std::invalid_argument if u_min >= u_max.
    ControllerOutput step(double y, double y_ref, double ydot_ref, ActuatorLimits limits);

    /// Records a sample computed with a previously obtained estimate.
    ControllerOutput commit(double F_est, double y, double y_ref, double ydot_ref, ActuatorLimits limits);

    [[nodiscard]] const UltraLocalConfig& config() const { return cfg_; }
    [[nodiscard]] const SampleWindow& window() const { return window_; }

private:
    UltraLocalConfig cfg_;
    SampleWindow window_;
};

}  // namespace windmfc
