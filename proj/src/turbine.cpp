#include "windmfc/turbine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace windmfc {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string(name) + " is not finite");
}

}  // namespace

void TurbineParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0) throw DomainError(std::string("TurbineParams.") + name + " must be > 0");
    };
    positive(J_t, "J_t");
    positive(rho, "rho");
    positive(R, "R");
    positive(T_g_max, "T_g_max");
    positive(P_rated, "P_rated");
    if (!std::isfinite(K_t) || K_t < 0.0) throw DomainError("TurbineParams.K_t must be >= 0");
    for (double c : {cp.c1, cp.c2, cp.c3, cp.c4, cp.c5, cp.c6}) require_finite(c, "Cp coefficient");
}

double TurbineParams::swept_factor() const { return 0.5 * rho * std::numbers::pi * R * R; }

double power_coefficient_raw(double lambda, double beta_deg, const CpCoefficients& c) {
    require_finite(lambda, "lambda");
    require_finite(beta_deg, "beta");
    if (lambda <= 0.0) throw DomainError("lambda must be > 0");
    if (beta_deg < 0.0) throw DomainError("beta must be >= 0");
    const double shifted = lambda + 0.08 * beta_deg;
    if (shifted <= 0.0) throw DomainError("lambda + 0.08 beta must be > 0");

    const double inv_li = 1.0 / shifted - 0.035 / (beta_deg * beta_deg * beta_deg + 1.0);
    return c.c1 * (c.c2 * inv_li - c.c3 * beta_deg - c.c4) * std::exp(-c.c5 * inv_li) + c.c6 * lambda;
}

double power_coefficient(double lambda, double beta_deg, const CpCoefficients& c) {
    return std::max(0.0, power_coefficient_raw(lambda, beta_deg, c));
}

double tip_speed_ratio(double omega_t, double V, double R) {
    require_finite(omega_t, "omega_t");
    require_finite(V, "V");
    if (V <= 0.0) throw DomainError("wind speed must be > 0");
    return R * omega_t / V;
}

double aerodynamic_torque(double V, double omega_t, double beta_deg, const TurbineParams& p) {
    const double lambda = std::max(tip_speed_ratio(omega_t, V, p.R), kLambdaFloor);
    return p.swept_factor() * p.R * V * V * power_coefficient(lambda, beta_deg, p.cp) / lambda;
}

double aerodynamic_power(double V, double omega_t, double beta_deg, const TurbineParams& p) {
    const double lambda = tip_speed_ratio(omega_t, V, p.R);
    if (lambda < kLambdaFloor) return aerodynamic_torque(V, omega_t, beta_deg, p) * omega_t;
    return p.swept_factor() * power_coefficient(lambda, beta_deg, p.cp) * V * V * V;
}

double rotor_acceleration(const TurbineState& state, double T_g_applied, double V, double beta_deg,
                          const TurbineParams& p) {
    const double T_t = aerodynamic_torque(V, state.omega_t, beta_deg, p);
    return (T_t - p.K_t * state.omega_t - T_g_applied) / p.J_t;
}

TurbineState step(const TurbineState& state, double T_g_applied, double beta_deg, const WindFunction& wind,
                  double dt, const TurbineParams& p) {
    if (!(dt > 0.0)) throw DomainError("dt must be > 0");
    const double t = state.t;
    const double w = state.omega_t;
    auto f = [&](double tt, double omega) {
        // the RK4 stages may probe a negative speed; the rotor model itself never sees one
        return rotor_acceleration({std::max(omega, 0.0), tt}, T_g_applied, wind(tt), beta_deg, p);
    };
    const double k1 = f(t, w);
    const double k2 = f(t + 0.5 * dt, w + 0.5 * dt * k1);
    const double k3 = f(t + 0.5 * dt, w + 0.5 * dt * k2);
    const double k4 = f(t + dt, w + dt * k3);

    TurbineState next;
    next.omega_t = std::max(0.0, w + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    next.t = t + dt;
    return next;
}

OperatingPoint optimal_operating_point(const TurbineParams& p) {
    p.validate();
    auto cp0 = [&](double lambda) { return power_coefficient(lambda, 0.0, p.cp); };

    constexpr double lo = 0.5;
    constexpr double hi = 15.0;
    constexpr double grid = 1e-3;
    const auto n = static_cast<long>(std::llround((hi - lo) / grid));
    double best_l = lo;
    double best_cp = cp0(lo);
    for (long i = 1; i <= n; ++i) {
        const double l = lo + static_cast<double>(i) * grid;
        const double v = cp0(l);
        if (v > best_cp) {
            best_cp = v;
            best_l = l;
        }
    }

    // golden-section search on the bracketing grid cells
    double a = std::max(lo, best_l - grid);
    double b = std::min(hi, best_l + grid);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = cp0(x1);
    double f2 = cp0(x2);
    while (b - a > 1e-6) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = cp0(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = cp0(x1);
        }
    }
    const double l_ref = 0.5 * (a + b);
    const double cp_ref = cp0(l_ref);

    OperatingPoint op;
    if (cp_ref >= best_cp) {
        op.lambda_opt = l_ref;
        op.cp_max = cp_ref;
    } else {
        op.lambda_opt = best_l;
        op.cp_max = best_cp;
    }
    op.V_rated = std::cbrt(p.P_rated / (p.swept_factor() * op.cp_max));
    op.omega_rated = op.lambda_opt * op.V_rated / p.R;
    return op;
}

}  // namespace windmfc
