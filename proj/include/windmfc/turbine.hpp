#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>

namespace windmfc {

/// Raised when a physical function is evaluated outside its domain.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Coefficients c1..c6 of the empirical power-conversion surface Cp(lambda, beta).
struct CpCoefficients {
    double c1 = 0.4;
    double c2 = 116.0;
    double c3 = 0.4;
    double c4 = 5.0;
    double c5 = 21.0;
    double c6 = 0.02;
};

/// Physical constants of the 600 kW three-blade machine (SI units).
struct TurbineParams {
    double J_t = 3.89e5;      // combined rotor + generator inertia [kg m^2]
    double K_t = 400.0;       // viscous damping [N m / (rad/s)]
    double rho = 1.29;        // air density [kg/m^3]
    double R = 21.65;         // blade radius [m]
    double T_g_max = 1.62e5;  // generator torque limit [N m]
    double P_rated = 6.0e5;   // rated electrical power [W]
    CpCoefficients cp;

    /// Throws DomainError if any constant violates its physical range.
    void validate() const;

    /// ½ ρ π R², the swept-area factor of the power formula [kg/m].
    [[nodiscard]] double swept_factor() const;
};

/// Rotor angular speed and simulation clock. omega_t never goes negative.
struct TurbineState {
    double omega_t = 0.0;  // [rad/s]
    double t = 0.0;        // [s]
};

/// Tip-speed ratio below which torque is evaluated at the floor value.
inline constexpr double kLambdaFloor = 0.1;

/// Unclamped Cp; beta in degrees. Throws DomainError outside the formula's domain.
[[nodiscard]] double power_coefficient_raw(double lambda, double beta_deg, const CpCoefficients& c = {});

/// max(0, Cp_raw).
[[nodiscard]] double power_coefficient(double lambda, double beta_deg, const CpCoefficients& c = {});

[[nodiscard]] double tip_speed_ratio(double omega_t, double V, double R);

/// Aerodynamic rotor torque [N m]; lambda is floored at kLambdaFloor.
[[nodiscard]] double aerodynamic_torque(double V, double omega_t, double beta_deg, const TurbineParams& p);

/// Captured aerodynamic power [W]. Equals aerodynamic_torque * omega_t for every lambda.
[[nodiscard]] double aerodynamic_power(double V, double omega_t, double beta_deg, const TurbineParams& p);

/// d(omega_t)/dt of the one-mass model J ω̇ = T_t − K_t ω − T_g.
[[nodiscard]] double rotor_acceleration(const TurbineState& state, double T_g_applied, double V, double beta_deg,
                                        const TurbineParams& p);

using WindFunction = std::function<double(double)>;

/// One classical RK4 step with T_g and beta held over [t, t + dt]; wind is sampled at the
/// RK4 stage times. omega_t is clamped at zero afterwards.
[[nodiscard]] TurbineState step(const TurbineState& state, double T_g_applied, double beta_deg,
                                const WindFunction& wind, double dt, const TurbineParams& p);

struct OperatingPoint {
    double lambda_opt = 0.0;
    double cp_max = 0.0;
    double V_rated = 0.0;      // [m/s]
    double omega_rated = 0.0;  // [rad/s]
};

/// Maximum of Cp(·, 0) on [0.5, 15]: grid scan at 1e-3 then golden-section refinement to 1e-6.
/// V_rated is the wind at which cp_max capture equals P_rated.
[[nodiscard]] OperatingPoint optimal_operating_point(const TurbineParams& p);

}  // namespace windmfc
