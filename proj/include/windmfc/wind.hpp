#pragma once

#include <array>
#include <vector>

namespace windmfc {

/// Angular frequencies [rad/s] of the four harmonics superposed on the mean wind.
inline constexpr std::array<double, 4> kWindFrequencies{0.1047, 0.2674, 1.309, 3.696};

enum class AmplitudeRule {
    table,       // tabulated rows for 7, 8, 9, 16 and 20 m/s, reciprocal rule otherwise
    reciprocal,  // (0.2, 2, 1, 0.2) / V_moy
};

using Amplitudes = std::array<double, 4>;

[[nodiscard]] Amplitudes amplitudes(double V_moy, AmplitudeRule rule);

struct WindStage {
    double t_start = 0.0;  // [s]
    double V_moy = 0.0;    // [m/s]
};

/// Piecewise-constant mean speed with a four-harmonic modulation. Sine phases run on
/// absolute time, so V jumps when the mean steps.
class WindProfile {
public:
    WindProfile(std::vector<WindStage> schedule, AmplitudeRule rule = AmplitudeRule::table);

    [[nodiscard]] double mean_speed(double t) const;
    [[nodiscard]] double speed(double t) const;

    [[nodiscard]] const std::vector<WindStage>& schedule() const { return schedule_; }
    [[nodiscard]] AmplitudeRule rule() const { return rule_; }

private:
    [[nodiscard]] std::size_t stage_index(double t) const;

    std::vector<WindStage> schedule_;
    std::vector<Amplitudes> amps_;
    AmplitudeRule rule_;
};

[[nodiscard]] inline double wind_speed(const WindProfile& profile, double t) { return profile.speed(t); }

}  // namespace windmfc
