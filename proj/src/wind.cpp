#include "windmfc/wind.hpp"

#include "windmfc/turbine.hpp"

#include <algorithm>
#include <cmath>

namespace windmfc {

namespace {

struct TableRow {
    double V_moy;
    Amplitudes a;
};

constexpr std::array<TableRow, 5> kAmplitudeTable{{
    {7.0, {0.029, 0.286, 0.143, 0.029}},
    {8.0, {0.025, 0.25, 0.125, 0.025}},
    {9.0, {0.022, 0.222, 0.111, 0.022}},
    {16.0, {0.0125, 0.125, 0.0625, 0.0125}},
    {20.0, {0.01, 0.1, 0.05, 0.01}},
}};

}  // namespace

Amplitudes amplitudes(double V_moy, AmplitudeRule rule) {
    if (!std::isfinite(V_moy) || V_moy <= 0.0) throw DomainError("mean wind speed must be > 0");
    if (rule == AmplitudeRule::table) {
        for (const auto& row : kAmplitudeTable) {
            if (row.V_moy == V_moy) return row.a;
        }
    }
    return {0.2 / V_moy, 2.0 / V_moy, 1.0 / V_moy, 0.2 / V_moy};
}

WindProfile::WindProfile(std::vector<WindStage> schedule, AmplitudeRule rule)
    : schedule_(std::move(schedule)), rule_(rule) {
    if (schedule_.empty()) throw DomainError("wind schedule is empty");
    if (schedule_.front().t_start != 0.0) throw DomainError("wind schedule must start at t = 0");
    for (std::size_t i = 0; i < schedule_.size(); ++i) {
        const auto& s = schedule_[i];
        if (!std::isfinite(s.t_start)) throw DomainError("wind schedule time is not finite");
        if (i > 0 && !(s.t_start > schedule_[i - 1].t_start))
            throw DomainError("wind schedule times must be strictly increasing");
        amps_.push_back(amplitudes(s.V_moy, rule_));
    }
}

std::size_t WindProfile::stage_index(double t) const {
    auto it = std::upper_bound(schedule_.begin(), schedule_.end(), t,
                               [](double tt, const WindStage& s) { return tt < s.t_start; });
    return it == schedule_.begin() ? 0 : static_cast<std::size_t>(it - schedule_.begin()) - 1;
}

double WindProfile::mean_speed(double t) const { return schedule_[stage_index(t)].V_moy; }

double WindProfile::speed(double t) const {
    const std::size_t i = stage_index(t);
    const Amplitudes& a = amps_[i];
    double sum = 1.0;
    for (std::size_t k = 0; k < kWindFrequencies.size(); ++k) sum += a[k] * std::sin(kWindFrequencies[k] * t);
    return schedule_[i].V_moy * sum;
}

}  // namespace windmfc
