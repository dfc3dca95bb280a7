#pragma once

#include "windmfc/scenario.hpp"
#include "windmfc/simulation.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace windmfc {

inline constexpr int kScenarioFileVersion = 1;

/// Malformed or inconsistent scenario document; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct OutputOptions {
    bool timeseries = true;
};

struct ScenarioFile {
    Scenario scenario;
    OutputOptions output;
};

/// Strict parse: unknown keys and missing mandatory keys raise ConfigError.
[[nodiscard]] ScenarioFile scenario_from_json(const nlohmann::json& doc);
[[nodiscard]] ScenarioFile load_scenario(const std::string& path);

/// Full document with every key spelled out; scenario_from_json(scenario_to_json(f)) == f.
[[nodiscard]] nlohmann::json scenario_to_json(const ScenarioFile& f);

/// FNV-1a 64 of the canonical (sorted-key, compact) serialization, as "fnv1a64:<16 hex>".
[[nodiscard]] std::string scenario_fingerprint(const ScenarioFile& f);
[[nodiscard]] std::uint64_t fnv1a64(std::string_view bytes);

/// Header: t,V,omega_t,omega_ref,beta_cmd,T_g_cmd,T_g_act,P_t,P_e,F_est_loop1,F_est_loop2
/// 9 significant digits, LF endings, empty fields for loops without an estimate.
void write_timeseries_csv(const RunRecord& record, std::ostream& os);

/// Value rounded to `digits` significant decimal digits (as emitted in reports).
[[nodiscard]] double round_significant(double v, int digits);

inline constexpr int kSummaryDigits = 6;

[[nodiscard]] nlohmann::json metrics_to_json(const RunMetrics& m);
[[nodiscard]] nlohmann::json summary_json(const ScenarioFile& f, const RunResult& r);

}  // namespace windmfc
