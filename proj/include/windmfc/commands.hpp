#pragma once

#include "windmfc/scenario_io.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace windmfc {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitConfig = 2,
    kExitControllerFault = 3,
    kExitMismatch = 4,
    kExitIo = 5,
};

struct Overrides {
    std::optional<double> dt;
    std::optional<double> duration;  // the metrics window end is pulled in when it exceeds the new duration
    std::optional<ErrorConvention> error_convention;
};

/// Applies overrides and revalidates; throws ConfigError.
void apply_overrides(ScenarioFile& f, const Overrides& o);

/// Writes timeseries.csv (unless disabled) and summary.json into out_dir.
int cmd_run(const std::string& config_path, const std::filesystem::path& out_dir, const Overrides& o,
            std::ostream& err);

/// Writes comparison.json and comparison.txt for two scenarios sharing region and wind.
int cmd_compare(const std::string& config_a, const std::string& config_b, const std::filesystem::path& out_dir,
                const Overrides& o, std::ostream& err);

/// Emits the preset document to `out`.
int cmd_presets(const std::string& name, std::ostream& out, std::ostream& err);

/// comparison.txt body; rows follow the region (P_t mean for low speed, P_e error for high speed).
[[nodiscard]] std::string comparison_table(const ScenarioFile& a, const RunMetrics& ma, const ScenarioFile& b,
                                           const RunMetrics& mb);

/// a / b, or nullopt when b is 0.
[[nodiscard]] std::optional<double> metric_ratio(double a, double b);

}  // namespace windmfc
