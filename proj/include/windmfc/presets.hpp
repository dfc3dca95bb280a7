#pragma once

#include "windmfc/scenario_io.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace windmfc {

/// low-ip, low-pi, high-ip, high-pi, fault-efficiency, fault-bias.
[[nodiscard]] const std::vector<std::string>& preset_names();

/// Throws ConfigError listing the valid names for an unknown one.
[[nodiscard]] ScenarioFile make_preset(std::string_view name);

}  // namespace windmfc
