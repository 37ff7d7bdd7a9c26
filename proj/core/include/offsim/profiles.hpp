#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <offsim/types.hpp>

namespace offsim {

// Built-in device profiles for the reference testbed: five Android devices
// and one wall-powered cloudlet, plus a low-power coordinator for scenarios
// where an external host only generates and schedules jobs.
const std::vector<DeviceProfile>& builtin_profiles();

std::optional<DeviceProfile> find_profile(std::string_view name);

}  // namespace offsim
