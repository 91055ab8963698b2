#pragma once

#include <string>
#include <string_view>

#include "rotoblur/controller.hpp"

namespace rotoblur {

/// Flat JSON object keyed by ControllerConfig field names. Absent keys keep
/// their defaults; unknown keys and wrongly typed values are InvalidConfig.
/// The result is validated.
ControllerConfig parse_config(std::string_view json_text);

std::string write_config(const ControllerConfig& config);

ControllerConfig load_config(const std::string& path);

}  // namespace rotoblur
