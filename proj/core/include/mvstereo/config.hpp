#pragma once

#include <nlohmann/json.hpp>

#include "mvstereo/image.hpp"

namespace mvs {

/// Keys are the field names (window_radius, num_disparities, ...).
void to_json(nlohmann::json& j, const PipelineConfig& cfg);

/// Overlays the keys present in `j` onto `cfg`; absent keys keep their
/// current value. Unknown keys and wrong types throw ValidationError.
void from_json(const nlohmann::json& j, PipelineConfig& cfg);

}  // namespace mvs
