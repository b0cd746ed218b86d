#include "mvstereo/config.hpp"

#include <string_view>

namespace mvs {
namespace {

template <typename Fn>
void for_each_field(PipelineConfig& cfg, Fn&& fn) {
  fn("window_radius", cfg.window_radius);
  fn("num_disparities", cfg.num_disparities);
  fn("max_scale", cfg.max_scale);
  fn("sgm_p1", cfg.sgm_p1);
  fn("sgm_p2", cfg.sgm_p2);
  fn("uniqueness", cfg.uniqueness);
  fn("uniqueness_ratio", cfg.uniqueness_ratio);
  fn("weight_epsilon", cfg.weight_epsilon);
  fn("baseline_ratio", cfg.baseline_ratio);
  fn("wire_prob_threshold", cfg.wire_prob_threshold);
  fn("wire_mask_dilation", cfg.wire_mask_dilation);
  fn("min_chain_length", cfg.min_chain_length);
  fn("canny_low", cfg.canny_low);
  fn("canny_high", cfg.canny_high);
  fn("dolp_threshold", cfg.dolp_threshold);
  fn("min_specular_area", cfg.min_specular_area);
}

}  // namespace

void to_json(nlohmann::json& j, const PipelineConfig& cfg) {
  j = nlohmann::json::object();
  PipelineConfig copy = cfg;
  for_each_field(copy, [&](std::string_view key, const auto& value) { j[std::string(key)] = value; });
}

void from_json(const nlohmann::json& j, PipelineConfig& cfg) {
  if (!j.is_object()) throw ValidationError("pipeline config must be a JSON object");
  std::size_t known = 0;
  for_each_field(cfg, [&](std::string_view key, auto& field) {
    const auto it = j.find(std::string(key));
    if (it == j.end()) return;
    ++known;
    using T = std::remove_reference_t<decltype(field)>;
    const bool ok = std::is_same_v<T, bool> ? it->is_boolean()
                    : std::is_integral_v<T> ? it->is_number_integer()
                                            : it->is_number();
    if (!ok) throw ValidationError("config key '" + std::string(key) + "' has the wrong type");
    field = it->template get<T>();
  });
  if (known != j.size()) {
    PipelineConfig probe;
    for (const auto& [key, value] : j.items()) {
      bool found = false;
      for_each_field(probe, [&](std::string_view k, auto&) { found = found || k == key; });
      if (!found) throw ValidationError("unknown config key '" + key + "'");
    }
  }
}

}  // namespace mvs
