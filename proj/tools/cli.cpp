#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "mvstereo/config.hpp"
#include "mvstereo/disparity.hpp"
#include "mvstereo/errors.hpp"
#include "mvstereo/io.hpp"
#include "mvstereo/metrics.hpp"
#include "mvstereo/parallel.hpp"
#include "mvstereo/polar.hpp"
#include "mvstereo/scene.hpp"
#include "mvstereo/trinocular.hpp"
#include "mvstereo/wires.hpp"

namespace mvs::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kConfigEnv = "MVSTEREO_CONFIG";

struct ConfigFlags {
  std::string config_path;
  std::optional<int> threads;
  std::optional<int> window_radius;
  std::optional<int> num_disparities;
  std::optional<int> max_scale;
  std::optional<double> sgm_p1;
  std::optional<double> sgm_p2;
  bool no_uniqueness = false;
  std::optional<double> uniqueness_ratio;
  std::optional<double> weight_epsilon;
  std::optional<double> baseline_ratio;
  std::optional<double> wire_prob_threshold;
  std::optional<int> wire_mask_dilation;
  std::optional<int> min_chain_length;
  std::optional<double> canny_low;
  std::optional<double> canny_high;
  std::optional<double> dolp_threshold;
  std::optional<int> min_specular_area;
};

void add_config_flags(CLI::App* app, ConfigFlags& f) {
  app->add_option("--config", f.config_path,
                  std::string("JSON file with pipeline settings (default: $") + kConfigEnv + "); flags win");
  app->add_option("--threads", f.threads, "worker threads, 0 = all cores");
  app->add_option("--window-radius", f.window_radius, "census window radius");
  app->add_option("--num-disparities", f.num_disparities, "disparity search range");
  app->add_option("--max-scale", f.max_scale, "pyramid levels (1 = no hierarchy)");
  app->add_option("--sgm-p1", f.sgm_p1, "small SGM penalty at 48 census bits");
  app->add_option("--sgm-p2", f.sgm_p2, "large SGM penalty at 48 census bits");
  app->add_flag("--no-uniqueness", f.no_uniqueness, "keep ambiguous pixels");
  app->add_option("--uniqueness-ratio", f.uniqueness_ratio, "uniqueness margin in (0,1)");
  app->add_option("--weight-epsilon", f.weight_epsilon, "trinocular weight regulariser");
  app->add_option("--baseline-ratio", f.baseline_ratio, "vertical / horizontal baseline");
  app->add_option("--wire-prob-threshold", f.wire_prob_threshold, "wire probability cut in (0,1)");
  app->add_option("--wire-mask-dilation", f.wire_mask_dilation, "wire region dilation in pixels");
  app->add_option("--min-chain-length", f.min_chain_length, "shortest wire edge chain kept");
  app->add_option("--canny-low", f.canny_low, "Canny hysteresis low threshold");
  app->add_option("--canny-high", f.canny_high, "Canny hysteresis high threshold");
  app->add_option("--dolp-threshold", f.dolp_threshold, "specular DoLP cut in (0,1)");
  app->add_option("--min-specular-area", f.min_specular_area, "smallest specular region in pixels");
}

struct Settings {
  PipelineConfig cfg;
  int threads = 0;
};

Settings resolve_settings(const ConfigFlags& f) {
  Settings s;
  std::string path = f.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr) path = env;
  }
  if (!path.empty()) {
    json j;
    try {
      j = json::parse(io::read_file(path));
    } catch (const json::parse_error& e) {
      throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (j.is_object() && j.contains("threads")) {
      if (!j["threads"].is_number_integer()) throw ValidationError("config key 'threads' has the wrong type");
      s.threads = j["threads"].get<int>();
      j.erase("threads");
    }
    from_json(j, s.cfg);
  }
  auto set = [](auto& field, const auto& flag) {
    if (flag) field = *flag;
  };
  set(s.threads, f.threads);
  set(s.cfg.window_radius, f.window_radius);
  set(s.cfg.num_disparities, f.num_disparities);
  set(s.cfg.max_scale, f.max_scale);
  set(s.cfg.sgm_p1, f.sgm_p1);
  set(s.cfg.sgm_p2, f.sgm_p2);
  if (f.no_uniqueness) s.cfg.uniqueness = false;
  set(s.cfg.uniqueness_ratio, f.uniqueness_ratio);
  set(s.cfg.weight_epsilon, f.weight_epsilon);
  set(s.cfg.baseline_ratio, f.baseline_ratio);
  set(s.cfg.wire_prob_threshold, f.wire_prob_threshold);
  set(s.cfg.wire_mask_dilation, f.wire_mask_dilation);
  set(s.cfg.min_chain_length, f.min_chain_length);
  set(s.cfg.canny_low, f.canny_low);
  set(s.cfg.canny_high, f.canny_high);
  set(s.cfg.dolp_threshold, f.dolp_threshold);
  set(s.cfg.min_specular_area, f.min_specular_area);
  if (s.threads < 0) throw ValidationError("threads must be >= 0");
  s.cfg.validate();
  return s;
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

fs::path sibling(const fs::path& p, const std::string& suffix) {
  fs::path out = p;
  out.replace_extension();
  out += suffix;
  return out;
}

// Records everything that determines the outputs; thread count and
// timestamps are left out so identical runs give identical manifests.
void write_manifest(const fs::path& output, json manifest) {
  io::write_file(fs::path(output.string() + ".json"), manifest.dump(2) + "\n");
}

BinaryMask mask_from_gray(const GrayImage& img) {
  BinaryMask m(img.width(), img.height(), 0);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) m(x, y) = img(x, y) != 0 ? 1 : 0;
  }
  return m;
}

json map_stats(const DisparityMap& map) {
  return {{"width", map.width()}, {"height", map.height()}, {"valid_pixels", map.valid_count()}};
}

struct ViewPaths {
  std::string right, left, top;
};

void add_views(CLI::App* app, ViewPaths& v, bool with_top, bool top_required) {
  app->add_option("--right", v.right, "base (right) image, PGM")->required();
  app->add_option("--left", v.left, "left image, PGM")->required();
  if (with_top) {
    auto* opt = app->add_option("--top", v.top, "top image, PGM");
    if (top_required) opt->required();
  }
}

DisparityMap dense_disparity(const ViewPaths& v, const PipelineConfig& cfg) {
  const GrayImage right = io::read_pgm(v.right);
  const GrayImage left = io::read_pgm(v.left);
  if (v.top.empty()) return binocular_pipeline(left, right, cfg);
  return trinocular_pipeline(right, left, io::read_pgm(v.top), cfg);
}

json view_inputs(const ViewPaths& v) {
  json j = {{"right", v.right}, {"left", v.left}};
  if (!v.top.empty()) j["top"] = v.top;
  return j;
}

void emit_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-view stereo disparity engine", "mvstereo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mvstereo 0.1.0");

  ConfigFlags flags;
  ViewPaths views;
  std::string output;

  auto* stereo = app.add_subcommand("stereo", "binocular disparity (right is the base view)");
  add_views(stereo, views, false, false);
  stereo->add_option("-o,--output", output, "disparity PFM")->required();
  add_config_flags(stereo, flags);

  auto* trinocular = app.add_subcommand("trinocular", "gradient-weighted horizontal + vertical fusion");
  add_views(trinocular, views, true, true);
  trinocular->add_option("-o,--output", output, "disparity PFM")->required();
  add_config_flags(trinocular, flags);

  std::string wire_prob, csv_path;
  auto* wires = app.add_subcommand("wires", "trinocular disparity with wire edges triangulated on top");
  add_views(wires, views, true, true);
  wires->add_option("--wire-prob", wire_prob, "wire probability PGM (value / 255)")->required();
  wires->add_option("-o,--output", output, "merged disparity PFM")->required();
  wires->add_option("--csv", csv_path, "wire disparities x,y,disparity (default <output>.csv)");
  add_config_flags(wires, flags);

  std::string mosaic_path, dolp_path, aop_path;
  auto* polar = app.add_subcommand("polar", "fill high-DoLP specular regions with fitted planes");
  add_views(polar, views, true, false);
  polar->add_option("--mosaic", mosaic_path, "polarization mosaic PGM at twice the base resolution")->required();
  polar->add_option("-o,--output", output, "filled disparity PFM")->required();
  polar->add_option("--dolp-out", dolp_path, "DoLP PFM (default <output>_dolp.pfm)");
  polar->add_option("--aop-out", aop_path, "AoP PFM in radians (default <output>_aop.pfm)");
  add_config_flags(polar, flags);

  std::string estimate_path, truth_path, wiremask_path, metrics_path;
  double tol = 2.0;
  auto* eval = app.add_subcommand("eval", "score a disparity map against ground truth");
  eval->add_option("--estimate", estimate_path, "estimated disparity PFM")->required();
  eval->add_option("--truth", truth_path, "ground-truth disparity PFM")->required();
  eval->add_option("--wiremask", wiremask_path, "wire mask PGM (nonzero = wire)");
  eval->add_option("--tol", tol, "bad-pixel tolerance in pixels")->check(CLI::NonNegativeNumber);
  eval->add_option("-o,--output", metrics_path, "metrics JSON (always printed to stdout)");

  std::string scene_path, bundle_dir;
  auto* synth = app.add_subcommand("synth", "render a synthetic scene bundle");
  synth->add_option("--scene", scene_path, "scene description JSON")->required();
  synth->add_option("-o,--output", bundle_dir, "bundle directory")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what(), kUsage);
    return kUsage;
  }

  try {
    if (*eval) {
      const FloatImage est_raw = io::read_pfm(estimate_path);
      const FloatImage truth_raw = io::read_pfm(truth_path);
      auto to_map = [](const FloatImage& img) {
        float hi = 0.0f;
        for (float v : img.data()) hi = std::max(hi, v);
        DisparityMap m(img.width(), img.height(), static_cast<int>(std::ceil(hi)) + 1);
        for (int y = 0; y < img.height(); ++y) {
          for (int x = 0; x < img.width(); ++x) {
            if (img(x, y) >= 0.0f) m(x, y) = img(x, y);
          }
        }
        return m;
      };
      const DisparityMap est = to_map(est_raw);
      const DisparityMap truth = to_map(truth_raw);
      json metrics = {{"tol", tol},
                      {"bad_pixel_pct", bad_pixel_pct(est, truth, tol)},
                      {"valid_truth_pixels", truth.valid_count()},
                      {"valid_estimate_pixels", est.valid_count()}};
      if (!wiremask_path.empty()) {
        const BinaryMask mask = mask_from_gray(io::read_pgm(wiremask_path));
        const bool any = std::ranges::any_of(mask.data(), [](std::uint8_t v) { return v != 0; });
        metrics["wire_detection_pct"] = any ? json(wire_detection_pct(est, mask, truth, tol)) : json(nullptr);
      }
      const std::string text = metrics.dump(2) + "\n";
      if (!metrics_path.empty()) io::write_file(metrics_path, text);
      out << text;
      return kOk;
    }

    if (*synth) {
      json scene_json;
      try {
        scene_json = json::parse(io::read_file(scene_path));
      } catch (const json::parse_error& e) {
        throw ValidationError("scene '" + scene_path + "' is not valid JSON: " + e.what());
      }
      SceneSpec spec;
      try {
        spec = scene_json.get<SceneSpec>();
      } catch (const json::exception& e) {
        throw ValidationError(std::string("bad scene description: ") + e.what());
      }
      const SceneBundle bundle = generate_scene(spec);
      write_bundle(bundle, bundle_dir);
      out << json{{"command", "synth"}, {"output", bundle_dir}, {"truth", map_stats(bundle.truth)}}.dump() << "\n";
      return kOk;
    }

    const Settings settings = resolve_settings(flags);
    set_thread_count(settings.threads);
    const PipelineConfig& cfg = settings.cfg;
    json manifest = {{"config", cfg}, {"inputs", view_inputs(views)}};

    if (*stereo || *trinocular) {
      const DisparityMap map = dense_disparity(views, cfg);
      io::write_disparity(output, map);
      manifest["command"] = *stereo ? "stereo" : "trinocular";
      manifest["outputs"] = {{"disparity", output}};
      manifest["stats"] = map_stats(map);
    } else if (*wires) {
      const GrayImage right = io::read_pgm(views.right);
      const GrayImage left = io::read_pgm(views.left);
      const GrayImage top = io::read_pgm(views.top);
      const WireProbabilityMap prob = WireProbabilityMap::from_gray(io::read_pgm(wire_prob));
      const DisparityMap dense = trinocular_pipeline(right, left, top, cfg);
      const WireResult wr = semantic_wire_disparities(right, left, top, prob, cfg);
      const DisparityMap merged = merge_wire_disparities(dense, wr.disparities);
      if (csv_path.empty()) csv_path = sibling(output, ".csv").string();
      std::string csv = "x,y,disparity\n";
      for (const auto& e : wr.disparities.entries) {
        csv += std::to_string(e.x) + "," + std::to_string(e.y) + "," + shortest(e.disparity) + "\n";
      }
      io::write_disparity(output, merged);
      io::write_file(csv_path, csv);
      manifest["command"] = "wires";
      manifest["inputs"]["wire_prob"] = wire_prob;
      manifest["outputs"] = {{"disparity", output}, {"wire_csv", csv_path}};
      manifest["stats"] = map_stats(merged);
      manifest["stats"]["wire_chains"] = wr.chains.size();
      manifest["stats"]["wire_pixels"] = wr.disparities.entries.size();
    } else if (*polar) {
      const DisparityMap dense = dense_disparity(views, cfg);
      const PolarChannels ch = decode_mosaic(PolarMosaic(io::read_pgm(mosaic_path)));
      DoubleImage dolp = ch.dolp;
      DoubleImage aop = ch.aop;
      if (!dolp.same_shape(dense)) {
        dolp = resample_nearest(dolp, dense.width(), dense.height());
        aop = resample_nearest(aop, dense.width(), dense.height());
      }
      auto regions = segment_specular(dolp, cfg.dolp_threshold, cfg.min_specular_area);
      const PlaneFillResult filled = plane_fill(dense, regions);
      if (dolp_path.empty()) dolp_path = sibling(output, "_dolp.pfm").string();
      if (aop_path.empty()) aop_path = sibling(output, "_aop.pfm").string();
      io::write_disparity(output, filled.map);
      io::write_pfm(dolp_path, dolp);
      io::write_pfm(aop_path, aop);
      json reports = json::array();
      for (const auto& r : filled.reports) {
        json jr = {{"region", r.region_index},
                   {"pixels", regions[r.region_index].pixels.size()},
                   {"filled", r.filled},
                   {"ring_samples", r.ring_samples}};
        if (const auto& p = regions[r.region_index].plane) jr["plane"] = {p->a, p->b, p->c};
        if (!r.reason.empty()) jr["reason"] = r.reason;
        reports.push_back(std::move(jr));
      }
      manifest["command"] = "polar";
      manifest["inputs"]["mosaic"] = mosaic_path;
      manifest["outputs"] = {{"disparity", output}, {"dolp", dolp_path}, {"aop", aop_path}};
      manifest["stats"] = map_stats(filled.map);
      manifest["regions"] = std::move(reports);
    }
    write_manifest(output, manifest);
    out << manifest.dump() << "\n";
    return kOk;
  } catch (const IoError& e) {
    emit_error(err, "io", e.what(), kIo);
    return kIo;
  } catch (const fs::filesystem_error& e) {
    emit_error(err, "io", e.what(), kIo);
    return kIo;
  } catch (const DimensionError& e) {
    emit_error(err, "dimension", e.what(), kInvalid);
    return kInvalid;
  } catch (const ValidationError& e) {
    emit_error(err, "validation", e.what(), kInvalid);
    return kInvalid;
  }
}

}  // namespace mvs::cli
