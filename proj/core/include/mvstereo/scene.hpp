#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvstereo/image.hpp"

namespace mvs {

/// Axis-aligned rectangle in base-camera pixels.
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
  bool contains(double px, double py) const {
    return px >= x && py >= y && px < x + width && py < y + height;
  }
};

enum class StripeOrientation { Vertical, Horizontal };

/// Value noise (one lattice per octave, smoothstep-interpolated) plus an
/// optional sinusoidal stripe pattern. Vertical stripes vary along x.
struct TextureSpec {
  /// Lattice spacing may differ per axis; a large cell_x gives structure
  /// that is nearly constant along rows.
  struct Octave {
    double cell_x = 1.0;
    double cell_y = 1.0;
    double amplitude = 0.0;
  };
  double mean = 128.0;
  std::vector<Octave> octaves{{1.0, 1.0, 50.0}};
  double stripe_amplitude = 0.0;
  double stripe_period = 4.0;
  StripeOrientation stripe_orientation = StripeOrientation::Vertical;
  double stripe_phase = 0.0;
  std::uint64_t seed = 0;
};

/// Textured surface with disparity d = disparity + slope_x * x + slope_y * y.
/// Without a rect it covers the whole frame.
struct PlaneObject {
  std::optional<Rect> rect;
  double disparity = 0.0;
  double slope_x = 0.0;
  double slope_y = 0.0;
  TextureSpec texture;
};

/// Straight thin wire of uniform intensity.
struct WireObject {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  double thickness = 1.0;
  double disparity = 0.0;
  double intensity = 30.0;
};

/// Reflective rectangle: its outline sits at `disparity`, its visible
/// content is a reflection at `reflected_disparity`, and its light is
/// polarized with the given degree and angle.
struct WindowObject {
  Rect rect;
  double disparity = 0.0;
  double reflected_disparity = 0.0;
  TextureSpec reflected;
  double dolp = 0.8;
  double aop = 0.4;
};

struct Radiometry {
  double gain = 1.0;
  double offset = 0.0;
};

struct SceneSpec {
  int width = 64;
  int height = 64;
  int num_disparities = 32;
  std::uint64_t seed = 0;
  double background = 128.0;
  bool mosaic = false;
  /// Degree of polarization of non-reflective surfaces in the mosaic.
  double unpolarized_dolp = 0.02;
  /// Wire probability raster marks pixels within this Chebyshev distance
  /// of a visible wire pixel.
  int wire_prob_dilation = 3;
  Radiometry left_radiometry;
  Radiometry top_radiometry;
  std::vector<PlaneObject> planes;
  std::vector<WireObject> wires;
  std::vector<WindowObject> windows;

  /// Throws ValidationError on inconsistent content.
  void validate() const;
};

void to_json(nlohmann::json& j, const SceneSpec& s);
void from_json(const nlohmann::json& j, SceneSpec& s);

/// Rendered trinocular triple plus everything needed to score it.
struct SceneBundle {
  GrayImage right;
  GrayImage left;
  GrayImage top;
  std::optional<GrayImage> mosaic;     // 2x base resolution
  std::optional<GrayImage> wire_prob;  // value / 255 = probability
  DisparityMap truth;
  BinaryMask wire_mask;
  BinaryMask specular_mask;
  nlohmann::json manifest;
};

/// Renders right (base), left and top views. A base point at disparity d
/// appears at (x + d, y) in the left view and (x, y + d) in the top view;
/// nearer surfaces (larger disparity) occlude farther ones. Ground truth is
/// the visible surface's disparity (a window's own surface, not its
/// reflection) and is invalid where the point has no correspondence in the
/// left view, i.e. it is occluded there or falls outside the frame.
SceneBundle generate_scene(const SceneSpec& spec);

struct SceneAudit {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
};

/// Re-derives left/top pixels from the right image and the ground truth
/// wherever the surface is visible in both views at an integer disparity,
/// and counts disagreements. Requires identical radiometry across views.
SceneAudit audit_scene(const SceneSpec& spec, const SceneBundle& bundle);

/// right.pgm, left.pgm, top.pgm, truth.pfm, wiremask.pgm, specmask.pgm,
/// manifest.json, plus mosaic.pgm and wires.pgm when present.
void write_bundle(const SceneBundle& bundle, const std::filesystem::path& dir);
SceneBundle read_bundle(const std::filesystem::path& dir);

}  // namespace mvs
