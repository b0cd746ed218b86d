#include "mvstereo/scene.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <limits>
#include <numbers>

#include "mvstereo/io.hpp"
#include "mvstereo/polar.hpp"

namespace mvs {
namespace {

using nlohmann::json;

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in [0, 1) per integer lattice site.
double lattice(std::uint64_t seed, std::uint64_t channel, std::int64_t ix, std::int64_t iy) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ channel);
  h = splitmix(h ^ static_cast<std::uint64_t>(ix));
  h = splitmix(h ^ static_cast<std::uint64_t>(iy));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

double texture_value(const TextureSpec& tex, std::uint64_t scene_seed, double u, double v) {
  const std::uint64_t seed = splitmix(scene_seed) ^ tex.seed;
  double value = tex.mean;
  for (std::size_t o = 0; o < tex.octaves.size(); ++o) {
    const auto& oct = tex.octaves[o];
    const double gx = u / oct.cell_x;
    const double gy = v / oct.cell_y;
    const double fx0 = std::floor(gx);
    const double fy0 = std::floor(gy);
    const auto x0 = static_cast<std::int64_t>(fx0);
    const auto y0 = static_cast<std::int64_t>(fy0);
    const double sx = smoothstep(gx - fx0);
    const double sy = smoothstep(gy - fy0);
    const double n00 = lattice(seed, o, x0, y0);
    const double n10 = lattice(seed, o, x0 + 1, y0);
    const double n01 = lattice(seed, o, x0, y0 + 1);
    const double n11 = lattice(seed, o, x0 + 1, y0 + 1);
    const double n = (n00 * (1 - sx) + n10 * sx) * (1 - sy) + (n01 * (1 - sx) + n11 * sx) * sy;
    value += oct.amplitude * (2.0 * n - 1.0);
  }
  if (tex.stripe_amplitude != 0.0) {
    const double s = tex.stripe_orientation == StripeOrientation::Vertical ? u : v;
    value += tex.stripe_amplitude * std::sin(2.0 * std::numbers::pi * s / tex.stripe_period + tex.stripe_phase);
  }
  return value;
}

std::uint8_t quantize(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

enum class Camera { Right, Left, Top };
enum class Kind { Plane, Wire, Window };

struct Hit {
  Kind kind;
  std::size_t index;
  double disparity;
  double bx;
  double by;
};

double segment_distance(const WireObject& w, double px, double py) {
  const double vx = w.x1 - w.x0;
  const double vy = w.y1 - w.y0;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((px - w.x0) * vx + (py - w.y0) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (w.x0 + t * vx), py - (w.y0 + t * vy));
}

// Base-frame position seen at (u, v) by `cam` for a surface of constant disparity.
std::pair<double, double> to_base(Camera cam, double u, double v, double d) {
  switch (cam) {
    case Camera::Left: return {u - d, v};
    case Camera::Top: return {u, v - d};
    default: return {u, v};
  }
}

std::optional<Hit> visible(const SceneSpec& s, Camera cam, double u, double v) {
  std::optional<Hit> best;
  auto offer = [&](Hit h) {
    if (!best || h.disparity >= best->disparity) best = h;
  };
  for (std::size_t i = 0; i < s.planes.size(); ++i) {
    const PlaneObject& p = s.planes[i];
    double bx = u;
    double by = v;
    if (cam == Camera::Left) {
      bx = (u - p.disparity - p.slope_y * v) / (1.0 + p.slope_x);
    } else if (cam == Camera::Top) {
      by = (v - p.disparity - p.slope_x * u) / (1.0 + p.slope_y);
    }
    if (p.rect && !p.rect->contains(bx, by)) continue;
    offer({Kind::Plane, i, p.disparity + p.slope_x * bx + p.slope_y * by, bx, by});
  }
  for (std::size_t i = 0; i < s.wires.size(); ++i) {
    const WireObject& w = s.wires[i];
    const auto [bx, by] = to_base(cam, u, v, w.disparity);
    if (segment_distance(w, bx, by) < w.thickness / 2.0) offer({Kind::Wire, i, w.disparity, bx, by});
  }
  for (std::size_t i = 0; i < s.windows.size(); ++i) {
    const WindowObject& w = s.windows[i];
    const auto [bx, by] = to_base(cam, u, v, w.disparity);
    if (w.rect.contains(bx, by)) offer({Kind::Window, i, w.disparity, bx, by});
  }
  return best;
}

double shade(const SceneSpec& s, Camera cam, const Hit& hit, double u, double v) {
  switch (hit.kind) {
    case Kind::Plane: return texture_value(s.planes[hit.index].texture, s.seed, hit.bx, hit.by);
    case Kind::Wire: return s.wires[hit.index].intensity;
    case Kind::Window: {
      const WindowObject& w = s.windows[hit.index];
      const auto [rx, ry] = to_base(cam, u, v, w.reflected_disparity);
      return texture_value(w.reflected, s.seed ^ 0x5bd1e995ULL, rx, ry);
    }
  }
  return s.background;
}

GrayImage render(const SceneSpec& s, Camera cam, const Radiometry& radiometry) {
  GrayImage img(s.width, s.height);
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) {
      const auto hit = visible(s, cam, x, y);
      const double value = hit ? shade(s, cam, *hit, x, y) : s.background;
      img(x, y) = quantize(radiometry.gain * value + radiometry.offset);
    }
  }
  return img;
}

json texture_to_json(const TextureSpec& t) {
  json octaves = json::array();
  for (const auto& o : t.octaves) {
    if (o.cell_x == o.cell_y) {
      octaves.push_back({o.cell_x, o.amplitude});
    } else {
      octaves.push_back({o.cell_x, o.cell_y, o.amplitude});
    }
  }
  return {{"mean", t.mean},
          {"octaves", octaves},
          {"stripes",
           {{"amplitude", t.stripe_amplitude},
            {"period", t.stripe_period},
            {"orientation", t.stripe_orientation == StripeOrientation::Vertical ? "vertical" : "horizontal"},
            {"phase", t.stripe_phase}}},
          {"seed", t.seed}};
}

TextureSpec texture_from_json(const json& j) {
  TextureSpec t;
  t.mean = j.value("mean", t.mean);
  if (j.contains("octaves")) {
    t.octaves.clear();
    // [cell, amplitude] or [cell_x, cell_y, amplitude]
    for (const auto& o : j.at("octaves")) {
      if (o.size() == 2) {
        t.octaves.push_back({o.at(0).get<double>(), o.at(0).get<double>(), o.at(1).get<double>()});
      } else if (o.size() == 3) {
        t.octaves.push_back({o.at(0).get<double>(), o.at(1).get<double>(), o.at(2).get<double>()});
      } else {
        throw ValidationError("texture octave must be [cell, amplitude] or [cell_x, cell_y, amplitude]");
      }
    }
  }
  if (j.contains("stripes")) {
    const json& st = j.at("stripes");
    t.stripe_amplitude = st.value("amplitude", 0.0);
    t.stripe_period = st.value("period", 4.0);
    t.stripe_phase = st.value("phase", 0.0);
    const std::string orient = st.value("orientation", std::string("vertical"));
    if (orient == "vertical") {
      t.stripe_orientation = StripeOrientation::Vertical;
    } else if (orient == "horizontal") {
      t.stripe_orientation = StripeOrientation::Horizontal;
    } else {
      throw ValidationError("stripe orientation must be 'vertical' or 'horizontal'");
    }
  }
  t.seed = j.value("seed", std::uint64_t{0});
  return t;
}

json rect_to_json(const Rect& r) { return json::array({r.x, r.y, r.width, r.height}); }

Rect rect_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ValidationError("rect must be [x, y, width, height]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

json radiometry_to_json(const Radiometry& r) { return {{"gain", r.gain}, {"offset", r.offset}}; }

Radiometry radiometry_from_json(const json& j) { return {j.value("gain", 1.0), j.value("offset", 0.0)}; }

}  // namespace

void SceneSpec::validate() const {
  auto fail = [](const std::string& m) { throw ValidationError("scene: " + m); };
  if (width < 1 || height < 1) fail("width and height must be positive");
  if (num_disparities < 2) fail("num_disparities must be >= 2");
  const double max_d = num_disparities - 1;
  auto check_d = [&](double d, const std::string& what) {
    if (!(d >= 0.0 && d <= max_d)) fail(what + " disparity " + std::to_string(d) + " outside [0, " +
                                        std::to_string(num_disparities - 1) + "]");
  };
  for (const auto& p : planes) {
    const Rect r = p.rect.value_or(Rect{0, 0, width, height});
    if (r.width < 1 || r.height < 1) fail("plane rect is empty");
    if (p.slope_x <= -1.0 || p.slope_y <= -1.0) fail("plane slope must exceed -1");
    for (const double cx : {double(r.x), double(r.x + r.width - 1)}) {
      for (const double cy : {double(r.y), double(r.y + r.height - 1)}) {
        check_d(p.disparity + p.slope_x * cx + p.slope_y * cy, "plane");
      }
    }
    for (const auto& o : p.texture.octaves) {
      if (!(o.cell_x > 0.0 && o.cell_y > 0.0)) fail("texture octave cells must be > 0");
    }
    if (!(p.texture.stripe_period > 0.0)) fail("stripe period must be > 0");
  }
  for (const auto& w : wires) {
    check_d(w.disparity, "wire");
    if (!(w.thickness >= 1.0 && w.thickness <= 2.0)) fail("wire thickness must lie in [1, 2] px");
  }
  for (const auto& w : windows) {
    check_d(w.disparity, "window");
    check_d(w.reflected_disparity, "window reflection");
    if (w.rect.width < 1 || w.rect.height < 1) fail("window rect is empty");
    if (!(w.dolp >= 0.0 && w.dolp <= 1.0)) fail("window dolp must lie in [0,1]");
  }
  if (!(unpolarized_dolp >= 0.0 && unpolarized_dolp <= 1.0)) fail("unpolarized_dolp must lie in [0,1]");
  if (wire_prob_dilation < 0) fail("wire_prob_dilation must be >= 0");
}

void to_json(json& j, const SceneSpec& s) {
  json planes = json::array();
  for (const auto& p : s.planes) {
    json jp = {{"disparity", p.disparity},
               {"slope", {p.slope_x, p.slope_y}},
               {"texture", texture_to_json(p.texture)}};
    if (p.rect) jp["rect"] = rect_to_json(*p.rect);
    planes.push_back(std::move(jp));
  }
  json wires = json::array();
  for (const auto& w : s.wires) {
    wires.push_back({{"from", {w.x0, w.y0}},
                     {"to", {w.x1, w.y1}},
                     {"thickness", w.thickness},
                     {"disparity", w.disparity},
                     {"intensity", w.intensity}});
  }
  json windows = json::array();
  for (const auto& w : s.windows) {
    windows.push_back({{"rect", rect_to_json(w.rect)},
                       {"disparity", w.disparity},
                       {"reflected_disparity", w.reflected_disparity},
                       {"texture", texture_to_json(w.reflected)},
                       {"dolp", w.dolp},
                       {"aop", w.aop}});
  }
  j = {{"width", s.width},
       {"height", s.height},
       {"num_disparities", s.num_disparities},
       {"seed", s.seed},
       {"background", s.background},
       {"mosaic", s.mosaic},
       {"unpolarized_dolp", s.unpolarized_dolp},
       {"wire_prob_dilation", s.wire_prob_dilation},
       {"radiometry", {{"left", radiometry_to_json(s.left_radiometry)}, {"top", radiometry_to_json(s.top_radiometry)}}},
       {"planes", planes},
       {"wires", wires},
       {"windows", windows}};
}

void from_json(const json& j, SceneSpec& s) {
  s = SceneSpec{};
  s.width = j.at("width").get<int>();
  s.height = j.at("height").get<int>();
  s.num_disparities = j.value("num_disparities", s.num_disparities);
  s.seed = j.value("seed", s.seed);
  s.background = j.value("background", s.background);
  s.mosaic = j.value("mosaic", s.mosaic);
  s.unpolarized_dolp = j.value("unpolarized_dolp", s.unpolarized_dolp);
  s.wire_prob_dilation = j.value("wire_prob_dilation", s.wire_prob_dilation);
  if (j.contains("radiometry")) {
    const json& r = j.at("radiometry");
    if (r.contains("left")) s.left_radiometry = radiometry_from_json(r.at("left"));
    if (r.contains("top")) s.top_radiometry = radiometry_from_json(r.at("top"));
  }
  for (const auto& jp : j.value("planes", json::array())) {
    PlaneObject p;
    if (jp.contains("rect")) p.rect = rect_from_json(jp.at("rect"));
    p.disparity = jp.at("disparity").get<double>();
    if (jp.contains("slope")) {
      p.slope_x = jp.at("slope").at(0).get<double>();
      p.slope_y = jp.at("slope").at(1).get<double>();
    }
    if (jp.contains("texture")) p.texture = texture_from_json(jp.at("texture"));
    s.planes.push_back(std::move(p));
  }
  for (const auto& jw : j.value("wires", json::array())) {
    WireObject w;
    w.x0 = jw.at("from").at(0).get<double>();
    w.y0 = jw.at("from").at(1).get<double>();
    w.x1 = jw.at("to").at(0).get<double>();
    w.y1 = jw.at("to").at(1).get<double>();
    w.thickness = jw.value("thickness", w.thickness);
    w.disparity = jw.at("disparity").get<double>();
    w.intensity = jw.value("intensity", w.intensity);
    s.wires.push_back(w);
  }
  for (const auto& jw : j.value("windows", json::array())) {
    WindowObject w;
    w.rect = rect_from_json(jw.at("rect"));
    w.disparity = jw.at("disparity").get<double>();
    w.reflected_disparity = jw.at("reflected_disparity").get<double>();
    if (jw.contains("texture")) w.reflected = texture_from_json(jw.at("texture"));
    w.dolp = jw.value("dolp", w.dolp);
    w.aop = jw.value("aop", w.aop);
    s.windows.push_back(std::move(w));
  }
}

SceneBundle generate_scene(const SceneSpec& spec) {
  spec.validate();
  const int w = spec.width;
  const int h = spec.height;
  SceneBundle b{render(spec, Camera::Right, Radiometry{}),
                render(spec, Camera::Left, spec.left_radiometry),
                render(spec, Camera::Top, spec.top_radiometry),
                std::nullopt,
                std::nullopt,
                DisparityMap(w, h, spec.num_disparities),
                BinaryMask(w, h, 0),
                BinaryMask(w, h, 0),
                {}};

  std::vector<std::pair<Kind, std::size_t>> owner(static_cast<std::size_t>(w) * h, {Kind::Plane, SIZE_MAX});
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto hit = visible(spec, Camera::Right, x, y);
      if (!hit) continue;
      if (hit->kind == Kind::Wire) b.wire_mask(x, y) = 1;
      if (hit->kind == Kind::Window) b.specular_mask(x, y) = 1;
      owner[static_cast<std::size_t>(y) * w + x] = {hit->kind, hit->index};
      const double u = x + hit->disparity;
      if (u < 0.0 || u > w - 1) continue;
      const auto seen = visible(spec, Camera::Left, u, y);
      if (!seen || seen->kind != hit->kind || seen->index != hit->index) continue;
      b.truth(x, y) = static_cast<float>(hit->disparity);
      lo = std::min(lo, hit->disparity);
      hi = std::max(hi, hit->disparity);
    }
  }

  if (spec.mosaic || !spec.windows.empty()) {
    GrayImage mosaic(2 * w, 2 * h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const auto [kind, index] = owner[static_cast<std::size_t>(y) * w + x];
        double dolp = spec.unpolarized_dolp;
        double aop = std::numbers::pi * lattice(spec.seed, 0xa0b1c2d3ULL, x, y);
        if (kind == Kind::Window && index != SIZE_MAX) {
          dolp = spec.windows[index].dolp;
          aop = spec.windows[index].aop;
        }
        const double k = b.right(x, y);
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) {
            const double phi = kDefaultMosaicLayout[r][c] * std::numbers::pi / 180.0;
            mosaic(2 * x + c, 2 * y + r) = quantize(0.5 * k * (1.0 + dolp * std::cos(2.0 * (phi - aop))));
          }
        }
      }
    }
    b.mosaic = std::move(mosaic);
  }

  if (!spec.wires.empty()) {
    GrayImage prob(w, h, 0);
    const int r = spec.wire_prob_dilation;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!b.wire_mask(x, y)) continue;
        for (int yy = std::max(0, y - r); yy <= std::min(h - 1, y + r); ++yy) {
          for (int xx = std::max(0, x - r); xx <= std::min(w - 1, x + r); ++xx) prob(xx, yy) = 255;
        }
      }
    }
    b.wire_prob = std::move(prob);
  }

  b.manifest = {{"width", w},
                {"height", h},
                {"seed", spec.seed},
                {"num_disparities", spec.num_disparities},
                {"disparity_range", lo <= hi ? json::array({lo, hi}) : json(nullptr)},
                {"scene", spec}};
  return b;
}

SceneAudit audit_scene(const SceneSpec& spec, const SceneBundle& bundle) {
  auto same = [](const Radiometry& r) { return r.gain == 1.0 && r.offset == 0.0; };
  if (!same(spec.left_radiometry) || !same(spec.top_radiometry)) {
    throw ValidationError("scene audit needs identical radiometry in all views");
  }
  SceneAudit audit;
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const auto hit = visible(spec, Camera::Right, x, y);
      if (!hit || hit->kind == Kind::Window || !bundle.truth.is_valid(x, y)) continue;
      const float d = bundle.truth(x, y);
      if (d != std::round(d)) continue;
      const int di = static_cast<int>(d);
      const std::array<std::pair<Camera, const GrayImage*>, 2> views{
          {{Camera::Left, &bundle.left}, {Camera::Top, &bundle.top}}};
      for (const auto& [cam, img] : views) {
        const int u = cam == Camera::Left ? x + di : x;
        const int v = cam == Camera::Top ? y + di : y;
        if (!img->contains(u, v)) continue;
        const auto seen = visible(spec, cam, u, v);
        if (!seen || seen->kind != hit->kind || seen->index != hit->index) continue;
        ++audit.checked;
        if ((*img)(u, v) != bundle.right(x, y)) ++audit.mismatches;
      }
    }
  }
  return audit;
}

void write_bundle(const SceneBundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  io::write_pgm(dir / "right.pgm", bundle.right);
  io::write_pgm(dir / "left.pgm", bundle.left);
  io::write_pgm(dir / "top.pgm", bundle.top);
  io::write_disparity(dir / "truth.pfm", bundle.truth);
  auto as_image = [](const BinaryMask& m) {
    GrayImage img(m.width(), m.height());
    std::ranges::transform(m.data(), img.data().begin(), [](std::uint8_t v) -> std::uint8_t { return v ? 255 : 0; });
    return img;
  };
  io::write_pgm(dir / "wiremask.pgm", as_image(bundle.wire_mask));
  io::write_pgm(dir / "specmask.pgm", as_image(bundle.specular_mask));
  if (bundle.mosaic) io::write_pgm(dir / "mosaic.pgm", *bundle.mosaic);
  if (bundle.wire_prob) io::write_pgm(dir / "wires.pgm", *bundle.wire_prob);
  io::write_file(dir / "manifest.json", bundle.manifest.dump(2) + "\n");
}

SceneBundle read_bundle(const std::filesystem::path& dir) {
  json manifest;
  try {
    manifest = json::parse(io::read_file(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw IoError("malformed manifest in '" + dir.string() + "': " + e.what());
  }
  const int nd = manifest.at("num_disparities").get<int>();
  auto as_mask = [](const GrayImage& img) {
    BinaryMask m(img.width(), img.height());
    std::ranges::transform(img.data(), m.data().begin(), [](std::uint8_t v) -> std::uint8_t { return v ? 1 : 0; });
    return m;
  };
  SceneBundle b{io::read_pgm(dir / "right.pgm"),
                io::read_pgm(dir / "left.pgm"),
                io::read_pgm(dir / "top.pgm"),
                std::nullopt,
                std::nullopt,
                io::read_disparity(dir / "truth.pfm", nd),
                as_mask(io::read_pgm(dir / "wiremask.pgm")),
                as_mask(io::read_pgm(dir / "specmask.pgm")),
                manifest};
  if (std::filesystem::exists(dir / "mosaic.pgm")) b.mosaic = io::read_pgm(dir / "mosaic.pgm");
  if (std::filesystem::exists(dir / "wires.pgm")) b.wire_prob = io::read_pgm(dir / "wires.pgm");
  return b;
}

}  // namespace mvs
