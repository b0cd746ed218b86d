#include "mvstereo/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

namespace mvs::io {
namespace {

static_assert(std::endian::native == std::endian::little, "PFM writer assumes a little-endian host");

// Cursor over a Netpbm-style ASCII header.
class HeaderReader {
 public:
  explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      out.push_back(bytes_[pos_++]);
    }
    if (out.empty()) throw IoError("truncated image header");
    return out;
  }

  int integer() {
    const std::string t = token();
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used != t.size()) throw IoError("malformed header integer '" + t + "'");
      return v;
    } catch (const std::logic_error&) {
      throw IoError("malformed header integer '" + t + "'");
    }
  }

  /// Consumes the single whitespace byte that terminates the header.
  std::size_t payload_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw IoError("missing header terminator");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

GrayImage decode_pgm(const std::string& bytes) {
  HeaderReader header(bytes);
  if (header.token() != "P5") throw IoError("not a binary PGM (P5) image");
  const int width = header.integer();
  const int height = header.integer();
  const int maxval = header.integer();
  if (width < 1 || height < 1) throw IoError("PGM has non-positive dimensions");
  if (maxval != 255) throw IoError("only 8-bit PGM (maxval 255) is supported");
  const std::size_t offset = header.payload_offset();
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() < offset + count) throw IoError("PGM payload truncated");
  std::vector<std::uint8_t> data(count);
  std::memcpy(data.data(), bytes.data() + offset, count);
  return GrayImage(width, height, std::move(data));
}

std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  const auto px = img.data();
  out.append(reinterpret_cast<const char*>(px.data()), px.size());
  return out;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  try {
    return decode_pgm(read_file(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  write_file(path, encode_pgm(img));
}

FloatImage decode_pfm(const std::string& bytes) {
  HeaderReader header(bytes);
  if (header.token() != "Pf") throw IoError("not a single-channel PFM image");
  const int width = header.integer();
  const int height = header.integer();
  const std::string scale_token = header.token();
  double scale = 0.0;
  try {
    scale = std::stod(scale_token);
  } catch (const std::logic_error&) {
    throw IoError("malformed PFM scale '" + scale_token + "'");
  }
  if (scale >= 0.0) throw IoError("big-endian PFM is not supported");
  if (width < 1 || height < 1) throw IoError("PFM has non-positive dimensions");
  const std::size_t offset = header.payload_offset();
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() < offset + count * sizeof(float)) throw IoError("PFM payload truncated");
  FloatImage img(width, height);
  for (int y = 0; y < height; ++y) {
    const std::size_t src_row = static_cast<std::size_t>(height - 1 - y);
    std::memcpy(img.row(y).data(), bytes.data() + offset + src_row * width * sizeof(float),
                width * sizeof(float));
  }
  return img;
}

std::string encode_pfm(const FloatImage& img) {
  std::string out = "Pf\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n-1.0\n";
  const std::size_t row_bytes = img.width() * sizeof(float);
  for (int y = img.height() - 1; y >= 0; --y) {
    out.append(reinterpret_cast<const char*>(img.row(y).data()), row_bytes);
  }
  return out;
}

FloatImage read_pfm(const std::filesystem::path& path) {
  try {
    return decode_pfm(read_file(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_pfm(const std::filesystem::path& path, const FloatImage& img) {
  write_file(path, encode_pfm(img));
}

void write_pfm(const std::filesystem::path& path, const DoubleImage& img) {
  FloatImage f(img.width(), img.height());
  std::ranges::transform(img.data(), f.data().begin(), [](double v) { return static_cast<float>(v); });
  write_pfm(path, f);
}

void write_disparity(const std::filesystem::path& path, const DisparityMap& map) {
  write_pfm(path, map.values());
}

DisparityMap read_disparity(const std::filesystem::path& path, int num_disparities) {
  FloatImage values = read_pfm(path);
  DisparityMap map(values.width(), values.height(), num_disparities);
  for (int y = 0; y < values.height(); ++y) {
    for (int x = 0; x < values.width(); ++x) {
      const float v = values(x, y);
      if (v >= 0.0f) map(x, y) = v;
    }
  }
  return map;
}

}  // namespace mvs::io
