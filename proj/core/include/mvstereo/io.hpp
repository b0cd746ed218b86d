#pragma once

#include <filesystem>
#include <string>

#include "mvstereo/image.hpp"

namespace mvs::io {

// Binary PGM (P5, maxval 255).
GrayImage decode_pgm(const std::string& bytes);
std::string encode_pgm(const GrayImage& img);
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);

// Single-channel little-endian PFM ("Pf", scale -1.0), rows stored bottom-up.
FloatImage decode_pfm(const std::string& bytes);
std::string encode_pfm(const FloatImage& img);
FloatImage read_pfm(const std::filesystem::path& path);
void write_pfm(const std::filesystem::path& path, const FloatImage& img);
void write_pfm(const std::filesystem::path& path, const DoubleImage& img);

/// Invalid pixels are written as -1.0.
void write_disparity(const std::filesystem::path& path, const DisparityMap& map);
/// Negative values load as invalid.
DisparityMap read_disparity(const std::filesystem::path& path, int num_disparities);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace mvs::io
