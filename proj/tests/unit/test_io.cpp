#include <cstring>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "mvstereo/io.hpp"
#include "oracles/families.hpp"

namespace {

using namespace mvs;

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("mvstereo_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                       "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Pgm, EncodeDecodeRoundTrip) {
  std::mt19937_64 rng(1);
  const auto img = oracle::random_image(rng, 7, 5);
  EXPECT_EQ(io::decode_pgm(io::encode_pgm(img)), img);
}

TEST(Pgm, HeaderWithComments) {
  const std::string bytes = std::string("P5\n# made by hand\n2 1\n# depth\n255\n") + char(3) + char(200);
  EXPECT_EQ(io::decode_pgm(bytes), GrayImage(2, 1, {3, 200}));
}

TEST(Pgm, RejectsMalformedInput) {
  EXPECT_THROW(io::decode_pgm("P2\n1 1\n255\n0"), IoError);
  EXPECT_THROW(io::decode_pgm("P5\n2 2\n255\n12"), IoError);
  EXPECT_THROW(io::decode_pgm("P5\n2 2\n65535\n"), IoError);
  EXPECT_THROW(io::decode_pgm("P5\n2"), IoError);
  EXPECT_THROW(io::decode_pgm("P5\nx 2\n255\n"), IoError);
}

TEST(Pfm, RoundTripIsBitExact) {
  FloatImage img(3, 2, {1.5f, -1.0f, 0.1f, 1e-30f, 7.0f, 123456.789f});
  const std::string bytes = io::encode_pfm(img);
  EXPECT_EQ(bytes.substr(0, 11), "Pf\n3 2\n-1.0");
  EXPECT_EQ(io::decode_pfm(bytes), img);
}

TEST(Pfm, RowsAreStoredBottomUp) {
  FloatImage img(1, 2, {1.0f, 2.0f});
  const std::string bytes = io::encode_pfm(img);
  float first = 0.0f;
  std::memcpy(&first, bytes.data() + bytes.size() - 2 * sizeof(float), sizeof(float));
  EXPECT_EQ(first, 2.0f);
}

TEST(Pfm, RejectsBigEndianAndColour) {
  EXPECT_THROW(io::decode_pfm("Pf\n1 1\n1.0\n0000"), IoError);
  EXPECT_THROW(io::decode_pfm("PF\n1 1\n-1.0\n000000000000"), IoError);
  EXPECT_THROW(io::decode_pfm("Pf\n2 2\n-1.0\n0000"), IoError);
}

TEST(Files, DisparityRoundTripKeepsInvalid) {
  const auto dir = temp_dir();
  DisparityMap m(3, 2, 16);
  m(0, 0) = 4.25f;
  m(2, 1) = 0.0f;
  io::write_disparity(dir / "d.pfm", m);
  const auto back = io::read_disparity(dir / "d.pfm", 16);
  EXPECT_EQ(back, m);
  std::filesystem::remove_all(dir);
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_THROW(io::read_pgm("/nonexistent/none.pgm"), IoError);
  EXPECT_THROW(io::write_pgm("/nonexistent/dir/x.pgm", GrayImage(1, 1)), IoError);
}

}  // namespace
