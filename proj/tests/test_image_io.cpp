#include <doctest.h>

#include <filesystem>
#include <random>

#include "bubbledyn/image_io.hpp"

using namespace bubbledyn;

TEST_CASE("PNG encode/decode preserves pixels") {
  std::mt19937 rng(3);
  Image image(37, 21);
  for (auto& b : image.bytes()) b = static_cast<std::uint8_t>(rng());
  const auto png = encode_png(image);
  REQUIRE(png.size() > 8);
  CHECK(png[0] == 0x89);
  CHECK(png[1] == 'P');
  // IHDR: bit depth 8, color type 6 (RGBA), interlace 0.
  CHECK(png[24] == 8);
  CHECK(png[25] == 6);
  CHECK(png[28] == 0);
  CHECK(decode_png(png) == image);
  CHECK(encode_png(image) == png);
}

TEST_CASE("PPM layout") {
  Image image(2, 1);
  image.set(0, 0, {1, 2, 3});
  image.set(1, 0, {4, 5, 6});
  const auto ppm = encode_ppm(image);
  const std::string header = "P6\n2 1\n255\n";
  REQUIRE(ppm.size() == header.size() + 6);
  CHECK(std::string(ppm.begin(), ppm.begin() + static_cast<std::ptrdiff_t>(header.size())) == header);
  CHECK(ppm.back() == 6);
}

TEST_CASE("file I/O errors") {
  const std::vector<std::uint8_t> data{1, 2, 3};
  CHECK_THROWS_AS(write_file("/nonexistent-dir/x.png", data), IoError);
  CHECK_THROWS_AS(read_file("/nonexistent-dir/x.png"), IoError);
  CHECK_THROWS_AS(decode_png(data), IoError);

  const auto path = std::filesystem::temp_directory_path() / "bubbledyn_io_test.bin";
  write_file(path, data);
  CHECK(read_file(path) == data);
  std::filesystem::remove(path);
}

TEST_CASE("Image rejects empty dimensions") { CHECK_THROWS_AS(Image(0, 4), std::invalid_argument); }
