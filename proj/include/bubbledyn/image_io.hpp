#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

namespace bubbledyn {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// 8-bit RGBA raster, row-major from the top-left pixel.
class Image {
 public:
  Image() = default;
  Image(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const std::uint8_t> bytes() const { return pixels_; }
  std::span<std::uint8_t> bytes() { return pixels_; }

  Rgb rgb(int x, int y) const;
  void set(int x, int y, Rgb color, std::uint8_t alpha = 255);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-interlaced 8-bit RGBA PNG.
std::vector<std::uint8_t> encode_png(const Image& image);
Image decode_png(std::span<const std::uint8_t> data);
// Binary P6; alpha is dropped.
std::vector<std::uint8_t> encode_ppm(const Image& image);

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace bubbledyn
