#include "bubbledyn/image_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace bubbledyn {

Image::Image(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be positive");
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 4, 0);
}

Rgb Image::rgb(int x, int y) const {
  const std::size_t at = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 4;
  return {pixels_[at], pixels_[at + 1], pixels_[at + 2]};
}

void Image::set(int x, int y, Rgb color, std::uint8_t alpha) {
  const std::size_t at = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) * 4;
  pixels_[at] = color.r;
  pixels_[at + 1] = color.g;
  pixels_[at + 2] = color.b;
  pixels_[at + 3] = alpha;
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  png_image desc;
  std::memset(&desc, 0, sizeof desc);
  desc.version = PNG_IMAGE_VERSION;
  desc.width = static_cast<png_uint_32>(image.width());
  desc.height = static_cast<png_uint_32>(image.height());
  desc.format = PNG_FORMAT_RGBA;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&desc, nullptr, &size, 0, image.bytes().data(), 0, nullptr))
    throw IoError(std::string("PNG encode failed: ") + desc.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&desc, out.data(), &size, 0, image.bytes().data(), 0, nullptr))
    throw IoError(std::string("PNG encode failed: ") + desc.message);
  out.resize(size);
  return out;
}

Image decode_png(std::span<const std::uint8_t> data) {
  png_image desc;
  std::memset(&desc, 0, sizeof desc);
  desc.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&desc, data.data(), data.size()))
    throw IoError(std::string("PNG decode failed: ") + desc.message);
  desc.format = PNG_FORMAT_RGBA;
  Image image(static_cast<int>(desc.width), static_cast<int>(desc.height));
  if (!png_image_finish_read(&desc, nullptr, image.bytes().data(), 0, nullptr)) {
    png_image_free(&desc);
    throw IoError(std::string("PNG decode failed: ") + desc.message);
  }
  return image;
}

std::vector<std::uint8_t> encode_ppm(const Image& image) {
  const std::string header = "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + static_cast<std::size_t>(image.width()) * static_cast<std::size_t>(image.height()) * 3);
  const auto rgba = image.bytes();
  for (std::size_t i = 0; i < rgba.size(); i += 4) out.insert(out.end(), rgba.begin() + static_cast<std::ptrdiff_t>(i), rgba.begin() + static_cast<std::ptrdiff_t>(i) + 3);
  return out;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace bubbledyn
