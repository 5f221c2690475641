#include <png.h>

#include <algorithm>
#include <array>
#include <cstring>

#include "villus/image.hpp"

namespace villus {

namespace {

struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

std::vector<std::uint8_t> read_png(const std::filesystem::path& path, png_uint_32 format,
                                   int& width, int& height) {
  PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.c_str()))
    throw DecodeError(path.string() + ": " + png.image.message);
  png.image.format = format;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, buffer.data(), 0, nullptr))
    throw DecodeError(path.string() + ": " + png.image.message);
  width = static_cast<int>(png.image.width);
  height = static_cast<int>(png.image.height);
  return buffer;
}

void write_png(const std::filesystem::path& path, png_uint_32 format, int width, int height,
               const std::uint8_t* data) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(width);
  png.image.height = static_cast<png_uint_32>(height);
  png.image.format = format;
  if (!png_image_write_to_file(&png.image, path.c_str(), 0, data, 0, nullptr))
    throw Error(path.string() + ": " + png.image.message);
}

}  // namespace

RasterImage load_image(const std::filesystem::path& path) {
  int w = 0, h = 0;
  auto data = read_png(path, PNG_FORMAT_RGB, w, h);
  return RasterImage(w, h, std::move(data));
}

void save_image(const RasterImage& image, const std::filesystem::path& path) {
  write_png(path, PNG_FORMAT_RGB, image.width(), image.height(), image.data().data());
}

BinaryMask load_mask(const std::filesystem::path& path) {
  int w = 0, h = 0;
  auto levels = read_png(path, PNG_FORMAT_GRAY, w, h);

  std::array<bool, 256> seen{};
  for (auto v : levels) seen[v] = true;
  std::vector<int> present;
  for (int v = 0; v < 256; ++v)
    if (seen[v]) present.push_back(v);
  if (present.size() > 2)
    throw NonBinaryMask(path.string() + ": mask has " + std::to_string(present.size()) +
                        " distinct levels, expected 2");

  int threshold;  // values >= threshold become 1
  if (present.size() == 2) {
    threshold = present[1];
  } else if (present.size() == 1) {
    threshold = present[0] >= 128 ? 0 : 256;
  } else {
    threshold = 256;
  }
  std::vector<std::uint8_t> bits(levels.size());
  std::transform(levels.begin(), levels.end(), bits.begin(),
                 [threshold](std::uint8_t v) { return static_cast<std::uint8_t>(v >= threshold); });
  return BinaryMask(w, h, std::move(bits));
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  std::vector<std::uint8_t> gray(mask.data().size());
  std::transform(mask.data().begin(), mask.data().end(), gray.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
  write_png(path, PNG_FORMAT_GRAY, mask.width(), mask.height(), gray.data());
}

LabeledPair load_pair(const std::filesystem::path& image_path,
                      const std::filesystem::path& mask_path) {
  return LabeledPair(load_image(image_path), load_mask(mask_path));
}

}  // namespace villus
