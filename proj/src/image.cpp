#include "villus/image.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace villus {

RasterImage::RasterImage(int width, int height, std::uint8_t fill)
    : width_(width),
      height_(height),
      data_(static_cast<std::size_t>(width) * height * kChannels, fill) {
  if (width < 0 || height < 0) throw Error("negative raster dimensions");
}

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 0 || height < 0) throw Error("negative raster dimensions");
  if (data_.size() != static_cast<std::size_t>(width) * height * kChannels)
    throw DimensionMismatch("raster data length does not match width x height x 3");
}

BinaryMask::BinaryMask(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height, fill) {
  if (width < 0 || height < 0) throw Error("negative mask dimensions");
  if (fill > 1) throw NonBinaryMask("mask fill value must be 0 or 1");
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 0 || height < 0) throw Error("negative mask dimensions");
  if (data_.size() != static_cast<std::size_t>(width) * height)
    throw DimensionMismatch("mask data length does not match width x height");
  if (std::any_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v > 1; }))
    throw NonBinaryMask("mask values must be 0 or 1");
}

void BinaryMask::set(int x, int y, std::uint8_t v) {
  assert(v <= 1);
  data_[static_cast<std::size_t>(y) * width_ + x] = v;
}

std::size_t BinaryMask::count_ones() const {
  return std::accumulate(data_.begin(), data_.end(), std::size_t{0});
}

LabeledPair::LabeledPair(RasterImage img, BinaryMask m) : image(std::move(img)), mask(std::move(m)) {
  if (image.width() != mask.width() || image.height() != mask.height())
    throw DimensionMismatch("image is " + std::to_string(image.width()) + "x" +
                            std::to_string(image.height()) + " but mask is " +
                            std::to_string(mask.width()) + "x" + std::to_string(mask.height()));
}

const char* to_string(FlipAxis axis) {
  switch (axis) {
    case FlipAxis::kNone: return "none";
    case FlipAxis::kX: return "x";
    case FlipAxis::kY: return "y";
    case FlipAxis::kXY: return "xy";
  }
  return "none";
}

FlipAxis flip_axis_from_string(const std::string& s) {
  if (s == "none") return FlipAxis::kNone;
  if (s == "x") return FlipAxis::kX;
  if (s == "y") return FlipAxis::kY;
  if (s == "xy") return FlipAxis::kXY;
  throw Error("unknown flip axis '" + s + "'");
}

namespace {

bool flips_x(FlipAxis a) { return a == FlipAxis::kX || a == FlipAxis::kXY; }
bool flips_y(FlipAxis a) { return a == FlipAxis::kY || a == FlipAxis::kXY; }

void check_rect(int width, int height, int x0, int y0, int w, int h) {
  if (x0 < 0 || y0 < 0 || w <= 0 || h <= 0 || x0 + w > width || y0 + h > height)
    throw OutOfBounds("crop rectangle (" + std::to_string(x0) + "," + std::to_string(y0) + "," +
                      std::to_string(w) + "," + std::to_string(h) + ") outside " +
                      std::to_string(width) + "x" + std::to_string(height) + " raster");
}

}  // namespace

RasterImage flip(const RasterImage& image, FlipAxis axis) {
  const int w = image.width(), h = image.height();
  RasterImage out(w, h);
  for (int y = 0; y < h; ++y) {
    const int sy = flips_y(axis) ? h - 1 - y : y;
    for (int x = 0; x < w; ++x) {
      const int sx = flips_x(axis) ? w - 1 - x : x;
      std::copy_n(image.pixel(sx, sy), RasterImage::kChannels, out.pixel(x, y));
    }
  }
  return out;
}

BinaryMask flip(const BinaryMask& mask, FlipAxis axis) {
  const int w = mask.width(), h = mask.height();
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    const int sy = flips_y(axis) ? h - 1 - y : y;
    for (int x = 0; x < w; ++x) {
      const int sx = flips_x(axis) ? w - 1 - x : x;
      out.set(x, y, mask.at(sx, sy));
    }
  }
  return out;
}

LabeledPair flip(const LabeledPair& pair, FlipAxis axis) {
  return LabeledPair(flip(pair.image, axis), flip(pair.mask, axis));
}

RasterImage crop(const RasterImage& image, int x0, int y0, int w, int h) {
  check_rect(image.width(), image.height(), x0, y0, w, h);
  RasterImage out(w, h);
  for (int j = 0; j < h; ++j)
    std::copy_n(image.pixel(x0, y0 + j), static_cast<std::size_t>(w) * RasterImage::kChannels,
                out.pixel(0, j));
  return out;
}

BinaryMask crop(const BinaryMask& mask, int x0, int y0, int w, int h) {
  check_rect(mask.width(), mask.height(), x0, y0, w, h);
  BinaryMask out(w, h);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) out.set(i, j, mask.at(x0 + i, y0 + j));
  return out;
}

LabeledPair crop(const LabeledPair& pair, int x0, int y0, int w, int h) {
  return LabeledPair(crop(pair.image, x0, y0, w, h), crop(pair.mask, x0, y0, w, h));
}

}  // namespace villus
