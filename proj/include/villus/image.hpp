#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace villus {

// Errors raised by the raster layer. Every module reports failures through
// subclasses of villus::Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonBinaryMask : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class OutOfBounds : public Error {
 public:
  using Error::Error;
};

// H x W RGB raster, 8 bits per channel, row-major, interleaved.
// Addressing is (x = column, y = row) everywhere in the project.
class RasterImage {
 public:
  static constexpr int kChannels = 3;

  RasterImage() = default;
  RasterImage(int width, int height, std::uint8_t fill = 0);
  RasterImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }

  std::uint8_t at(int x, int y, int c) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }
  std::uint8_t& at(int x, int y, int c) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * kChannels + c];
  }
  const std::uint8_t* pixel(int x, int y) const {
    return data_.data() + (static_cast<std::size_t>(y) * width_ + x) * kChannels;
  }
  std::uint8_t* pixel(int x, int y) {
    return data_.data() + (static_cast<std::size_t>(y) * width_ + x) * kChannels;
  }

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> data() { return data_; }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// H x W raster of {0,1}; 1 = villous, 0 = intervillous.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, std::uint8_t fill = 0);
  // Throws NonBinaryMask if any value is outside {0,1}.
  BinaryMask(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const { return data_.size(); }

  std::uint8_t at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  // Writes must keep the value in {0,1}; debug builds assert it.
  void set(int x, int y, std::uint8_t v);

  bool inside(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::span<const std::uint8_t> data() const { return data_; }

  std::size_t count_ones() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

struct LabeledPair {
  RasterImage image;
  BinaryMask mask;

  LabeledPair() = default;
  // Throws DimensionMismatch when image and mask sizes differ.
  LabeledPair(RasterImage img, BinaryMask m);

  int width() const { return image.width(); }
  int height() const { return image.height(); }

  friend bool operator==(const LabeledPair&, const LabeledPair&) = default;
};

enum class FlipAxis { kNone, kX, kY, kXY };

const char* to_string(FlipAxis axis);
FlipAxis flip_axis_from_string(const std::string& s);

// X mirrors columns (horizontal flip), Y mirrors rows, XY does both.
RasterImage flip(const RasterImage& image, FlipAxis axis);
BinaryMask flip(const BinaryMask& mask, FlipAxis axis);
LabeledPair flip(const LabeledPair& pair, FlipAxis axis);

// Output pixel (i,j) is input pixel (x0+i, y0+j). Throws OutOfBounds unless
// the rectangle lies fully inside the raster.
RasterImage crop(const RasterImage& image, int x0, int y0, int w, int h);
BinaryMask crop(const BinaryMask& mask, int x0, int y0, int w, int h);
LabeledPair crop(const LabeledPair& pair, int x0, int y0, int w, int h);

// PNG I/O. Images are written as 8-bit RGB; masks as 8-bit gray with
// levels {0, 255} (0 = intervillous, 255 = villous).
RasterImage load_image(const std::filesystem::path& path);
void save_image(const RasterImage& image, const std::filesystem::path& path);

// Binarizes a two-level PNG: darker level -> 0, lighter level -> 1. A file
// with a single level maps it to 1 when it is >= 128 and to 0 otherwise.
BinaryMask load_mask(const std::filesystem::path& path);
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

LabeledPair load_pair(const std::filesystem::path& image_path,
                      const std::filesystem::path& mask_path);

}  // namespace villus
