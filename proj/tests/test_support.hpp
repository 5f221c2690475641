#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "villus/image.hpp"
#include "villus/rng.hpp"

namespace villus::testing {

inline std::filesystem::path data_dir() { return VILLUS_DATA_DIR; }

inline LabeledPair bundled_exemplar() {
  return load_pair(data_dir() / "exemplar" / "villi_img.png", data_dir() / "exemplar" / "villi_mask.png");
}

// Fresh directory under the system temp dir; removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("villus_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline RasterImage random_image(int w, int h, Rng& rng) {
  RasterImage img(w, h);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

inline BinaryMask random_mask(int w, int h, double p_villous, Rng& rng) {
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, rng.uniform() < p_villous ? 1 : 0);
  return m;
}

inline LabeledPair random_pair(int w, int h, Rng& rng) {
  return LabeledPair(random_image(w, h, rng), random_mask(w, h, 0.5, rng));
}

// Intervillous (0) disc of radius r centred at (cx, cy) drawn into a mask.
inline void carve_disc(BinaryMask& m, double cx, double cy, double r) {
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.set(x, y, 0);
}

}  // namespace villus::testing
