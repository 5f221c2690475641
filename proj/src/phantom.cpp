#include "villus/phantom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "villus/rng.hpp"

namespace villus {

namespace {

using Color = std::array<double, 3>;

constexpr Color kIntervillous{243, 229, 236};
constexpr Color kRedCell{206, 96, 112};
constexpr Color kStroma{218, 152, 188};
constexpr Color kTrophoblast{158, 92, 164};
constexpr Color kNucleus{92, 48, 124};
constexpr Color kCapillary{196, 84, 104};

// Smoothly interpolated lattice noise in [-1, 1].
class ValueNoise {
 public:
  ValueNoise(int size, int spacing, Rng& rng) : spacing_(spacing), n_(size / spacing + 2) {
    values_.resize(static_cast<std::size_t>(n_) * n_);
    for (auto& v : values_) v = rng.uniform(-1.0, 1.0);
  }

  double operator()(double x, double y) const {
    const double gx = x / spacing_, gy = y / spacing_;
    const int ix = static_cast<int>(gx), iy = static_cast<int>(gy);
    const double fx = smooth(gx - ix), fy = smooth(gy - iy);
    const double top = lerp(at(ix, iy), at(ix + 1, iy), fx);
    const double bottom = lerp(at(ix, iy + 1), at(ix + 1, iy + 1), fx);
    return lerp(top, bottom, fy);
  }

 private:
  static double smooth(double t) { return t * t * (3 - 2 * t); }
  static double lerp(double a, double b, double t) { return a + (b - a) * t; }
  double at(int i, int j) const {
    return values_[static_cast<std::size_t>(std::min(j, n_ - 1)) * n_ + std::min(i, n_ - 1)];
  }

  int spacing_;
  int n_;
  std::vector<double> values_;
};

struct Ellipse {
  double cx, cy, a, b, cos_t, sin_t;

  double field(double x, double y) const {
    const double dx = x - cx, dy = y - cy;
    const double u = (dx * cos_t + dy * sin_t) / a;
    const double v = (-dx * sin_t + dy * cos_t) / b;
    return 1.0 - std::sqrt(u * u + v * v);
  }
};

void paint_disc(std::vector<Color>& canvas, int size, double cx, double cy, double r,
                const Color& color, double opacity) {
  const int x0 = std::max(0, static_cast<int>(cx - r - 1));
  const int x1 = std::min(size - 1, static_cast<int>(cx + r + 1));
  const int y0 = std::max(0, static_cast<int>(cy - r - 1));
  const int y1 = std::min(size - 1, static_cast<int>(cy + r + 1));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double d = std::hypot(x - cx, y - cy);
      if (d > r) continue;
      auto& px = canvas[static_cast<std::size_t>(y) * size + x];
      for (int c = 0; c < 3; ++c) px[c] += (color[c] - px[c]) * opacity;
    }
  }
}

}  // namespace

LabeledPair synthetic_exemplar(int size, std::uint64_t seed) {
  if (size < 16) throw Error("synthetic exemplar needs size >= 16");
  Rng rng(derive_seed(seed, "phantom"));
  const double scale = size / 256.0;
  const std::size_t n = static_cast<std::size_t>(size) * size;

  ValueNoise coarse(size, std::max(2, static_cast<int>(24 * scale)), rng);
  ValueNoise fine(size, std::max(2, static_cast<int>(7 * scale)), rng);

  // Villous islands: union of noisy ellipses until about half the area is villous.
  std::vector<double> field(n, -1.0);
  std::vector<Ellipse> ellipses;
  BinaryMask mask(size, size);
  for (int attempt = 0; attempt < 200; ++attempt) {
    const double theta = rng.uniform(0.0, std::numbers::pi);
    Ellipse e{rng.uniform(-10.0, size + 10.0) , rng.uniform(-10.0, size + 10.0),
              rng.uniform(12.0, 34.0) * scale, rng.uniform(7.0, 17.0) * scale, std::cos(theta),
              std::sin(theta)};
    ellipses.push_back(e);
    std::size_t villous = 0;
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * size + x;
        field[i] = std::max(field[i], e.field(x, y));
        const double f = field[i] + 0.22 * coarse(x, y) + 0.08 * fine(x, y);
        mask.set(x, y, f > 0.0 ? 1 : 0);
        villous += mask.at(x, y);
      }
    }
    if (static_cast<double>(villous) >= 0.55 * static_cast<double>(n)) break;
  }

  // Rim: villous pixels within three pixels of intervillous space.
  std::vector<std::uint8_t> rim(n, 0);
  const int rim_width = std::max(1, static_cast<int>(std::lround(3 * scale)));
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      if (!mask.at(x, y)) continue;
      for (int dy = -rim_width; dy <= rim_width && !rim[static_cast<std::size_t>(y) * size + x]; ++dy)
        for (int dx = -rim_width; dx <= rim_width; ++dx)
          if (mask.inside(x + dx, y + dy) && !mask.at(x + dx, y + dy) && dx * dx + dy * dy <= rim_width * rim_width) {
            rim[static_cast<std::size_t>(y) * size + x] = 1;
            break;
          }
    }
  }

  std::vector<Color> canvas(n);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * size + x;
      const double shade = 0.06 * fine(x, y) + 0.04 * coarse(x, y);
      Color c = mask.at(x, y) ? (rim[i] ? kTrophoblast : kStroma) : kIntervillous;
      for (auto& v : c) v *= 1.0 + shade;
      canvas[i] = c;
    }
  }

  // Capillaries inside larger villi, then nuclei (denser on the rim), then
  // maternal red cells in the intervillous space.
  for (const auto& e : ellipses) {
    if (e.b < 11 * scale) continue;
    const int count = static_cast<int>(rng.below(3));
    for (int k = 0; k < count; ++k) {
      const double px = e.cx + rng.uniform(-0.5, 0.5) * e.a;
      const double py = e.cy + rng.uniform(-0.4, 0.4) * e.b;
      if (px < 0 || py < 0 || px >= size || py >= size || !mask.at(static_cast<int>(px), static_cast<int>(py))) continue;
      paint_disc(canvas, size, px, py, rng.uniform(2.5, 4.5) * scale, kCapillary, 0.85);
    }
  }
  const int nuclei = static_cast<int>(1400 * scale * scale);
  for (int k = 0; k < nuclei; ++k) {
    const double px = rng.uniform(0.0, size), py = rng.uniform(0.0, size);
    const std::size_t i = static_cast<std::size_t>(py) * size + static_cast<std::size_t>(px);
    if (!mask.data()[i]) continue;
    if (!rim[i] && rng.uniform() < 0.6) continue;
    paint_disc(canvas, size, px, py, rng.uniform(1.0, 2.0) * scale, kNucleus, 0.8);
  }
  const int red_cells = static_cast<int>(260 * scale * scale);
  for (int k = 0; k < red_cells; ++k) {
    const double px = rng.uniform(0.0, size), py = rng.uniform(0.0, size);
    const std::size_t i = static_cast<std::size_t>(py) * size + static_cast<std::size_t>(px);
    if (mask.data()[i]) continue;
    const double r = rng.uniform(2.0, 3.2) * scale;
    paint_disc(canvas, size, px, py, r, kRedCell, 0.75);
    paint_disc(canvas, size, px, py, r * 0.4, kIntervillous, 0.3);
  }

  // Sensor noise, then a light 3x3 blur.
  for (auto& c : canvas)
    for (auto& v : c) v += rng.uniform(-7.0, 7.0);
  RasterImage image(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      Color acc{};
      double weight = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (!mask.inside(x + dx, y + dy)) continue;
          const double w = (dx == 0 && dy == 0) ? 4.0 : (dx == 0 || dy == 0) ? 2.0 : 1.0;
          const auto& c = canvas[static_cast<std::size_t>(y + dy) * size + (x + dx)];
          for (int k = 0; k < 3; ++k) acc[k] += w * c[k];
          weight += w;
        }
      }
      for (int k = 0; k < 3; ++k)
        image.at(x, y, k) = static_cast<std::uint8_t>(std::floor(std::clamp(acc[k] / weight, 0.0, 255.0) + 0.5));
    }
  }
  return LabeledPair(std::move(image), std::move(mask));
}

}  // namespace villus
