#include <cmath>
#include <limits>

#include "villus/morphology.hpp"

namespace villus {

DistanceMap::DistanceMap(int width, int height, std::vector<std::int64_t> squared)
    : width_(width), height_(height), squared_(std::move(squared)), values_(squared_.size()) {
  if (squared_.size() != static_cast<std::size_t>(width) * height)
    throw DimensionMismatch("distance map size mismatch");
  for (std::size_t i = 0; i < squared_.size(); ++i)
    values_[i] = std::sqrt(static_cast<double>(squared_[i]));
}

// Meijster, Roerdink & Hesselink linear-time exact EDT with integer
// arithmetic, run on the mask padded by a one-pixel villous ring.
DistanceMap distance_map(const BinaryMask& mask) {
  const int w = mask.width() + 2;
  const int h = mask.height() + 2;
  const std::int64_t inf = static_cast<std::int64_t>(w) + h;
  auto is_wall = [&](int x, int y) {
    if (x == 0 || y == 0 || x == w - 1 || y == h - 1) return true;
    return mask.at(x - 1, y - 1) == 1;
  };

  // Column pass: g = vertical distance to the nearest wall in the column.
  std::vector<std::int64_t> g(static_cast<std::size_t>(w) * h);
  auto G = [&](int x, int y) -> std::int64_t& { return g[static_cast<std::size_t>(y) * w + x]; };
  for (int x = 0; x < w; ++x) {
    G(x, 0) = is_wall(x, 0) ? 0 : inf;
    for (int y = 1; y < h; ++y) G(x, y) = is_wall(x, y) ? 0 : G(x, y - 1) + 1;
    for (int y = h - 2; y >= 0; --y)
      if (G(x, y + 1) < G(x, y)) G(x, y) = G(x, y + 1) + 1;
  }

  // Row pass: lower envelope of parabolas f(x, i) = (x - i)^2 + g(i)^2.
  std::vector<std::int64_t> out(static_cast<std::size_t>(mask.width()) * mask.height());
  std::vector<int> s(w), t(w);
  for (int y = 1; y < h - 1; ++y) {
    auto f = [&](int x, int i) {
      const std::int64_t gi = G(i, y);
      return static_cast<std::int64_t>(x - i) * (x - i) + gi * gi;
    };
    auto sep = [&](int i, int u) {
      const std::int64_t gi = G(i, y), gu = G(u, y);
      return (static_cast<std::int64_t>(u) * u - static_cast<std::int64_t>(i) * i + gu * gu -
              gi * gi) /
             (2 * static_cast<std::int64_t>(u - i));
    };
    int q = 0;
    s[0] = 0;
    t[0] = 0;
    for (int u = 1; u < w; ++u) {
      while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
      if (q < 0) {
        q = 0;
        s[0] = u;
      } else {
        const std::int64_t wpos = 1 + sep(s[q], u);
        if (wpos < w) {
          ++q;
          s[q] = u;
          t[q] = static_cast<int>(wpos);
        }
      }
    }
    for (int u = w - 1; u >= 0; --u) {
      if (u >= 1 && u < w - 1)
        out[static_cast<std::size_t>(y - 1) * mask.width() + (u - 1)] = f(u, s[q]);
      if (u == t[q]) --q;
    }
  }
  return DistanceMap(mask.width(), mask.height(), std::move(out));
}

}  // namespace villus
