#include <algorithm>

#include "villus/morphology.hpp"

namespace villus {

namespace {

// Applies a 3x3 min (erode) or max (dilate) filter over the pixels of `rect`,
// considering in-bounds neighbours only.
template <bool kErode>
void filter3x3(const BinaryMask& in, BinaryMask& out, Rect rect) {
  for (int y = rect.y0; y < rect.y1; ++y) {
    for (int x = rect.x0; x < rect.x1; ++x) {
      std::uint8_t v = kErode ? 1 : 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (!in.inside(x + dx, y + dy)) continue;
          if constexpr (kErode) {
            v &= in.at(x + dx, y + dy);
          } else {
            v |= in.at(x + dx, y + dy);
          }
        }
      }
      out.set(x, y, v);
    }
  }
}

Rect full(const BinaryMask& m) { return {0, 0, m.width(), m.height()}; }

Rect grow(Rect r, int by, const BinaryMask& m) {
  return {std::max(0, r.x0 - by), std::max(0, r.y0 - by), std::min(m.width(), r.x1 + by),
          std::min(m.height(), r.y1 + by)};
}

}  // namespace

BinaryMask erode3x3(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  filter3x3<true>(mask, out, full(mask));
  return out;
}

BinaryMask dilate3x3(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  filter3x3<false>(mask, out, full(mask));
  return out;
}

BinaryMask open3x3(const BinaryMask& mask) { return dilate3x3(erode3x3(mask)); }

BinaryMask open3x3_in(const BinaryMask& mask, Rect region) {
  region = grow(region, 0, mask);
  if (region.empty()) return mask;
  BinaryMask eroded = mask;
  filter3x3<true>(mask, eroded, grow(region, 1, mask));
  // Dilation reads only the eroded ring computed above.
  BinaryMask out = mask;
  filter3x3<false>(eroded, out, region);
  return out;
}

}  // namespace villus
