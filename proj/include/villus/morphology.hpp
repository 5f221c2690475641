#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "villus/image.hpp"

namespace villus {

// Euclidean distance from each intervillous pixel to the nearest villous
// pixel center; the ring just outside the raster counts as villous, so the
// values are finite. Villous pixels carry 0. Squared distances are kept as
// exact integers.
class DistanceMap {
 public:
  DistanceMap() = default;
  DistanceMap(int width, int height, std::vector<std::int64_t> squared);

  int width() const { return width_; }
  int height() const { return height_; }
  double at(int x, int y) const { return values_[index(x, y)]; }
  std::int64_t squared_at(int x, int y) const { return squared_[index(x, y)]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::int64_t>& squared() const { return squared_; }

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::int64_t> squared_;
  std::vector<double> values_;
};

DistanceMap distance_map(const BinaryMask& mask);

struct Rect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;  // exclusive
  int y1 = 0;  // exclusive

  bool empty() const { return x1 <= x0 || y1 <= y0; }
};

// 3x3 square erosion / dilation. Pixels outside the raster are ignored, so the
// border neither erodes nor grows the foreground.
BinaryMask erode3x3(const BinaryMask& mask);
BinaryMask dilate3x3(const BinaryMask& mask);
BinaryMask open3x3(const BinaryMask& mask);

// Value of open3x3(mask) restricted to `region`; pixels outside the region
// are returned unchanged. Reads at most two pixels beyond the region.
BinaryMask open3x3_in(const BinaryMask& mask, Rect region);

struct ChamberLabeling {
  int width = 0;
  int height = 0;
  // 0 = villous, k >= 1 = chamber id. Row-major.
  std::vector<int> labels;
  int chamber_count = 0;
  // Indexed by chamber id - 1.
  std::vector<double> radius;
  std::vector<std::size_t> area;

  int at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

// Seeds: regional maxima of the distance map after suppressing maxima
// shallower than h_min (h-maxima transform), 4-connected.
std::vector<int> watershed_markers(const DistanceMap& dmap, double h_min);

// Marker-based watershed flooding the negated distance map. Each pixel joins
// the labelled 4-neighbour with the larger distance value, ties going to the
// lower label.
ChamberLabeling watershed_chambers(const DistanceMap& dmap, double h_min);

struct ChamberNetwork {
  std::vector<int> nodes;
  std::vector<std::pair<int, int>> edges;  // (a, b) with a < b, sorted

  double mean_connectivity() const {
    return nodes.empty() ? 0.0 : 2.0 * static_cast<double>(edges.size()) / nodes.size();
  }
};

// Chambers a and b are linked when some pixel of a 8-neighbours a pixel of b.
ChamberNetwork extract_network(const ChamberLabeling& labeling);

struct RadiusHistogram {
  std::vector<double> bin_edges;  // counts.size() + 1 edges, width 1 px
  std::vector<std::size_t> counts;
};

struct MorphometricsReport {
  double volume_fraction = 0.0;
  double specific_surface = 0.0;  // 1/px
  double mean_chamber_radius = 0.0;
  double mean_connectivity = 0.0;
  int chamber_count = 0;
  std::size_t edge_count = 0;
  RadiusHistogram radius_distribution;
};

constexpr double kDefaultHMin = 2.0;

// Intervillous fraction of all pixels.
double volume_fraction(const BinaryMask& mask);

// Villous/intervillous unit edges (4-neighbourhood, outside counts as
// villous) divided by the intervillous pixel count; 0 when there is no void.
double specific_surface(const BinaryMask& mask);

MorphometricsReport morphometrics(const BinaryMask& mask, double h_min = kDefaultHMin);

}  // namespace villus
