#include <algorithm>
#include <cmath>
#include <numeric>

#include "villus/morphology.hpp"

namespace villus {

double volume_fraction(const BinaryMask& mask) {
  if (mask.size() == 0) return 0.0;
  return static_cast<double>(mask.size() - mask.count_ones()) / static_cast<double>(mask.size());
}

double specific_surface(const BinaryMask& mask) {
  std::size_t edges = 0, voids = 0;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y) != 0) continue;
      ++voids;
      edges += (!mask.inside(x - 1, y) || mask.at(x - 1, y)) +
               (!mask.inside(x + 1, y) || mask.at(x + 1, y)) +
               (!mask.inside(x, y - 1) || mask.at(x, y - 1)) +
               (!mask.inside(x, y + 1) || mask.at(x, y + 1));
    }
  }
  return voids == 0 ? 0.0 : static_cast<double>(edges) / static_cast<double>(voids);
}

MorphometricsReport morphometrics(const BinaryMask& mask, double h_min) {
  MorphometricsReport r;
  r.volume_fraction = volume_fraction(mask);
  r.specific_surface = specific_surface(mask);

  const auto labeling = watershed_chambers(distance_map(mask), h_min);
  const auto network = extract_network(labeling);
  r.chamber_count = labeling.chamber_count;
  r.edge_count = network.edges.size();
  r.mean_connectivity = network.mean_connectivity();
  if (!labeling.radius.empty()) {
    r.mean_chamber_radius = std::accumulate(labeling.radius.begin(), labeling.radius.end(), 0.0) /
                            static_cast<double>(labeling.radius.size());
    const double max_radius = *std::max_element(labeling.radius.begin(), labeling.radius.end());
    const auto bins = static_cast<std::size_t>(std::floor(max_radius)) + 1;
    r.radius_distribution.counts.assign(bins, 0);
    for (std::size_t k = 0; k <= bins; ++k)
      r.radius_distribution.bin_edges.push_back(static_cast<double>(k));
    for (double radius : labeling.radius)
      ++r.radius_distribution.counts[static_cast<std::size_t>(std::floor(radius))];
  }
  return r;
}

}  // namespace villus
