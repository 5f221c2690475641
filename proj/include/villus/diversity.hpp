#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "villus/image.hpp"
#include "villus/morphology.hpp"
#include "villus/patch_synth.hpp"

namespace villus {

class DegenerateCloud : public Error {
 public:
  using Error::Error;
};

enum class SourceTag { kTraining, kValidation, kBaseCase, kProposed };

const char* to_string(SourceTag tag);
SourceTag source_tag_from_string(const std::string& s);

struct FeaturePoint {
  double volume_fraction = 0.0;
  double specific_surface = 0.0;
  SourceTag tag = SourceTag::kTraining;
};

// One point per mask, in input order. Throws villus::Error on an empty list.
std::vector<FeaturePoint> feature_cloud(const std::vector<BinaryMask>& masks, SourceTag tag,
                                        int jobs = 1);

// Area of the convex hull of the (volume fraction, specific surface) cloud.
// Throws DegenerateCloud for fewer than 3 points or a collinear cloud.
double hull_area(const std::vector<FeaturePoint>& points);

// Area of the axis-aligned bounding box; the coarser coverage alternative.
double bounding_box_area(const std::vector<FeaturePoint>& points);

struct SweepResult {
  int grid_ratio = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> volume_fraction;
  std::vector<double> specific_surface;
  double mean_volume_fraction = 0.0;
  double std_volume_fraction = 0.0;
  double mean_specific_surface = 0.0;
  double std_specific_surface = 0.0;

  std::size_t repeats() const { return seeds.size(); }
};

struct SweepOptions {
  int output_size = 0;  // 0: the exemplar's smaller side
  int overlap = 5;
  ReconstructOptions reconstruct;
  int jobs = 1;
};

std::uint64_t sweep_seed(std::uint64_t seed, int grid_ratio, int repeat);

// Reconstructs the exemplar `repeats` times per grid ratio and aggregates
// the volume fraction and specific surface of the masks. Cells use seeds
// derived from (seed, ratio, repeat), so any one is reproducible alone.
std::vector<SweepResult> grid_sweep(const LabeledPair& exemplar, const std::vector<int>& ratios,
                                    int repeats, std::uint64_t seed,
                                    const SweepOptions& options = {});

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace villus
