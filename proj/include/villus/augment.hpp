#pragma once

#include <array>
#include <cstdint>

#include "villus/image.hpp"

namespace villus {

// Sinusoidal elastic warp parameters. amplitude (sigma) scales the wave to
// at most 2.5% of the image side, mesh_ratio sets the number of half-waves
// across the image and phase shifts the wave by phase * pi.
class ElasticParams {
 public:
  // Throws villus::Error when sigma or phase leave [0,1] or mesh_ratio leaves [1,5].
  ElasticParams(double sigma, double mesh_ratio, double phase, bool y_uses_y = false);

  double sigma() const { return sigma_; }
  double mesh_ratio() const { return mesh_ratio_; }
  double phase() const { return phase_; }
  // When false the vertical displacement is driven by the column coordinate,
  // which is the published form of the warp. True selects the row-driven variant.
  bool y_uses_y() const { return y_uses_y_; }

 private:
  double sigma_;
  double mesh_ratio_;
  double phase_;
  bool y_uses_y_;
};

struct Displacement {
  double dx;
  double dy;
};

// Displacement applied at pixel (x, y) of a width x height raster.
Displacement elastic_displacement(const ElasticParams& params, int width, int height, double x,
                                  double y);

// Output pixel (x, y) samples the input at (x + dx, y + dy): bilinear for the
// image, nearest for the mask, border-clamped. Requires at least 2x2.
LabeledPair elastic_deform(const LabeledPair& pair, const ElasticParams& params);

// Scales each channel by (1 + delta), clamps to [0,255] and rounds half up.
RasterImage color_shift(const RasterImage& image, const std::array<double, 3>& deltas);

// Center zoom by factor >= 1; output keeps the input dimensions.
LabeledPair zoom(const LabeledPair& pair, double factor);

// Clockwise rotation about the raster center; revealed regions are filled by
// mirror reflection. Output keeps the input dimensions.
LabeledPair rotate(const LabeledPair& pair, double angle_degrees);

struct BaseAugmentConfig {
  double color_shift_limit = 0.10;
  double zoom_max = 1.5;
  double rotation_max = 10.0;  // degrees, exclusive upper bound
  bool enable_color_shift = true;
  bool enable_zoom = true;
  bool enable_rotation = true;
  bool enable_flip = true;
  bool enable_elastic = true;
  bool elastic_y_uses_y = false;
  std::uint64_t seed = 0;

  // Throws villus::Error on out-of-range values.
  void validate() const;
};

// Parameters drawn for one augmented sample. Every parameter is drawn even
// when its transform is disabled so toggling one transform does not change
// the others.
struct BaseAugmentDraw {
  std::array<double, 3> color_deltas{};
  double zoom_factor = 1.0;
  double rotation_degrees = 0.0;
  FlipAxis flip_axis = FlipAxis::kNone;
  double elastic_sigma = 0.0;
  double elastic_mesh_ratio = 1.0;
  double elastic_phase = 0.0;
};

BaseAugmentDraw draw_base_augmentation(const BaseAugmentConfig& config, std::uint64_t seed);

LabeledPair apply_base_augmentation(const LabeledPair& pair, const BaseAugmentConfig& config,
                                    const BaseAugmentDraw& draw);

// color shift -> zoom -> rotate -> flip -> elastic, each with parameters
// drawn uniformly from its configured range. Pure function of its inputs.
LabeledPair sample_base_augmentation(const LabeledPair& pair, const BaseAugmentConfig& config,
                                     std::uint64_t seed);

}  // namespace villus
