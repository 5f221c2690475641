#include "villus/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "villus/rng.hpp"

namespace villus {

namespace {

constexpr double kElasticAmplitude = 0.025;

std::uint8_t round_channel(double v) {
  return static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 255.0) + 0.5));
}

// Bilinear sample of all channels at (fx, fy), clamped to the raster.
void sample_bilinear(const RasterImage& img, double fx, double fy, std::uint8_t* out) {
  fx = std::clamp(fx, 0.0, static_cast<double>(img.width() - 1));
  fy = std::clamp(fy, 0.0, static_cast<double>(img.height() - 1));
  const int x0 = static_cast<int>(std::floor(fx));
  const int y0 = static_cast<int>(std::floor(fy));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double ax = fx - x0, ay = fy - y0;
  for (int c = 0; c < RasterImage::kChannels; ++c) {
    const double top = img.at(x0, y0, c) * (1.0 - ax) + img.at(x1, y0, c) * ax;
    const double bottom = img.at(x0, y1, c) * (1.0 - ax) + img.at(x1, y1, c) * ax;
    out[c] = round_channel(top * (1.0 - ay) + bottom * ay);
  }
}

std::uint8_t sample_nearest(const BinaryMask& mask, double fx, double fy) {
  const int x = std::clamp(static_cast<int>(std::floor(fx + 0.5)), 0, mask.width() - 1);
  const int y = std::clamp(static_cast<int>(std::floor(fy + 0.5)), 0, mask.height() - 1);
  return mask.at(x, y);
}

// Mirror a coordinate into [0, n-1] (reflection about the edge pixel centers).
double reflect(double v, int n) {
  if (n <= 1) return 0.0;
  const double period = 2.0 * (n - 1);
  v = std::fmod(std::abs(v), period);
  return v > n - 1 ? period - v : v;
}

// Resamples a pair through a backward map src = map(x, y).
template <typename Map>
LabeledPair remap(const LabeledPair& pair, Map&& map) {
  const int w = pair.width(), h = pair.height();
  RasterImage image(w, h);
  BinaryMask mask(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto [sx, sy] = map(x, y);
      sample_bilinear(pair.image, sx, sy, image.pixel(x, y));
      mask.set(x, y, sample_nearest(pair.mask, sx, sy));
    }
  }
  return LabeledPair(std::move(image), std::move(mask));
}

}  // namespace

ElasticParams::ElasticParams(double sigma, double mesh_ratio, double phase, bool y_uses_y)
    : sigma_(sigma), mesh_ratio_(mesh_ratio), phase_(phase), y_uses_y_(y_uses_y) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw Error("elastic sigma must lie in [0,1]");
  if (!(mesh_ratio >= 1.0 && mesh_ratio <= 5.0)) throw Error("elastic mesh ratio must lie in [1,5]");
  if (!(phase >= 0.0 && phase <= 1.0)) throw Error("elastic phase must lie in [0,1]");
}

Displacement elastic_displacement(const ElasticParams& p, int width, int height, double x,
                                  double y) {
  constexpr double pi = std::numbers::pi;
  const double s1 = width, s2 = height;
  const double ax = kElasticAmplitude * s1 * p.sigma();
  const double ay = kElasticAmplitude * s2 * p.sigma();
  const double y_arg = p.y_uses_y() ? y : x;
  return {ax * std::sin(x / (s1 / p.mesh_ratio()) * pi + pi * p.phase()),
          ay * std::cos(y_arg / (s2 / p.mesh_ratio()) * pi + pi * p.phase())};
}

LabeledPair elastic_deform(const LabeledPair& pair, const ElasticParams& params) {
  if (pair.width() < 2 || pair.height() < 2) throw Error("elastic_deform needs at least 2x2");
  const int w = pair.width(), h = pair.height();
  return remap(pair, [&](int x, int y) {
    const auto d = elastic_displacement(params, w, h, x, y);
    return std::pair{x + d.dx, y + d.dy};
  });
}

RasterImage color_shift(const RasterImage& image, const std::array<double, 3>& deltas) {
  RasterImage out = image;
  auto data = out.data();
  for (std::size_t i = 0; i < data.size(); ++i)
    data[i] = round_channel(data[i] * (1.0 + deltas[i % RasterImage::kChannels]));
  return out;
}

LabeledPair zoom(const LabeledPair& pair, double factor) {
  if (!(factor >= 1.0)) throw Error("zoom factor must be >= 1");
  const double cx = pair.width() / 2.0, cy = pair.height() / 2.0;
  return remap(pair, [&](int x, int y) {
    return std::pair{(x + 0.5 - cx) / factor + cx - 0.5, (y + 0.5 - cy) / factor + cy - 0.5};
  });
}

LabeledPair rotate(const LabeledPair& pair, double angle_degrees) {
  const double theta = angle_degrees * std::numbers::pi / 180.0;
  const double c = std::cos(theta), s = std::sin(theta);
  const double cx = (pair.width() - 1) / 2.0, cy = (pair.height() - 1) / 2.0;
  const int w = pair.width(), h = pair.height();
  // With y pointing down, the inverse of a clockwise turn is the
  // counter-clockwise matrix below.
  return remap(pair, [&](int x, int y) {
    const double dx = x - cx, dy = y - cy;
    return std::pair{reflect(cx + c * dx + s * dy, w), reflect(cy - s * dx + c * dy, h)};
  });
}

void BaseAugmentConfig::validate() const {
  if (!(color_shift_limit >= 0.0 && color_shift_limit <= 1.0))
    throw Error("color_shift_limit must lie in [0,1]");
  if (!(zoom_max >= 1.0)) throw Error("zoom_max must be >= 1");
  if (!(rotation_max >= 0.0 && rotation_max < 90.0))
    throw Error("rotation_max must lie in [0,90)");
}

BaseAugmentDraw draw_base_augmentation(const BaseAugmentConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  BaseAugmentDraw d;
  for (auto& delta : d.color_deltas)
    delta = rng.uniform(-config.color_shift_limit, config.color_shift_limit);
  d.zoom_factor = rng.uniform(1.0, config.zoom_max);
  d.rotation_degrees = rng.uniform(0.0, config.rotation_max);
  d.flip_axis = static_cast<FlipAxis>(rng.below(4));
  d.elastic_sigma = rng.uniform();
  d.elastic_mesh_ratio = rng.uniform(1.0, 5.0);
  d.elastic_phase = rng.uniform();
  return d;
}

LabeledPair apply_base_augmentation(const LabeledPair& pair, const BaseAugmentConfig& config,
                                    const BaseAugmentDraw& draw) {
  LabeledPair out = pair;
  if (config.enable_color_shift) out.image = color_shift(out.image, draw.color_deltas);
  if (config.enable_zoom) out = zoom(out, draw.zoom_factor);
  if (config.enable_rotation) out = rotate(out, draw.rotation_degrees);
  if (config.enable_flip) out = flip(out, draw.flip_axis);
  if (config.enable_elastic)
    out = elastic_deform(out, ElasticParams(draw.elastic_sigma, draw.elastic_mesh_ratio,
                                            draw.elastic_phase, config.elastic_y_uses_y));
  return out;
}

LabeledPair sample_base_augmentation(const LabeledPair& pair, const BaseAugmentConfig& config,
                                     std::uint64_t seed) {
  return apply_base_augmentation(pair, config, draw_base_augmentation(config, seed));
}

}  // namespace villus
