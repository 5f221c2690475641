#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "villus/augment.hpp"
#include "villus/image.hpp"
#include "villus/rng.hpp"

namespace villus {

class ExemplarTooSmall : public Error {
 public:
  using Error::Error;
};

class EmptyDataset : public Error {
 public:
  using Error::Error;
};

// Square output split into grid_ratio x grid_ratio cells. Cells are
// tile_size() wide except the last row/column, which absorbs the remainder.
// Every placed tile carries `overlap` extra pixels on each side (the margin)
// so the transition band has source data; a 1x1 grid needs no margin.
struct GridSpec {
  int output_size = 256;
  int grid_ratio = 6;
  int overlap = 5;

  int tile_size() const { return output_size / grid_ratio; }
  int margin() const { return grid_ratio > 1 ? overlap : 0; }
  int cell_begin(int i) const { return i * tile_size(); }
  int cell_end(int i) const { return i == grid_ratio - 1 ? output_size : (i + 1) * tile_size(); }
  int max_cell_size() const { return output_size - (grid_ratio - 1) * tile_size(); }
  // Side length of every dataset tile.
  int tile_extent() const { return max_cell_size() + 2 * margin(); }
  int cell_count() const { return grid_ratio * grid_ratio; }

  // Throws villus::Error unless grid_ratio >= 1, overlap >= 1 and
  // tile_size > 2 * overlap.
  void validate() const;
};

constexpr int kDefaultStride = 5;
constexpr double kDefaultPriorityFactor = 1.1;

struct PatchEntry {
  FlipAxis flip = FlipAxis::kNone;
  int x = 0;  // source position (top-left) in the exemplar
  int y = 0;
};

// Overlapping exemplar tiles at every stride-aligned position, each present
// under the four flips. Entries are grouped by flip (none, x, y, xy) with
// positions row-major inside a group, so the no-flip entries come first.
// Tiles are views into flipped copies of the exemplar, not copies.
class PatchDataset {
 public:
  // Throws ExemplarTooSmall when no tile fits.
  PatchDataset(const LabeledPair& exemplar, int tile_width, int tile_height, int stride);

  std::size_t size() const { return entries_.size(); }
  std::size_t group_size() const { return entries_.size() / 4; }
  int tile_width() const { return tile_w_; }
  int tile_height() const { return tile_h_; }
  int stride() const { return stride_; }
  const PatchEntry& entry(std::size_t i) const { return entries_[i]; }

  // Row v of entry i's image tile: tile_width() * 3 contiguous bytes.
  const std::uint8_t* image_row(std::size_t i, int v) const {
    const auto& o = origin_[i];
    return flipped_[flip_index(i)].image.pixel(o.x, o.y + v);
  }
  std::uint8_t image_at(std::size_t i, int u, int v, int c) const { return image_row(i, v)[u * 3 + c]; }
  std::uint8_t mask_at(std::size_t i, int u, int v) const {
    const auto& o = origin_[i];
    return flipped_[flip_index(i)].mask.at(o.x + u, o.y + v);
  }

  LabeledPair tile(std::size_t i) const;

 private:
  struct Origin {
    int x;
    int y;
  };
  std::size_t flip_index(std::size_t i) const { return i / group_size(); }

  int tile_w_;
  int tile_h_;
  int stride_;
  std::array<LabeledPair, 4> flipped_;
  std::vector<PatchEntry> entries_;
  std::vector<Origin> origin_;
};

PatchDataset build_dataset(const LabeledPair& exemplar, const GridSpec& spec,
                           int stride = kDefaultStride);

enum class Edge { kLeft, kRight, kTop, kBottom };

struct Cell {
  int col = 0;
  int row = 0;
};

// Canvas pixels an already-filled neighbour fixes, in tile coordinates.
struct ConstraintStrip {
  Edge edge = Edge::kLeft;
  int u0 = 0;
  int v0 = 0;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // RGB, row-major, width * height * 3
};

struct MatchQuery {
  Cell cell;
  std::vector<ConstraintStrip> strips;

  std::size_t pixel_count() const;
};

struct MatchOptions {
  double priority_factor = kDefaultPriorityFactor;
  int threads = 1;
};

struct MatchResult {
  std::size_t index = 0;
  double mse = 0.0;  // 0 for unconstrained draws
};

// Entry minimising the mean squared error over the query strips (all strip
// pixels, three channels). The best no-flip entry wins when its error is
// within priority_factor of the overall best; ties go to the lowest index.
// An unconstrained query draws an entry uniformly from `rng`. The result does
// not depend on options.threads.
MatchResult find_match(const PatchDataset& dataset, const MatchQuery& query,
                       const MatchOptions& options, Rng& rng);

struct Placement {
  Cell cell;
  std::size_t image_entry = 0;
  std::size_t mask_entry = 0;
  double mse = 0.0;
};

// Reconstruction canvas plus grid occupancy.
class FillState {
 public:
  explicit FillState(const GridSpec& spec);

  const GridSpec& spec() const { return spec_; }
  const RasterImage& image() const { return image_; }
  const BinaryMask& mask() const { return mask_; }
  RasterImage& image() { return image_; }
  BinaryMask& mask() { return mask_; }

  bool filled(int col, int row) const;
  bool filled(Cell c) const { return filled(c.col, c.row); }
  void mark_filled(Cell c) { filled_[index(c)] = 1; }
  const std::vector<Placement>& placements() const { return placements_; }
  std::vector<Placement>& placements() { return placements_; }

  // Canvas rectangle covered by the cell's tile (core plus margins, clipped).
  struct Window {
    int x0, y0, x1, y1;  // clipped canvas bounds, x1/y1 exclusive
    int origin_x, origin_y;  // canvas position of tile pixel (0, 0)
  };
  Window window(Cell c) const;

 private:
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row) * spec_.grid_ratio + c.col; }

  GridSpec spec_;
  RasterImage image_;
  BinaryMask mask_;
  std::vector<std::uint8_t> filled_;
  std::vector<Placement> placements_;
};

MatchQuery make_query(const FillState& state, Cell cell);

// Smoothstep weight of the incoming tile at band coordinate t in [0, 1].
constexpr double cubic_weight(double t) { return t * t * (3.0 - 2.0 * t); }

// Weight of the incoming tile for each window pixel (row-major over the
// window). Pixels in the 2 * overlap band across each edge shared with a
// filled neighbour ramp from the existing side to the new side; margin
// pixels that fall on another filled cell keep the canvas (weight 0); all
// other pixels take the tile verbatim (weight 1). `in_band` flags band pixels.
struct TransitionLayer {
  FillState::Window window;
  std::vector<double> weight;
  std::vector<std::uint8_t> in_band;
};

TransitionLayer transition_layer(const FillState& state, Cell cell);

// Writes entry's image tile into the canvas through the transition layer and
// records the placement.
void blend_tile(FillState& state, Cell cell, const PatchDataset& dataset, std::size_t entry);

// Writes the mask tile of the same entry: band values are blended,
// thresholded at 0.5, then opened with a 3x3 square restricted to band
// pixels. Marks the cell filled.
void blend_mask(FillState& state, Cell cell, const PatchDataset& dataset, std::size_t entry);

struct ReconstructOptions {
  int stride = kDefaultStride;
  MatchOptions match;
};

struct Reconstruction {
  LabeledPair pair;
  std::vector<Placement> placements;  // in fill order
};

// Fills all cells in a seeded random order.
Reconstruction reconstruct_traced(const LabeledPair& exemplar, const GridSpec& spec,
                                  std::uint64_t seed, const ReconstructOptions& options = {});
Reconstruction reconstruct_traced(const PatchDataset& dataset, const GridSpec& spec,
                                  std::uint64_t seed, const MatchOptions& options = {});
LabeledPair reconstruct(const LabeledPair& exemplar, const GridSpec& spec, std::uint64_t seed,
                        const ReconstructOptions& options = {});

// The same placements written core-only with no blending; the reference for
// seam comparisons.
RasterImage render_unblended(const PatchDataset& dataset, const GridSpec& spec,
                             const std::vector<Placement>& placements);

struct SeamDifference {
  Cell first;
  Cell second;  // right or lower neighbour of `first`
  double mean_abs_diff = 0.0;
};

// Mean absolute channel difference across every interior cell boundary.
std::vector<SeamDifference> seam_differences(const RasterImage& image, const GridSpec& spec);

enum class BatchMode { kBaseOnly, kProposed };
enum class BatchOrder { kBaseThenReconstruct, kReconstructThenBase };

struct BatchOptions {
  BatchMode mode = BatchMode::kProposed;
  BatchOrder order = BatchOrder::kBaseThenReconstruct;
  ReconstructOptions reconstruct;
  int jobs = 1;
};

struct BatchSample {
  LabeledPair pair;
  std::uint64_t seed = 0;  // per-sample derived seed
  BaseAugmentDraw draw;
  std::vector<Placement> placements;
};

std::uint64_t sample_seed(std::uint64_t batch_seed, std::size_t index);
std::uint64_t base_stage_seed(std::uint64_t sample_seed);
std::uint64_t reconstruct_stage_seed(std::uint64_t sample_seed);

// n samples; each is base augmentation of the exemplar followed by
// reconstruction (or base only). Output is independent of options.jobs.
std::vector<BatchSample> generate_batch(const LabeledPair& exemplar, const GridSpec& spec,
                                        const BaseAugmentConfig& base_config, std::size_t n,
                                        std::uint64_t seed, const BatchOptions& options = {});

// Produces one sample of a batch without generating the rest.
BatchSample generate_sample(const LabeledPair& exemplar, const GridSpec& spec,
                            const BaseAugmentConfig& base_config, std::uint64_t seed,
                            std::size_t index, const BatchOptions& options = {});

}  // namespace villus
