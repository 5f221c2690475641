#include "villus/patch_synth.hpp"

namespace villus {

void GridSpec::validate() const {
  if (grid_ratio < 1) throw Error("grid_ratio must be >= 1");
  if (overlap < 1) throw Error("overlap must be >= 1");
  if (output_size < grid_ratio) throw Error("output_size must be at least grid_ratio");
  if (tile_size() <= 2 * overlap)
    throw Error("tile size " + std::to_string(tile_size()) + " must exceed twice the overlap (" +
                std::to_string(overlap) + ")");
}

PatchDataset::PatchDataset(const LabeledPair& exemplar, int tile_width, int tile_height, int stride)
    : tile_w_(tile_width), tile_h_(tile_height), stride_(stride) {
  if (stride < 1) throw Error("stride must be >= 1");
  if (tile_width < 1 || tile_height < 1) throw Error("tile dimensions must be positive");
  const int w = exemplar.width(), h = exemplar.height();
  if (w < tile_width || h < tile_height)
    throw ExemplarTooSmall("exemplar " + std::to_string(w) + "x" + std::to_string(h) +
                           " cannot hold a " + std::to_string(tile_width) + "x" +
                           std::to_string(tile_height) + " tile");

  constexpr std::array kFlips{FlipAxis::kNone, FlipAxis::kX, FlipAxis::kY, FlipAxis::kXY};
  for (std::size_t k = 0; k < kFlips.size(); ++k) flipped_[k] = flip(exemplar, kFlips[k]);

  const int nx = (w - tile_width) / stride + 1;
  const int ny = (h - tile_height) / stride + 1;
  entries_.reserve(4 * static_cast<std::size_t>(nx) * ny);
  origin_.reserve(entries_.capacity());
  for (auto axis : kFlips) {
    const bool fx = axis == FlipAxis::kX || axis == FlipAxis::kXY;
    const bool fy = axis == FlipAxis::kY || axis == FlipAxis::kXY;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int x = i * stride, y = j * stride;
        entries_.push_back({axis, x, y});
        // A flipped crop equals the crop of the flipped exemplar at the
        // mirrored position.
        origin_.push_back({fx ? w - x - tile_width : x, fy ? h - y - tile_height : y});
      }
    }
  }
}

LabeledPair PatchDataset::tile(std::size_t i) const {
  const auto& o = origin_[i];
  return crop(flipped_[flip_index(i)], o.x, o.y, tile_w_, tile_h_);
}

PatchDataset build_dataset(const LabeledPair& exemplar, const GridSpec& spec, int stride) {
  spec.validate();
  const int extent = spec.tile_extent();
  return PatchDataset(exemplar, extent, extent, stride);
}

}  // namespace villus
