#include <cmath>
#include <cstdlib>
#include <numeric>

#include "villus/parallel.hpp"
#include "villus/patch_synth.hpp"

namespace villus {

Reconstruction reconstruct_traced(const PatchDataset& dataset, const GridSpec& spec,
                                  std::uint64_t seed, const MatchOptions& options) {
  spec.validate();
  FillState state(spec);
  Rng rng(seed);

  const int n = spec.cell_count();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);

  for (int k : order) {
    const Cell cell{k % spec.grid_ratio, k / spec.grid_ratio};
    const MatchQuery query = make_query(state, cell);
    const MatchResult match = find_match(dataset, query, options, rng);
    blend_tile(state, cell, dataset, match.index);
    blend_mask(state, cell, dataset, match.index);
    state.placements().back().mse = match.mse;
  }
  return {LabeledPair(state.image(), state.mask()), state.placements()};
}

Reconstruction reconstruct_traced(const LabeledPair& exemplar, const GridSpec& spec,
                                  std::uint64_t seed, const ReconstructOptions& options) {
  const PatchDataset dataset = build_dataset(exemplar, spec, options.stride);
  return reconstruct_traced(dataset, spec, seed, options.match);
}

LabeledPair reconstruct(const LabeledPair& exemplar, const GridSpec& spec, std::uint64_t seed,
                        const ReconstructOptions& options) {
  return reconstruct_traced(exemplar, spec, seed, options).pair;
}

RasterImage render_unblended(const PatchDataset& dataset, const GridSpec& spec,
                             const std::vector<Placement>& placements) {
  RasterImage out(spec.output_size, spec.output_size);
  const int m = spec.margin();
  for (const auto& p : placements) {
    const int x0 = spec.cell_begin(p.cell.col), x1 = spec.cell_end(p.cell.col);
    const int y0 = spec.cell_begin(p.cell.row), y1 = spec.cell_end(p.cell.row);
    for (int y = y0; y < y1; ++y) {
      const std::uint8_t* src = dataset.image_row(p.image_entry, y - y0 + m) + m * 3;
      std::copy_n(src, static_cast<std::size_t>(x1 - x0) * 3, out.pixel(x0, y));
    }
  }
  return out;
}

std::vector<SeamDifference> seam_differences(const RasterImage& image, const GridSpec& spec) {
  std::vector<SeamDifference> seams;
  const int g = spec.grid_ratio;
  for (int row = 0; row < g; ++row) {
    for (int col = 0; col < g; ++col) {
      const int x0 = spec.cell_begin(col), x1 = spec.cell_end(col);
      const int y0 = spec.cell_begin(row), y1 = spec.cell_end(row);
      if (col + 1 < g) {
        double sum = 0;
        for (int y = y0; y < y1; ++y)
          for (int c = 0; c < 3; ++c) sum += std::abs(image.at(x1 - 1, y, c) - image.at(x1, y, c));
        seams.push_back({{col, row}, {col + 1, row}, sum / (3.0 * (y1 - y0))});
      }
      if (row + 1 < g) {
        double sum = 0;
        for (int x = x0; x < x1; ++x)
          for (int c = 0; c < 3; ++c) sum += std::abs(image.at(x, y1 - 1, c) - image.at(x, y1, c));
        seams.push_back({{col, row}, {col, row + 1}, sum / (3.0 * (x1 - x0))});
      }
    }
  }
  return seams;
}

std::uint64_t sample_seed(std::uint64_t batch_seed, std::size_t index) {
  return derive_seed(batch_seed, "sample", index);
}
std::uint64_t base_stage_seed(std::uint64_t s) { return derive_seed(s, "base"); }
std::uint64_t reconstruct_stage_seed(std::uint64_t s) { return derive_seed(s, "reconstruct"); }

BatchSample generate_sample(const LabeledPair& exemplar, const GridSpec& spec,
                            const BaseAugmentConfig& base_config, std::uint64_t seed,
                            std::size_t index, const BatchOptions& options) {
  BatchSample out;
  out.seed = sample_seed(seed, index);
  out.draw = draw_base_augmentation(base_config, base_stage_seed(out.seed));
  auto base = [&](const LabeledPair& p) { return apply_base_augmentation(p, base_config, out.draw); };

  if (options.mode == BatchMode::kBaseOnly) {
    out.pair = base(exemplar);
    return out;
  }
  const std::uint64_t recon_seed = reconstruct_stage_seed(out.seed);
  if (options.order == BatchOrder::kBaseThenReconstruct) {
    auto r = reconstruct_traced(base(exemplar), spec, recon_seed, options.reconstruct);
    out.pair = std::move(r.pair);
    out.placements = std::move(r.placements);
  } else {
    auto r = reconstruct_traced(exemplar, spec, recon_seed, options.reconstruct);
    out.pair = base(r.pair);
    out.placements = std::move(r.placements);
  }
  return out;
}

std::vector<BatchSample> generate_batch(const LabeledPair& exemplar, const GridSpec& spec,
                                        const BaseAugmentConfig& base_config, std::size_t n,
                                        std::uint64_t seed, const BatchOptions& options) {
  if (n < 1) throw Error("generate_batch needs n >= 1");
  base_config.validate();
  if (options.mode == BatchMode::kProposed) spec.validate();
  std::vector<BatchSample> out(n);
  parallel_for(n, options.jobs, [&](std::size_t i) {
    out[i] = generate_sample(exemplar, spec, base_config, seed, i, options);
  });
  return out;
}

}  // namespace villus
