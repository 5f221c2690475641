#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "villus/patch_synth.hpp"

namespace villus {
namespace {

using testing::random_pair;

// Reference tile for entry i built only from crop and flip.
LabeledPair reference_tile(const LabeledPair& exemplar, const PatchDataset& ds, std::size_t i) {
  const PatchEntry& e = ds.entry(i);
  return flip(crop(exemplar, e.x, e.y, ds.tile_width(), ds.tile_height()), e.flip);
}

// Exhaustive scan applying the documented rule: MSE over all strip samples,
// lowest index on ties, no-flip winner kept within priority_factor.
std::size_t brute_force_match(const LabeledPair& exemplar, const PatchDataset& ds,
                              const MatchQuery& q, double priority_factor) {
  const double inf = std::numeric_limits<double>::infinity();
  double best = inf, best_nf = inf;
  std::size_t arg = 0, arg_nf = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const LabeledPair t = reference_tile(exemplar, ds, i);
    double sum = 0, n = 0;
    for (const auto& s : q.strips)
      for (int v = 0; v < s.height; ++v)
        for (int u = 0; u < s.width; ++u)
          for (int c = 0; c < 3; ++c) {
            const double d = t.image.at(s.u0 + u, s.v0 + v, c) -
                             s.pixels[(static_cast<std::size_t>(v) * s.width + u) * 3 + c];
            sum += d * d;
            n += 1;
          }
    const double mse = sum / n;
    if (mse < best) best = mse, arg = i;
    if (ds.entry(i).flip == FlipAxis::kNone && mse < best_nf) best_nf = mse, arg_nf = i;
  }
  return best_nf <= priority_factor * best ? arg_nf : arg;
}

ConstraintStrip strip_from(const RasterImage& src, Edge edge, int u0, int v0, int w, int h) {
  ConstraintStrip s;
  s.edge = edge;
  s.u0 = u0;
  s.v0 = v0;
  s.width = w;
  s.height = h;
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u)
      for (int c = 0; c < 3; ++c) s.pixels.push_back(src.at(u0 + u, v0 + v, c));
  return s;
}

// Strips of a grid cell's tile (extent t, margin m), taken from `src`.
MatchQuery query_for_edges(const RasterImage& src, int t, int m, unsigned edges) {
  MatchQuery q;
  const int core = t - 2 * m;
  if (edges & 1) q.strips.push_back(strip_from(src, Edge::kLeft, 0, m, m, core));
  if (edges & 2) q.strips.push_back(strip_from(src, Edge::kRight, m + core, m, m, core));
  if (edges & 4) q.strips.push_back(strip_from(src, Edge::kTop, m, 0, core, m));
  if (edges & 8) q.strips.push_back(strip_from(src, Edge::kBottom, m, m + core, core, m));
  return q;
}

TEST(GridSpec, Geometry) {
  const GridSpec six{256, 6, 5};
  EXPECT_EQ(six.tile_size(), 42);
  EXPECT_EQ(six.cell_end(4), 210);
  EXPECT_EQ(six.cell_end(5), 256);
  EXPECT_EQ(six.max_cell_size(), 46);
  EXPECT_EQ(six.margin(), 5);
  EXPECT_EQ(six.tile_extent(), 56);
  EXPECT_EQ(six.cell_count(), 36);

  const GridSpec one{256, 1, 5};
  EXPECT_EQ(one.margin(), 0);
  EXPECT_EQ(one.tile_extent(), 256);

  const GridSpec twenty{256, 20, 5};
  EXPECT_EQ(twenty.tile_size(), 12);
  EXPECT_EQ(twenty.max_cell_size(), 28);
  EXPECT_EQ(twenty.tile_extent(), 38);
}

TEST(GridSpec, Validation) {
  EXPECT_NO_THROW((GridSpec{256, 20, 5}.validate()));
  EXPECT_THROW((GridSpec{256, 0, 5}.validate()), Error);
  EXPECT_THROW((GridSpec{256, 6, 0}.validate()), Error);
  EXPECT_THROW((GridSpec{256, 26, 5}.validate()), Error);  // tile 9 <= 10
  EXPECT_THROW((GridSpec{100, 10, 5}.validate()), Error);  // tile 10 == 2 * 5
}

TEST(PatchDataset, EntryCountForStrideFive) {
  const LabeledPair ex = testing::bundled_exemplar();
  const PatchDataset ds(ex, 46, 46, 5);
  EXPECT_EQ(ds.size(), 7396u);
  EXPECT_EQ(ds.group_size(), 1849u);
}

TEST(PatchDataset, SinglePositionGivesFourEntries) {
  Rng rng(1);
  const LabeledPair ex = random_pair(256, 256, rng);
  const PatchDataset ds(ex, 56, 56, 256);
  ASSERT_EQ(ds.size(), 4u);
  EXPECT_EQ(ds.tile(0), crop(ex, 0, 0, 56, 56));
  EXPECT_THROW(PatchDataset(ex, 257, 56, 256), ExemplarTooSmall);
  EXPECT_THROW(build_dataset(random_pair(40, 40, rng), GridSpec{256, 6, 5}), ExemplarTooSmall);
}

TEST(PatchDataset, TilesAreVerbatimCopies) {
  Rng rng(2);
  const LabeledPair ex = random_pair(37, 29, rng);
  const PatchDataset ds(ex, 12, 10, 4);
  const int nx = (37 - 12) / 4 + 1, ny = (29 - 10) / 4 + 1;
  ASSERT_EQ(ds.size(), 4u * nx * ny);
  const FlipAxis order[] = {FlipAxis::kNone, FlipAxis::kX, FlipAxis::kY, FlipAxis::kXY};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const PatchEntry& e = ds.entry(i);
    const std::size_t k = i % ds.group_size();
    EXPECT_EQ(e.flip, order[i / ds.group_size()]);
    EXPECT_EQ(e.x, static_cast<int>(k % nx) * 4);
    EXPECT_EQ(e.y, static_cast<int>(k / nx) * 4);
    const LabeledPair ref = reference_tile(ex, ds, i);
    ASSERT_EQ(ds.tile(i), ref) << i;
    for (int v = 0; v < 10; v += 3)
      for (int u = 0; u < 12; u += 5) {
        ASSERT_EQ(ds.mask_at(i, u, v), ref.mask.at(u, v));
        ASSERT_EQ(ds.image_at(i, u, v, 2), ref.image.at(u, v, 2));
      }
  }
}

TEST(FindMatch, VerbatimStripsFindTheirEntry) {
  Rng rng(3);
  const LabeledPair ex = random_pair(60, 60, rng);
  const PatchDataset ds(ex, 20, 20, 5);
  for (std::size_t target : {std::size_t{0}, std::size_t{7}, ds.group_size() - 1}) {
    const MatchQuery q = query_for_edges(ds.tile(target).image, 20, 5, 1 | 8);
    Rng r(0);
    const MatchResult m = find_match(ds, q, {}, r);
    EXPECT_EQ(m.index, target);
    EXPECT_EQ(m.mse, 0.0);
  }
}

TEST(FindMatch, UnconstrainedDrawIsSeeded) {
  Rng rng(4);
  const PatchDataset ds(random_pair(60, 60, rng), 20, 20, 5);
  const MatchQuery empty;
  Rng a(42), b(42);
  for (int k = 0; k < 20; ++k) {
    const auto ia = find_match(ds, empty, {}, a).index;
    EXPECT_EQ(ia, find_match(ds, empty, {}, b).index);
    EXPECT_LT(ia, ds.size());
  }
}

TEST(FindMatch, RejectsStripsOutsideTile) {
  Rng rng(5);
  const PatchDataset ds(random_pair(30, 30, rng), 10, 10, 5);
  MatchQuery q;
  q.strips.push_back(strip_from(RasterImage(20, 20), Edge::kRight, 8, 0, 5, 5));
  Rng r(0);
  EXPECT_THROW(find_match(ds, q, {}, r), Error);
}

TEST(FindMatch, AgreesWithExhaustiveScanOnToyDataset) {
  Rng rng(6);
  // 3 positions x 4 flips = 12 entries.
  const LabeledPair ex = random_pair(24, 14, rng);
  const PatchDataset ds(ex, 14, 14, 5);
  ASSERT_EQ(ds.size(), 12u);
  for (int k = 0; k < 300; ++k) {
    RasterImage src = testing::random_image(14, 14, rng);
    if (k % 2) {
      // Perturbed copy of an entry so near-ties and the priority rule matter.
      src = ds.tile(rng.below(ds.size())).image;
      for (auto& v : src.data()) v = static_cast<std::uint8_t>(std::clamp<int>(v + static_cast<int>(rng.below(41)) - 20, 0, 255));
    }
    const unsigned edges = 1 + static_cast<unsigned>(rng.below(15));
    const MatchQuery q = query_for_edges(src, 14, 4, edges);
    for (double factor : {1.0, 1.1, 2.0}) {
      Rng r(0);
      const MatchOptions opts{factor, 1 + static_cast<int>(k % 3)};
      ASSERT_EQ(find_match(ds, q, opts, r).index, brute_force_match(ex, ds, q, factor))
          << "query " << k << " factor " << factor;
    }
  }
}

TEST(FindMatch, ThreadCountDoesNotChangeResult) {
  Rng rng(7);
  const PatchDataset ds(random_pair(80, 80, rng), 20, 20, 2);
  for (int k = 0; k < 20; ++k) {
    const MatchQuery q = query_for_edges(testing::random_image(20, 20, rng), 20, 5, 1 + k % 15);
    Rng a(0), b(0);
    EXPECT_EQ(find_match(ds, q, {1.1, 1}, a).index, find_match(ds, q, {1.1, 4}, b).index);
  }
}

TEST(Blend, CubicWeight) {
  EXPECT_EQ(cubic_weight(0.0), 0.0);
  EXPECT_EQ(cubic_weight(1.0), 1.0);
  EXPECT_DOUBLE_EQ(cubic_weight(0.5), 0.5);
  EXPECT_DOUBLE_EQ(cubic_weight(0.3) + cubic_weight(0.7), 1.0);
}

TEST(Blend, FirstTileIsVerbatim) {
  Rng rng(8);
  const LabeledPair ex = random_pair(64, 64, rng);
  const GridSpec spec{64, 4, 5};
  const PatchDataset ds = build_dataset(ex, spec, 3);
  FillState state(spec);
  const Cell cell{1, 2};
  blend_tile(state, cell, ds, 5);
  blend_mask(state, cell, ds, 5);
  const auto win = state.window(cell);
  const LabeledPair t = ds.tile(5);
  for (int y = win.y0; y < win.y1; ++y)
    for (int x = win.x0; x < win.x1; ++x) {
      ASSERT_EQ(state.image().at(x, y, 0), t.image.at(x - win.origin_x, y - win.origin_y, 0));
      ASSERT_EQ(state.mask().at(x, y), t.mask.at(x - win.origin_x, y - win.origin_y));
    }
  EXPECT_TRUE(state.filled(cell));
  ASSERT_EQ(state.placements().size(), 1u);
  EXPECT_EQ(state.placements()[0].image_entry, 5u);
  EXPECT_EQ(state.placements()[0].mask_entry, 5u);
}

TEST(Blend, BandFollowsSmoothstepAcrossSharedEdge) {
  Rng rng(9);
  const LabeledPair ex = random_pair(64, 64, rng);
  const GridSpec spec{64, 4, 5};  // cells of 16, tiles of 26
  const PatchDataset ds = build_dataset(ex, spec, 3);
  FillState state(spec);
  blend_tile(state, {0, 0}, ds, 0);
  blend_mask(state, {0, 0}, ds, 0);
  const RasterImage before = state.image();

  const TransitionLayer layer = transition_layer(state, {1, 0});
  const auto& win = layer.window;
  ASSERT_EQ(win.origin_x, 11);
  blend_tile(state, {1, 0}, ds, 9);
  const LabeledPair t = ds.tile(9);
  for (int y = 0; y < 16; ++y)
    for (int x = 11; x < 21; ++x) {
      const double w = cubic_weight((x - 11 + 0.5) / 10.0);
      const std::size_t k = static_cast<std::size_t>(y - win.y0) * (win.x1 - win.x0) + (x - win.x0);
      ASSERT_DOUBLE_EQ(layer.weight[k], w);
      ASSERT_TRUE(layer.in_band[k]);
      for (int c = 0; c < 3; ++c) {
        const double expect = w * t.image.at(x - 11, y + 5, c) + (1 - w) * before.at(x, y, c);
        ASSERT_EQ(state.image().at(x, y, c), static_cast<int>(std::floor(expect + 0.5)));
      }
    }
  // Beyond the band the incoming tile is written verbatim.
  for (int x = 21; x < 37; ++x) EXPECT_EQ(state.image().at(x, 3, 1), t.image.at(x - 11, 8, 1));
}

TEST(Blend, IdenticalContentLeavesCanvasUnchanged) {
  const LabeledPair ex(RasterImage(64, 64, 140), BinaryMask(64, 64, 1));
  const GridSpec spec{64, 4, 5};
  const PatchDataset ds = build_dataset(ex, spec, 5);
  FillState state(spec);
  for (Cell c : {Cell{1, 1}, Cell{2, 1}, Cell{1, 2}, Cell{2, 2}}) {
    blend_tile(state, c, ds, 3);
    blend_mask(state, c, ds, 3);
  }
  for (int y = 11; y < 53; ++y)
    for (int x = 11; x < 53; ++x) {
      ASSERT_EQ(state.image().at(x, y, 0), 140);
      ASSERT_EQ(state.mask().at(x, y), 1);  // all-villous meets all-villous
    }
}

TEST(BlendMask, RequiresMatchingBlendTile) {
  Rng rng(10);
  const GridSpec spec{64, 4, 5};
  const PatchDataset ds = build_dataset(random_pair(64, 64, rng), spec, 5);
  FillState state(spec);
  EXPECT_THROW(blend_mask(state, {0, 0}, ds, 0), Error);
  blend_tile(state, {0, 0}, ds, 0);
  EXPECT_THROW(blend_mask(state, {1, 0}, ds, 0), Error);
}

TEST(BlendMask, SpeckInBandIsOpenedAway) {
  // All-intervillous exemplar except one villous pixel at (19, 19).
  BinaryMask m(30, 30);
  m.set(19, 19, 1);
  const LabeledPair ex(RasterImage(30, 30, 90), m);
  const GridSpec spec{16, 2, 3};  // cells of 8, tiles of 14, band [5, 11)
  const PatchDataset ds(ex, 14, 14, 1);
  const std::size_t clean = 0, speck = 12 * 17 + 15;  // positions (0,0) and (15,12)
  ASSERT_EQ(ds.tile(speck).mask.at(4, 7), 1);
  FillState state(spec);
  blend_tile(state, {0, 0}, ds, clean);
  blend_mask(state, {0, 0}, ds, clean);
  blend_tile(state, {1, 0}, ds, speck);
  blend_mask(state, {1, 0}, ds, speck);
  // The speck lands at canvas (9, 4) where the incoming weight exceeds 0.5.
  EXPECT_EQ(state.mask().count_ones(), 0u);
}

// Direct 3x3 opening; out-of-raster neighbours are ignored.
BinaryMask reference_open(const BinaryMask& in) {
  auto pass = [](const BinaryMask& src, bool erode) {
    BinaryMask out(src.width(), src.height());
    for (int y = 0; y < src.height(); ++y)
      for (int x = 0; x < src.width(); ++x) {
        int v = erode ? 1 : 0;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx)
            if (src.inside(x + dx, y + dy))
              v = erode ? std::min<int>(v, src.at(x + dx, y + dy)) : std::max<int>(v, src.at(x + dx, y + dy));
        out.set(x, y, static_cast<std::uint8_t>(v));
      }
    return out;
  };
  return pass(pass(in, true), false);
}

TEST(BlendMask, MatchesDirectOpeningOracle) {
  Rng rng(11);
  const GridSpec spec{16, 2, 3};
  for (int trial = 0; trial < 200; ++trial) {
    // Checker-like masks with random holes so thresholding leaves specks.
    BinaryMask m(20, 20);
    for (int y = 0; y < 20; ++y)
      for (int x = 0; x < 20; ++x)
        m.set(x, y, ((x / (1 + trial % 3) + y / (1 + trial % 2)) % 2) ^ (rng.uniform() < 0.15));
    const LabeledPair ex(testing::random_image(20, 20, rng), m);
    const PatchDataset ds(ex, 14, 14, 2);
    FillState state(spec);
    const int first = static_cast<int>(rng.below(4));
    const Cell cells[] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    for (int k = 0; k < 4; ++k) {
      const Cell c = cells[(first + k) % 4];
      const std::size_t e = rng.below(ds.size());
      blend_tile(state, c, ds, e);
      const BinaryMask before = state.mask();
      const TransitionLayer layer = transition_layer(state, c);
      const auto& win = layer.window;

      BinaryMask thresholded = before;
      std::size_t i = 0;
      for (int y = win.y0; y < win.y1; ++y)
        for (int x = win.x0; x < win.x1; ++x, ++i) {
          const double w = layer.weight[i];
          const double v = w * ds.mask_at(e, x - win.origin_x, y - win.origin_y) + (1 - w) * before.at(x, y);
          thresholded.set(x, y, v >= 0.5);
        }
      const BinaryMask opened = reference_open(thresholded);
      BinaryMask expect = thresholded;
      i = 0;
      for (int y = win.y0; y < win.y1; ++y)
        for (int x = win.x0; x < win.x1; ++x, ++i)
          if (layer.in_band[i]) expect.set(x, y, opened.at(x, y));

      blend_mask(state, c, ds, e);
      ASSERT_EQ(state.mask(), expect) << "trial " << trial << " step " << k;
    }
  }
}

TEST(Reconstruct, SameSeedIsBitIdentical) {
  const LabeledPair ex = testing::bundled_exemplar();
  const GridSpec spec{256, 6, 5};
  EXPECT_EQ(reconstruct(ex, spec, 77), reconstruct(ex, spec, 77));
  EXPECT_NE(reconstruct(ex, spec, 77).image, reconstruct(ex, spec, 78).image);
}

TEST(Reconstruct, RatioOneIsADatasetTile) {
  const LabeledPair ex = testing::bundled_exemplar();
  const GridSpec spec{200, 1, 5};
  const PatchDataset ds = build_dataset(ex, spec);
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    const Reconstruction r = reconstruct_traced(ds, spec, seed);
    ASSERT_EQ(r.placements.size(), 1u);
    EXPECT_EQ(r.pair, reference_tile(ex, ds, r.placements[0].image_entry));
  }
}

TEST(Reconstruct, FourByFourGridIsComplete) {
  Rng rng(12);
  // No zero bytes in the exemplar, so a zero in the output means unwritten.
  RasterImage img = testing::random_image(128, 128, rng);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(1 + v % 255);
  const LabeledPair ex(std::move(img), testing::random_mask(128, 128, 0.5, rng));
  const GridSpec spec{128, 4, 5};
  const PatchDataset ds = build_dataset(ex, spec, 4);
  const Reconstruction r = reconstruct_traced(ds, spec, 5, {1.1, 2});
  ASSERT_EQ(r.placements.size(), 16u);
  std::set<std::pair<int, int>> seen;
  for (const auto& p : r.placements) {
    seen.insert({p.cell.col, p.cell.row});
    EXPECT_EQ(p.image_entry, p.mask_entry);
  }
  EXPECT_EQ(seen.size(), 16u);
  for (std::uint8_t v : r.pair.image.data()) ASSERT_NE(v, 0);

  // Pixels at least one margin away from every cell edge are the tile's own.
  const int m = spec.margin();
  for (const auto& p : r.placements) {
    const int x0 = spec.cell_begin(p.cell.col), x1 = spec.cell_end(p.cell.col);
    const int y0 = spec.cell_begin(p.cell.row), y1 = spec.cell_end(p.cell.row);
    const LabeledPair t = ds.tile(p.image_entry);
    for (int y = y0 + m; y < y1 - m; ++y)
      for (int x = x0 + m; x < x1 - m; ++x) {
        ASSERT_EQ(r.pair.image.at(x, y, 0), t.image.at(x - x0 + m, y - y0 + m, 0));
        ASSERT_EQ(r.pair.mask.at(x, y), t.mask.at(x - x0 + m, y - y0 + m));
      }
  }
  // Thread count does not change the output.
  EXPECT_EQ(reconstruct_traced(ds, spec, 5, {1.1, 1}).pair, r.pair);
}

TEST(Reconstruct, UnblendedRenderCopiesCores) {
  const LabeledPair ex = testing::bundled_exemplar();
  const GridSpec spec{256, 6, 5};
  const PatchDataset ds = build_dataset(ex, spec);
  const Reconstruction r = reconstruct_traced(ds, spec, 3);
  const RasterImage raw = render_unblended(ds, spec, r.placements);
  for (const auto& p : r.placements) {
    const int x0 = spec.cell_begin(p.cell.col), y0 = spec.cell_begin(p.cell.row);
    EXPECT_EQ(raw.at(x0, y0, 1), ds.image_at(p.image_entry, 5, 5, 1));
  }
  const auto seams = seam_differences(raw, spec);
  EXPECT_EQ(seams.size(), 60u);  // 2 * 6 * 5 interior boundaries
  for (const auto& s : seam_differences(RasterImage(256, 256, 9), spec)) EXPECT_EQ(s.mean_abs_diff, 0.0);
}

TEST(Batch, BaseOnlyEqualsBaseAugmentationForDerivedSeed) {
  const LabeledPair ex = testing::bundled_exemplar();
  const BaseAugmentConfig cfg;
  BatchOptions opts;
  opts.mode = BatchMode::kBaseOnly;
  const auto batch = generate_batch(ex, GridSpec{}, cfg, 1, 21, opts);
  ASSERT_EQ(batch.size(), 1u);
  EXPECT_EQ(batch[0].pair, sample_base_augmentation(ex, cfg, base_stage_seed(sample_seed(21, 0))));
  EXPECT_TRUE(batch[0].placements.empty());
}

TEST(Batch, ProposedSamplesDifferAndIgnoreJobs) {
  const LabeledPair ex = testing::bundled_exemplar();
  const GridSpec spec{256, 6, 5};
  BatchOptions one, three;
  three.jobs = 3;
  const auto a = generate_batch(ex, spec, {}, 3, 8, one);
  const auto b = generate_batch(ex, spec, {}, 3, 8, three);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a[i].pair, b[i].pair);
    EXPECT_EQ(a[i].placements.size(), 36u);
    EXPECT_EQ(generate_sample(ex, spec, {}, 8, i).pair, a[i].pair);
  }
  EXPECT_NE(a[0].pair.image, a[1].pair.image);
  EXPECT_NE(a[1].pair.image, a[2].pair.image);
}

TEST(Batch, ReconstructFirstOrderAppliesBaseLast) {
  const LabeledPair ex = testing::bundled_exemplar();
  const GridSpec spec{256, 6, 5};
  const BaseAugmentConfig cfg;
  BatchOptions opts;
  opts.order = BatchOrder::kReconstructThenBase;
  const BatchSample s = generate_sample(ex, spec, cfg, 4, 0, opts);
  const LabeledPair recon = reconstruct(ex, spec, reconstruct_stage_seed(s.seed));
  EXPECT_EQ(s.pair, apply_base_augmentation(recon, cfg, s.draw));
}

}  // namespace
}  // namespace villus
