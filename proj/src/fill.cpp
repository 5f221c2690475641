#include <algorithm>
#include <cmath>
#include <limits>

#include "villus/morphology.hpp"
#include "villus/patch_synth.hpp"

namespace villus {

namespace {

constexpr std::size_t kNoEntry = std::numeric_limits<std::size_t>::max();

struct Core {
  int x0, y0, x1, y1;
};

Core core_of(const GridSpec& spec, Cell c) {
  return {spec.cell_begin(c.col), spec.cell_begin(c.row), spec.cell_end(c.col), spec.cell_end(c.row)};
}

int cell_index_of(const GridSpec& spec, int pos) {
  return std::min(pos / spec.tile_size(), spec.grid_ratio - 1);
}

}  // namespace

FillState::FillState(const GridSpec& spec)
    : spec_(spec),
      image_(spec.output_size, spec.output_size),
      mask_(spec.output_size, spec.output_size),
      filled_(static_cast<std::size_t>(spec.cell_count()), 0) {
  spec.validate();
}

bool FillState::filled(int col, int row) const {
  if (col < 0 || row < 0 || col >= spec_.grid_ratio || row >= spec_.grid_ratio) return false;
  return filled_[static_cast<std::size_t>(row) * spec_.grid_ratio + col] != 0;
}

FillState::Window FillState::window(Cell c) const {
  const Core core = core_of(spec_, c);
  const int m = spec_.margin();
  const int n = spec_.output_size;
  return {std::max(0, core.x0 - m), std::max(0, core.y0 - m), std::min(n, core.x1 + m),
          std::min(n, core.y1 + m), core.x0 - m, core.y0 - m};
}

MatchQuery make_query(const FillState& state, Cell cell) {
  const GridSpec& spec = state.spec();
  const Core core = core_of(spec, cell);
  const int m = spec.margin();
  const int cw = core.x1 - core.x0, ch = core.y1 - core.y0;

  MatchQuery q;
  q.cell = cell;
  // Canvas rectangle (x, y, w, h) and its tile-space origin for each edge.
  auto add = [&](Edge edge, int x, int y, int w, int h, int u0, int v0) {
    ConstraintStrip s;
    s.edge = edge;
    s.u0 = u0;
    s.v0 = v0;
    s.width = w;
    s.height = h;
    s.pixels.reserve(static_cast<std::size_t>(w) * h * 3);
    for (int j = 0; j < h; ++j) {
      const std::uint8_t* row = state.image().pixel(x, y + j);
      s.pixels.insert(s.pixels.end(), row, row + static_cast<std::size_t>(w) * 3);
    }
    q.strips.push_back(std::move(s));
  };
  if (state.filled(cell.col - 1, cell.row)) add(Edge::kLeft, core.x0 - m, core.y0, m, ch, 0, m);
  if (state.filled(cell.col + 1, cell.row)) add(Edge::kRight, core.x1, core.y0, m, ch, m + cw, m);
  if (state.filled(cell.col, cell.row - 1)) add(Edge::kTop, core.x0, core.y0 - m, cw, m, m, 0);
  if (state.filled(cell.col, cell.row + 1)) add(Edge::kBottom, core.x0, core.y1, cw, m, m, m + ch);
  return q;
}

TransitionLayer transition_layer(const FillState& state, Cell cell) {
  const GridSpec& spec = state.spec();
  const Core core = core_of(spec, cell);
  const int m = spec.margin();
  const double band = 2.0 * m;
  const bool left = state.filled(cell.col - 1, cell.row);
  const bool right = state.filled(cell.col + 1, cell.row);
  const bool top = state.filled(cell.col, cell.row - 1);
  const bool bottom = state.filled(cell.col, cell.row + 1);

  TransitionLayer layer;
  layer.window = state.window(cell);
  const auto& win = layer.window;
  const std::size_t n = static_cast<std::size_t>(win.x1 - win.x0) * (win.y1 - win.y0);
  layer.weight.assign(n, 1.0);
  layer.in_band.assign(n, 0);

  std::size_t k = 0;
  for (int y = win.y0; y < win.y1; ++y) {
    for (int x = win.x0; x < win.x1; ++x, ++k) {
      double w = 1.0;
      bool banded = false;
      auto take = [&](double t) {
        w = std::min(w, cubic_weight(t));
        banded = true;
      };
      if (left && x >= core.x0 - m && x < core.x0 + m) take((x - (core.x0 - m) + 0.5) / band);
      if (right && x >= core.x1 - m && x < core.x1 + m) take((core.x1 + m - x - 0.5) / band);
      if (top && y >= core.y0 - m && y < core.y0 + m) take((y - (core.y0 - m) + 0.5) / band);
      if (bottom && y >= core.y1 - m && y < core.y1 + m) take((core.y1 + m - y - 0.5) / band);

      if (!banded) {
        const bool in_core = x >= core.x0 && x < core.x1 && y >= core.y0 && y < core.y1;
        if (!in_core && state.filled(cell_index_of(spec, x), cell_index_of(spec, y))) w = 0.0;
      }
      layer.weight[k] = w;
      layer.in_band[k] = banded;
    }
  }
  return layer;
}

void blend_tile(FillState& state, Cell cell, const PatchDataset& dataset, std::size_t entry) {
  if (entry >= dataset.size()) throw Error("blend_tile: entry index out of range");
  if (dataset.tile_width() != state.spec().tile_extent() ||
      dataset.tile_height() != state.spec().tile_extent())
    throw DimensionMismatch("blend_tile: dataset tiles do not match the grid");

  const TransitionLayer layer = transition_layer(state, cell);
  const auto& win = layer.window;
  RasterImage& canvas = state.image();
  std::size_t k = 0;
  for (int y = win.y0; y < win.y1; ++y) {
    const std::uint8_t* src = dataset.image_row(entry, y - win.origin_y);
    for (int x = win.x0; x < win.x1; ++x, ++k) {
      const double w = layer.weight[k];
      const std::uint8_t* in = src + (x - win.origin_x) * 3;
      std::uint8_t* out = canvas.pixel(x, y);
      for (int c = 0; c < 3; ++c) {
        if (w == 1.0) {
          out[c] = in[c];
        } else if (w > 0.0) {
          out[c] = static_cast<std::uint8_t>(std::floor(w * in[c] + (1.0 - w) * out[c] + 0.5));
        }
      }
    }
  }
  state.placements().push_back({cell, entry, kNoEntry, 0.0});
}

void blend_mask(FillState& state, Cell cell, const PatchDataset& dataset, std::size_t entry) {
  auto& placements = state.placements();
  if (placements.empty() || placements.back().cell.col != cell.col ||
      placements.back().cell.row != cell.row)
    throw Error("blend_mask: blend_tile has not been applied to this cell");

  const TransitionLayer layer = transition_layer(state, cell);
  const auto& win = layer.window;
  BinaryMask& canvas = state.mask();
  Rect band{win.x1, win.y1, win.x0, win.y0};
  std::size_t k = 0;
  for (int y = win.y0; y < win.y1; ++y) {
    for (int x = win.x0; x < win.x1; ++x, ++k) {
      const double w = layer.weight[k];
      const double v =
          w * dataset.mask_at(entry, x - win.origin_x, y - win.origin_y) + (1.0 - w) * canvas.at(x, y);
      canvas.set(x, y, v >= 0.5 ? 1 : 0);
      if (layer.in_band[k]) {
        band.x0 = std::min(band.x0, x);
        band.y0 = std::min(band.y0, y);
        band.x1 = std::max(band.x1, x + 1);
        band.y1 = std::max(band.y1, y + 1);
      }
    }
  }

  if (!band.empty()) {
    const BinaryMask opened = open3x3_in(canvas, band);
    k = 0;
    for (int y = win.y0; y < win.y1; ++y)
      for (int x = win.x0; x < win.x1; ++x, ++k)
        if (layer.in_band[k]) canvas.set(x, y, opened.at(x, y));
  }

  placements.back().mask_entry = entry;
  state.mark_filled(cell);
}

}  // namespace villus
