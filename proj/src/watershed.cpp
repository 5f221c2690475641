#include <algorithm>
#include <array>
#include <queue>
#include <set>
#include <tuple>

#include "villus/morphology.hpp"

namespace villus {

namespace {

constexpr std::array<std::pair<int, int>, 4> kN4{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

struct Grid {
  int w;
  int h;
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * w + x; }
  bool inside(int x, int y) const { return x >= 0 && y >= 0 && x < w && y < h; }
};

// Reconstruction by dilation of `marker` under `mask_values` over the
// intervillous domain, 4-connected. Max-heap propagation.
std::vector<double> reconstruct_by_dilation(const Grid& g, const std::vector<double>& marker,
                                            const std::vector<double>& limit,
                                            const std::vector<std::uint8_t>& domain) {
  std::vector<double> out = marker;
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item> heap;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (domain[i]) heap.emplace(out[i], i);
  while (!heap.empty()) {
    const auto [v, i] = heap.top();
    heap.pop();
    if (v < out[i]) continue;
    const int x = static_cast<int>(i % g.w), y = static_cast<int>(i / g.w);
    for (const auto& [dx, dy] : kN4) {
      if (!g.inside(x + dx, y + dy)) continue;
      const std::size_t j = g.idx(x + dx, y + dy);
      if (!domain[j]) continue;
      const double nv = std::min(v, limit[j]);
      if (nv > out[j]) {
        out[j] = nv;
        heap.emplace(nv, j);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<int> watershed_markers(const DistanceMap& dmap, double h_min) {
  if (h_min < 0) throw Error("h_min must be >= 0");
  const Grid g{dmap.width(), dmap.height()};
  const auto& f = dmap.values();
  std::vector<std::uint8_t> domain(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) domain[i] = f[i] > 0.0;

  std::vector<double> surface = f;
  if (h_min > 0) {
    std::vector<double> lowered(f.size());
    std::transform(f.begin(), f.end(), lowered.begin(), [h_min](double v) { return v - h_min; });
    surface = reconstruct_by_dilation(g, lowered, f, domain);
  }

  // Regional maxima of `surface`: 4-connected plateaus with no higher neighbour.
  std::vector<int> markers(f.size(), 0);
  std::vector<std::uint8_t> visited(f.size(), 0);
  std::vector<std::size_t> plateau, stack;
  int next_label = 1;
  for (std::size_t start = 0; start < f.size(); ++start) {
    if (!domain[start] || visited[start]) continue;
    const double level = surface[start];
    plateau.clear();
    stack.assign(1, start);
    visited[start] = 1;
    bool is_max = true;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      plateau.push_back(i);
      const int x = static_cast<int>(i % g.w), y = static_cast<int>(i / g.w);
      for (const auto& [dx, dy] : kN4) {
        if (!g.inside(x + dx, y + dy)) continue;
        const std::size_t j = g.idx(x + dx, y + dy);
        if (!domain[j]) continue;
        if (surface[j] > level) {
          is_max = false;
        } else if (surface[j] == level && !visited[j]) {
          visited[j] = 1;
          stack.push_back(j);
        }
      }
    }
    if (is_max) {
      for (auto i : plateau) markers[i] = next_label;
      ++next_label;
    }
  }
  return markers;
}

ChamberLabeling watershed_chambers(const DistanceMap& dmap, double h_min) {
  const Grid g{dmap.width(), dmap.height()};
  const auto& f = dmap.values();
  ChamberLabeling out;
  out.width = g.w;
  out.height = g.h;
  out.labels = watershed_markers(dmap, h_min);
  auto& labels = out.labels;
  out.chamber_count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());

  // Flood in order of decreasing distance; FIFO within equal levels.
  using Item = std::tuple<double, std::int64_t, std::size_t>;  // (value, -seq, index)
  std::priority_queue<Item> queue;
  std::vector<std::uint8_t> queued(f.size(), 0);
  std::int64_t seq = 0;
  auto push_neighbours = [&](std::size_t i) {
    const int x = static_cast<int>(i % g.w), y = static_cast<int>(i / g.w);
    for (const auto& [dx, dy] : kN4) {
      if (!g.inside(x + dx, y + dy)) continue;
      const std::size_t j = g.idx(x + dx, y + dy);
      if (f[j] > 0.0 && labels[j] == 0 && !queued[j]) {
        queued[j] = 1;
        queue.emplace(f[j], -seq++, j);
      }
    }
  };
  for (std::size_t i = 0; i < f.size(); ++i)
    if (labels[i] > 0) push_neighbours(i);

  while (!queue.empty()) {
    const std::size_t i = std::get<2>(queue.top());
    queue.pop();
    const int x = static_cast<int>(i % g.w), y = static_cast<int>(i / g.w);
    int best_label = 0;
    double best_value = -1.0;
    for (const auto& [dx, dy] : kN4) {
      if (!g.inside(x + dx, y + dy)) continue;
      const std::size_t j = g.idx(x + dx, y + dy);
      const int l = labels[j];
      if (l == 0) continue;
      if (f[j] > best_value || (f[j] == best_value && l < best_label)) {
        best_value = f[j];
        best_label = l;
      }
    }
    labels[i] = best_label;
    push_neighbours(i);
  }

  out.radius.assign(out.chamber_count, 0.0);
  out.area.assign(out.chamber_count, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) continue;
    const auto k = static_cast<std::size_t>(labels[i] - 1);
    out.radius[k] = std::max(out.radius[k], f[i]);
    ++out.area[k];
  }
  return out;
}

ChamberNetwork extract_network(const ChamberLabeling& labeling) {
  ChamberNetwork net;
  for (int k = 1; k <= labeling.chamber_count; ++k) net.nodes.push_back(k);
  std::set<std::pair<int, int>> edges;
  // Forward half of the 8-neighbourhood visits every pixel pair once.
  constexpr std::array<std::pair<int, int>, 4> kForward{{{1, 0}, {-1, 1}, {0, 1}, {1, 1}}};
  for (int y = 0; y < labeling.height; ++y) {
    for (int x = 0; x < labeling.width; ++x) {
      const int a = labeling.at(x, y);
      if (a == 0) continue;
      for (const auto& [dx, dy] : kForward) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= labeling.width || ny >= labeling.height) continue;
        const int b = labeling.at(nx, ny);
        if (b != 0 && b != a) edges.emplace(std::min(a, b), std::max(a, b));
      }
    }
  }
  net.edges.assign(edges.begin(), edges.end());
  return net;
}

}  // namespace villus
