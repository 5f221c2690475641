#include "villus/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "villus/parallel.hpp"
#include "villus/rng.hpp"

namespace villus {

const char* to_string(SourceTag tag) {
  switch (tag) {
    case SourceTag::kTraining: return "training";
    case SourceTag::kValidation: return "validation";
    case SourceTag::kBaseCase: return "base_case";
    case SourceTag::kProposed: return "proposed";
  }
  return "training";
}

SourceTag source_tag_from_string(const std::string& s) {
  if (s == "training") return SourceTag::kTraining;
  if (s == "validation") return SourceTag::kValidation;
  if (s == "base_case") return SourceTag::kBaseCase;
  if (s == "proposed") return SourceTag::kProposed;
  throw Error("unknown source tag '" + s + "'");
}

std::vector<FeaturePoint> feature_cloud(const std::vector<BinaryMask>& masks, SourceTag tag,
                                        int jobs) {
  if (masks.empty()) throw Error("feature_cloud needs at least one mask");
  std::vector<FeaturePoint> out(masks.size());
  parallel_for(masks.size(), jobs, [&](std::size_t i) {
    out[i] = {volume_fraction(masks[i]), specific_surface(masks[i]), tag};
  });
  return out;
}

namespace {

struct P {
  double x, y;
};

double cross(const P& o, const P& a, const P& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

// Andrew's monotone chain.
double hull_area(const std::vector<FeaturePoint>& points) {
  if (points.size() < 3) throw DegenerateCloud("hull_area needs at least 3 points");
  std::vector<P> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back({p.volume_fraction, p.specific_surface});
  std::sort(pts.begin(), pts.end(), [](const P& a, const P& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const P& a, const P& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());

  std::vector<P> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 0 ? k - 1 : 0);
  if (hull.size() < 3) throw DegenerateCloud("feature cloud is collinear");

  double twice = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const P& a = hull[i];
    const P& b = hull[(i + 1) % hull.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

double bounding_box_area(const std::vector<FeaturePoint>& points) {
  if (points.empty()) throw DegenerateCloud("bounding_box_area needs points");
  auto [xmin, xmax] = std::minmax_element(points.begin(), points.end(), [](auto& a, auto& b) {
    return a.volume_fraction < b.volume_fraction;
  });
  auto [ymin, ymax] = std::minmax_element(points.begin(), points.end(), [](auto& a, auto& b) {
    return a.specific_surface < b.specific_surface;
  });
  return (xmax->volume_fraction - xmin->volume_fraction) *
         (ymax->specific_surface - ymin->specific_surface);
}

std::uint64_t sweep_seed(std::uint64_t seed, int grid_ratio, int repeat) {
  return derive_seed(derive_seed(seed, "sweep", static_cast<std::uint64_t>(grid_ratio)), "repeat",
                     static_cast<std::uint64_t>(repeat));
}

namespace {

void summarize(const std::vector<double>& v, double& mean, double& stdev) {
  mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  stdev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
}

}  // namespace

std::vector<SweepResult> grid_sweep(const LabeledPair& exemplar, const std::vector<int>& ratios,
                                    int repeats, std::uint64_t seed, const SweepOptions& options) {
  if (ratios.empty()) throw Error("grid_sweep needs at least one ratio");
  if (repeats < 1) throw Error("grid_sweep needs repeats >= 1");
  const int size = options.output_size > 0 ? options.output_size
                                           : std::min(exemplar.width(), exemplar.height());

  std::vector<GridSpec> specs;
  std::vector<PatchDataset> datasets;
  for (int r : ratios) {
    if (r < 1) throw Error("grid ratios must be >= 1");
    GridSpec spec{size, r, options.overlap};
    spec.validate();
    specs.push_back(spec);
    datasets.push_back(build_dataset(exemplar, spec, options.reconstruct.stride));
  }

  std::vector<SweepResult> results(ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    results[i].grid_ratio = ratios[i];
    results[i].seeds.resize(static_cast<std::size_t>(repeats));
    results[i].volume_fraction.resize(static_cast<std::size_t>(repeats));
    results[i].specific_surface.resize(static_cast<std::size_t>(repeats));
  }
  const std::size_t cells = ratios.size() * static_cast<std::size_t>(repeats);
  parallel_for(cells, options.jobs, [&](std::size_t k) {
    const std::size_t i = k / static_cast<std::size_t>(repeats);
    const int rep = static_cast<int>(k % static_cast<std::size_t>(repeats));
    const std::uint64_t s = sweep_seed(seed, ratios[i], rep);
    const auto r = reconstruct_traced(datasets[i], specs[i], s, options.reconstruct.match);
    results[i].seeds[static_cast<std::size_t>(rep)] = s;
    results[i].volume_fraction[static_cast<std::size_t>(rep)] = volume_fraction(r.pair.mask);
    results[i].specific_surface[static_cast<std::size_t>(rep)] = specific_surface(r.pair.mask);
  });
  for (auto& r : results) {
    summarize(r.volume_fraction, r.mean_volume_fraction, r.std_volume_fraction);
    summarize(r.specific_surface, r.mean_specific_surface, r.std_specific_surface);
  }
  return results;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw Error("spearman needs two equal-length samples");
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace villus
