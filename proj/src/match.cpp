#include <cstdlib>
#include <limits>

#include "villus/parallel.hpp"
#include "villus/patch_synth.hpp"

namespace villus {

std::size_t MatchQuery::pixel_count() const {
  std::size_t n = 0;
  for (const auto& s : strips) n += static_cast<std::size_t>(s.width) * s.height;
  return n;
}

namespace {

struct Best {
  std::int64_t ssd = std::numeric_limits<std::int64_t>::max();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  void offer(std::int64_t s, std::size_t i) {
    if (s < ssd || (s == ssd && i < index)) {
      ssd = s;
      index = i;
    }
  }
};

// Sum of squared differences between the strips and entry i. Stops early once
// the partial sum reaches `bound`, since such a candidate can no longer win.
std::int64_t strip_ssd(const PatchDataset& ds, std::size_t i, const MatchQuery& q,
                       std::int64_t bound) {
  std::int64_t total = 0;
  for (const auto& s : q.strips) {
    const std::uint8_t* want = s.pixels.data();
    const int row_bytes = s.width * 3;
    for (int v = 0; v < s.height; ++v) {
      const std::uint8_t* have = ds.image_row(i, s.v0 + v) + s.u0 * 3;
      std::int32_t row = 0;
      for (int k = 0; k < row_bytes; ++k) {
        const std::int32_t d = static_cast<std::int32_t>(have[k]) - want[k];
        row += d * d;
      }
      total += row;
      want += row_bytes;
      if (total >= bound) return total;
    }
  }
  return total;
}

void scan(const PatchDataset& ds, const MatchQuery& q, std::size_t lo, std::size_t hi, Best& best) {
  for (std::size_t i = lo; i < hi; ++i) best.offer(strip_ssd(ds, i, q, best.ssd), i);
}

// Best entry of [lo, hi), optionally split across threads. Chunk results are
// merged by (ssd, index), which reproduces the sequential answer.
Best scan_range(const PatchDataset& ds, const MatchQuery& q, std::size_t lo, std::size_t hi,
                int threads) {
  const std::size_t chunks = std::max(1, threads);
  if (chunks == 1 || hi - lo < 2 * chunks) {
    Best best;
    scan(ds, q, lo, hi, best);
    return best;
  }
  std::vector<Best> partial(chunks);
  const std::size_t span = (hi - lo + chunks - 1) / chunks;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t a = lo + c * span;
    scan(ds, q, std::min(a, hi), std::min(a + span, hi), partial[c]);
  });
  Best best;
  for (const auto& p : partial) best.offer(p.ssd, p.index);
  return best;
}

}  // namespace

MatchResult find_match(const PatchDataset& dataset, const MatchQuery& query,
                       const MatchOptions& options, Rng& rng) {
  if (dataset.size() == 0) throw EmptyDataset("find_match on an empty dataset");
  if (query.strips.empty()) return {static_cast<std::size_t>(rng.below(dataset.size())), 0.0};

  for (const auto& s : query.strips) {
    if (s.u0 < 0 || s.v0 < 0 || s.u0 + s.width > dataset.tile_width() ||
        s.v0 + s.height > dataset.tile_height() ||
        s.pixels.size() != static_cast<std::size_t>(s.width) * s.height * 3)
      throw Error("constraint strip does not fit the dataset tiles");
  }

  const std::size_t g = dataset.group_size();
  const Best no_flip = scan_range(dataset, query, 0, g, options.threads);
  const Best flipped = scan_range(dataset, query, g, dataset.size(), options.threads);
  Best overall = no_flip;
  overall.offer(flipped.ssd, flipped.index);

  const double samples = static_cast<double>(query.pixel_count()) * 3.0;
  const Best& pick = static_cast<double>(no_flip.ssd) <=
                             options.priority_factor * static_cast<double>(overall.ssd)
                         ? no_flip
                         : overall;
  return {pick.index, samples > 0 ? static_cast<double>(pick.ssd) / samples : 0.0};
}

}  // namespace villus
