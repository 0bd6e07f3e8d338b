#include "patterns/cover.h"

#include <algorithm>

#include "patterns/discovery.h"

namespace tonemorph {
namespace {

struct Candidate {
  Tec tec;
  PointSet coverage;
};

int64_t pattern_bbox_area(const PointSet& pattern) {
  int64_t t_lo = pattern.front().time, t_hi = pattern.front().time;
  int64_t p_lo = pattern.front().pitch, p_hi = pattern.front().pitch;
  for (Point p : pattern) {
    t_lo = std::min(t_lo, p.time);
    t_hi = std::max(t_hi, p.time);
    p_lo = std::min(p_lo, p.pitch);
    p_hi = std::max(p_hi, p.pitch);
  }
  return (t_hi - t_lo) * (p_hi - p_lo);
}

size_t new_point_count(const PointSet& coverage, const PointSet& uncovered) {
  size_t n = 0;
  auto it = uncovered.begin();
  for (Point p : coverage) {
    it = std::lower_bound(it, uncovered.end(), p);
    if (it == uncovered.end()) break;
    if (*it == p) {
      ++n;
      ++it;
    }
  }
  return n;
}

/// True when a beats b for selection against the current uncovered set.
/// Compression ratios compare exactly via cross-multiplication.
bool better_candidate(const Candidate& a, size_t a_new, const Candidate& b, size_t b_new) {
  uint64_t lhs = static_cast<uint64_t>(a_new) * b.tec.encoding_size();
  uint64_t rhs = static_cast<uint64_t>(b_new) * a.tec.encoding_size();
  if (lhs != rhs) return lhs > rhs;
  if (a_new != b_new) return a_new > b_new;
  int64_t a_box = pattern_bbox_area(a.tec.pattern);
  int64_t b_box = pattern_bbox_area(b.tec.pattern);
  if (a_box != b_box) return a_box < b_box;
  if (a.tec.pattern != b.tec.pattern) return a.tec.pattern < b.tec.pattern;
  return a.tec.translators < b.tec.translators;
}

void append_singletons(Cover* cover, const PointSet& leftover) {
  for (Point p : leftover) {
    cover->tecs.push_back(make_tec({p}, {Point{0, 0}}));
  }
}

}  // namespace

Cover cosiatec(const PointSet& points, const PatternFilter& filter) {
  Cover cover;
  PointSet remaining = points;
  while (!remaining.empty()) {
    std::vector<Candidate> candidates;
    for (Tec& tec : siatec(remaining)) {
      if (!filter.admits(tec.pattern.size())) continue;
      PointSet cov = tec.coverage();
      candidates.push_back({std::move(tec), std::move(cov)});
    }
    if (candidates.empty()) break;
    const Candidate* best = nullptr;
    size_t best_new = 0;
    for (const Candidate& c : candidates) {
      size_t n = c.coverage.size();  // coverage is inside `remaining` by construction
      if (!best || better_candidate(c, n, *best, best_new)) {
        best = &c;
        best_new = n;
      }
    }
    cover.tecs.push_back(best->tec);
    remaining = difference(remaining, best->coverage);
  }
  append_singletons(&cover, remaining);
  return cover;
}

Cover siatec_compress(const PointSet& points, const PatternFilter& filter) {
  Cover cover;
  if (points.empty()) return cover;

  std::vector<Candidate> candidates;
  for (Tec& tec : siatec(points)) {
    if (!filter.admits(tec.pattern.size())) continue;
    PointSet cov = tec.coverage();
    candidates.push_back({std::move(tec), std::move(cov)});
  }

  PointSet uncovered = points;
  while (!uncovered.empty()) {
    const Candidate* best = nullptr;
    size_t best_new = 0;
    for (const Candidate& c : candidates) {
      size_t n = new_point_count(c.coverage, uncovered);
      if (n == 0) continue;  // adds nothing, never select
      if (!best || better_candidate(c, n, *best, best_new)) {
        best = &c;
        best_new = n;
      }
    }
    // Once the best candidate pays less than one point per encoded term,
    // singletons (ratio exactly 1) encode the rest more tightly; stopping
    // here keeps the whole cover's compression ratio >= 1.
    if (!best || best_new < best->tec.encoding_size()) break;
    cover.tecs.push_back(best->tec);
    uncovered = difference(uncovered, best->coverage);
  }
  append_singletons(&cover, uncovered);
  return cover;
}

}  // namespace tonemorph
