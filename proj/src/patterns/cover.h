#pragma once

#include <cstddef>

#include "core/point_set.h"
#include "patterns/tec.h"

namespace tonemorph {

/// Hard limits on pattern size during TEC selection. max_len 0 means
/// unbounded. Points left over when nothing admissible remains are encoded
/// as single-point TECs regardless of min_len.
struct PatternFilter {
  size_t min_len = 1;
  size_t max_len = 0;

  bool admits(size_t n) const { return n >= min_len && (max_len == 0 || n <= max_len); }
};

/// Iterative best-TEC selection: pick the best TEC of the remaining points,
/// remove its coverage, repeat. TEC coverages partition the input. "Best"
/// is highest compression ratio over the remaining points, then most new
/// points, then the tighter pattern bounding box, then lexicographic
/// pattern order.
Cover cosiatec(const PointSet& points, const PatternFilter& filter = {});

/// One discovery pass, then greedy selection by the same quality order,
/// recomputed against what is still uncovered; TECs may overlap but each
/// selected one must cover something new. Covers the whole input.
Cover siatec_compress(const PointSet& points, const PatternFilter& filter = {});

}  // namespace tonemorph
