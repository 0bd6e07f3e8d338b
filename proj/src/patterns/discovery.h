#pragma once

#include <map>
#include <vector>

#include "core/point_set.h"
#include "patterns/tec.h"

namespace tonemorph {

/// All maximal translatable patterns of the set: for every lexicographically
/// positive difference vector v, the points p with p+v also in the set.
/// Keys ascend; each pattern is sorted. O(n^2) space.
std::map<Point, PointSet> sia(const PointSet& points);

/// TECs of all distinct MTP shapes. Each MTP pattern is completed with its
/// full translator set (every vector mapping it into the set), duplicate
/// shapes are merged, and the pattern is anchored at its leftmost
/// occurrence so translators start with v(0,0). A single-point set yields
/// its one single-point TEC. Result is sorted for determinism.
std::vector<Tec> siatec(const PointSet& points);

}  // namespace tonemorph
