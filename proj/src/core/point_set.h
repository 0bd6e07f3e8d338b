#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "core/piece.h"

namespace tonemorph {

/// A point in the (onset, pitch) plane. Also used as a translation vector.
struct Point {
  int64_t time = 0;
  int64_t pitch = 0;

  friend bool operator==(Point a, Point b) { return a.time == b.time && a.pitch == b.pitch; }
  friend bool operator!=(Point a, Point b) { return !(a == b); }
  friend bool operator<(Point a, Point b) {
    return std::tie(a.time, a.pitch) < std::tie(b.time, b.pitch);
  }
  friend Point operator+(Point a, Point b) { return {a.time + b.time, a.pitch + b.pitch}; }
  friend Point operator-(Point a, Point b) { return {a.time - b.time, a.pitch - b.pitch}; }
};

/// Sorted, duplicate-free list of points. Helpers below maintain the invariant.
using PointSet = std::vector<Point>;

/// Sorts and removes duplicates.
PointSet make_point_set(std::vector<Point> points);

bool contains(const PointSet& set, Point p);

/// Set difference a \ b (both sorted).
PointSet difference(const PointSet& a, const PointSet& b);

/// Set union (both sorted).
PointSet set_union(const PointSet& a, const PointSet& b);

PointSet translate(const PointSet& set, Point v);

/// A piece flattened to geometry. Notes that share (onset, pitch) collapse
/// to one point; `note_indices[i]` lists the notes behind `points[i]`.
struct ScorePointSet {
  PointSet points;
  std::vector<std::vector<int>> note_indices;

  int point_of(Point p) const;  // index in points, -1 if absent
};

ScorePointSet to_pointset(const Piece& piece);

}  // namespace tonemorph
