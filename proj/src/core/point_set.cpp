#include "core/point_set.h"

#include <algorithm>

namespace tonemorph {

PointSet make_point_set(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

bool contains(const PointSet& set, Point p) {
  return std::binary_search(set.begin(), set.end(), p);
}

PointSet difference(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet translate(const PointSet& set, Point v) {
  PointSet out = set;
  for (Point& p : out) p = p + v;
  return out;  // order is preserved under translation
}

int ScorePointSet::point_of(Point p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p) return -1;
  return static_cast<int>(it - points.begin());
}

ScorePointSet to_pointset(const Piece& piece) {
  ScorePointSet out;
  for (int i = 0; i < static_cast<int>(piece.notes.size()); ++i) {
    Point p{piece.notes[i].onset, piece.notes[i].midi_pitch};
    if (!out.points.empty() && out.points.back() == p) {
      out.note_indices.back().push_back(i);
    } else {
      out.points.push_back(p);
      out.note_indices.push_back({i});
    }
  }
  // Canonical note order sorts by (onset, pitch) first, so points arrive sorted
  // unless the piece is unsorted; normalize defensively.
  if (!std::is_sorted(out.points.begin(), out.points.end())) {
    std::vector<size_t> order(out.points.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return out.points[a] < out.points[b]; });
    ScorePointSet sorted;
    for (size_t idx : order) {
      if (!sorted.points.empty() && sorted.points.back() == out.points[idx]) {
        auto& dst = sorted.note_indices.back();
        dst.insert(dst.end(), out.note_indices[idx].begin(), out.note_indices[idx].end());
      } else {
        sorted.points.push_back(out.points[idx]);
        sorted.note_indices.push_back(out.note_indices[idx]);
      }
    }
    return sorted;
  }
  return out;
}

}  // namespace tonemorph
