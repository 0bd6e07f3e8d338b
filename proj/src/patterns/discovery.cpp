#include "patterns/discovery.h"

#include <algorithm>
#include <set>

namespace tonemorph {

std::map<Point, PointSet> sia(const PointSet& points) {
  std::map<Point, PointSet> mtps;
  // Sorted input makes every p[j] - p[i] with i < j lexicographically
  // positive, and each pattern collects in sorted order.
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      mtps[points[j] - points[i]].push_back(points[i]);
    }
  }
  return mtps;
}

std::vector<Tec> siatec(const PointSet& points) {
  std::vector<Tec> tecs;
  if (points.empty()) return tecs;
  if (points.size() == 1) {
    tecs.push_back(make_tec(points, {Point{0, 0}}));
    return tecs;
  }

  std::map<Point, PointSet> mtps = sia(points);
  std::set<PointSet> seen_shapes;
  for (const auto& [vec, pattern] : mtps) {
    PointSet shape = translate(pattern, Point{0, 0} - pattern.front());
    if (!seen_shapes.insert(shape).second) continue;

    // Every vector that maps the whole pattern into the set. Candidates are
    // exactly the offsets landing pattern.front() on some set point.
    std::vector<Point> translators;
    for (Point q : points) {
      Point offset = q - pattern.front();
      bool fits = true;
      for (Point p : pattern) {
        if (!contains(points, p + offset)) {
          fits = false;
          break;
        }
      }
      if (fits) translators.push_back(offset);
    }
    // Anchor at the leftmost occurrence so the identity translator leads.
    Point shift = translators.front();
    for (Point& v : translators) v = v - shift;
    tecs.push_back(make_tec(translate(pattern, shift), std::move(translators)));
  }

  std::sort(tecs.begin(), tecs.end(), [](const Tec& a, const Tec& b) {
    if (a.pattern != b.pattern) return a.pattern < b.pattern;
    return a.translators < b.translators;
  });
  return tecs;
}

}  // namespace tonemorph
