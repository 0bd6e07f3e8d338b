#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/point_set.h"

namespace tonemorph {

/// A translational equivalence class: a point pattern plus every vector
/// that maps it into the analyzed set. Translators always include the
/// identity v(0,0) and are sorted, as is the pattern.
struct Tec {
  PointSet pattern;
  std::vector<Point> translators;

  /// Union of the pattern under every translator.
  PointSet coverage() const;
  /// Cost of writing this TEC down: pattern points plus nonzero translators.
  size_t encoding_size() const { return pattern.size() + translators.size() - 1; }

  friend bool operator==(const Tec& a, const Tec& b) {
    return a.pattern == b.pattern && a.translators == b.translators;
  }
};

/// Normalizes (sorts, dedupes) and checks the identity translator.
Tec make_tec(PointSet pattern, std::vector<Point> translators);

/// Text form: T(P(p(t,p),...),V(v(0,0),v(t,p),...)) with sorted members and
/// no whitespace.
std::string encode_tec(const Tec& tec);

/// Inverse of encode_tec. Accepts arbitrary whitespace between tokens and
/// unsorted members (they are canonicalized). Throws ParseError with a
/// character offset on bad syntax, and on a missing identity translator.
Tec decode_tec(std::string_view text);

/// A set of TECs covering an analyzed point set. `residual` holds points no
/// TEC covers; the algorithms here always leave it empty, encoding stray
/// points as single-point TECs instead.
struct Cover {
  std::vector<Tec> tecs;
  PointSet residual;

  PointSet coverage() const;
};

/// Covered points divided by encoding size; 1.0 when nothing is encoded.
double compression_ratio(const Tec& tec);
double compression_ratio(const Cover& cover);

}  // namespace tonemorph
