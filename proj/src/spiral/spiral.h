#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "core/errors.h"

namespace tonemorph {

/// Geometry and blend constants for the pitch helix. One full turn of the
/// helix is four fifths; with the default radius and height the distance
/// between a pitch and its major third above equals the distance between
/// fifth neighbours, which is what makes triads compact.
struct SpiralParams {
  double radius = 1.0;
  double height = 0.3651483716701107;  // sqrt(2/15), rise per fifth step
  /// Chord blend: root, fifth, third.
  std::array<double, 3> chord_weights{0.536, 0.274, 0.190};
  /// Key blend: tonic, dominant, subdominant chord centers.
  std::array<double, 3> key_weights{0.516, 0.315, 0.168};
  /// Minor keys hear the dominant mostly major and the subdominant mostly
  /// minor; these give the major-V and minor-iv shares.
  double dominant_major_share = 0.75;
  double subdominant_minor_share = 0.75;
  /// Fifth indices are kept within [-max_fifths, max_fifths].
  int max_fifths = 35;
};

const SpiralParams& default_spiral_params();

struct SpiralPoint {
  double x = 0, y = 0, z = 0;

  friend SpiralPoint operator+(SpiralPoint a, SpiralPoint b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend SpiralPoint operator-(SpiralPoint a, SpiralPoint b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend SpiralPoint operator*(double s, SpiralPoint p) { return {s * p.x, s * p.y, s * p.z}; }
};

inline double distance(SpiralPoint a, SpiralPoint b) {
  double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// A pitch name as a position on the line of fifths (C=0, G=1, F=-1, ...)
/// plus a sounding octave. The octave never moves helix positions; it is
/// kept so spelled notes can round-trip to MIDI numbers.
struct SpelledPitch {
  int fifths = 0;
  int octave = 4;

  int pitch_class() const { return ((fifths * 7) % 12 + 12) % 12; }
  int midi() const { return (octave + 1) * 12 + pitch_class(); }

  friend bool operator==(SpelledPitch a, SpelledPitch b) {
    return a.fifths == b.fifths && a.octave == b.octave;
  }
};

enum class Mode { Major, Minor };

std::string mode_name(Mode mode);

/// Helix position of a pitch name. Throws Error when |fifths| exceeds
/// params.max_fifths.
SpiralPoint pitch_position(int fifths, const SpiralParams& params = default_spiral_params());

/// Chord centers: blends of root, fifth and third positions.
SpiralPoint major_chord_position(int root_fifths,
                                 const SpiralParams& params = default_spiral_params());
SpiralPoint minor_chord_position(int root_fifths,
                                 const SpiralParams& params = default_spiral_params());

struct KeyRep {
  int tonic_fifths = 0;
  Mode mode = Mode::Major;
  SpiralPoint position;

  friend bool operator==(const KeyRep& a, const KeyRep& b) {
    return a.tonic_fifths == b.tonic_fifths && a.mode == b.mode;
  }
};

/// Key center: blend of tonic, dominant and subdominant chord centers.
/// Minor keys mix chord qualities per dominant_major_share and
/// subdominant_minor_share; weights are renormalized to sum to one.
KeyRep key_position(int tonic_fifths, Mode mode,
                    const SpiralParams& params = default_spiral_params());

/// One weighted point of a sounding cloud.
struct WeightedPoint {
  SpiralPoint position;
  double weight = 1.0;
};

/// Weighted set of helix points for one time window.
struct Cloud {
  std::vector<WeightedPoint> points;

  bool empty() const { return points.empty(); }
  double total_weight() const;
};

/// Weight-normalized centroid. Throws Error on an empty cloud or
/// non-positive total weight.
SpiralPoint center_of_effect(const Cloud& cloud);

/// Closest key center to `ce` among both modes of tonics within
/// `radius` fifths of `center_fifths`. Ties prefer the smaller |tonic|,
/// then the smaller tonic, then major.
KeyRep nearest_key(SpiralPoint ce, int center_fifths, int radius = 7,
                   const SpiralParams& params = default_spiral_params());

}  // namespace tonemorph
