#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/piece.h"
#include "core/rational.h"
#include "spiral/spelling.h"
#include "spiral/spiral.h"

namespace tonemorph {

/// One note's share of one time window, measured in sounding tatums.
struct SegmentContribution {
  int note = 0;
  int64_t onset = 0;  // the note's onset, for ordering the spelling chain
  double weight = 0;
};

/// Static segmentation of a piece into half-open windows of segment_beats
/// each. Which notes touch which window never depends on pitch, so a plan
/// can be reused while pitches change.
struct SegmentPlan {
  Rational segment_beats{1, 2};
  int64_t count = 0;
  /// Per window, contributions in ascending note order (the spelling order).
  std::vector<std::vector<SegmentContribution>> contributors;

  static SegmentPlan build(const Piece& piece, Rational segment_beats);
};

/// Builds one window's weighted helix cloud. Notes are spelled in score
/// order (onset, then sounding pitch); each note's context is the center of
/// effect of the cloud so far, seeded with the key position. `pitch_of[i]`
/// is the sounding MIDI pitch of note i, which may differ from the source
/// piece when an optimizer is reassigning pitches.
Cloud build_cloud(const std::vector<SegmentContribution>& contributions,
                  const std::vector<int>& pitch_of, const Speller& speller);

/// Clouds for every window of the piece under the given key.
std::vector<Cloud> segment_clouds(const Piece& piece, Rational segment_beats, const KeyRep& key,
                                  const SpiralParams& params = default_spiral_params());
/// Same, with the key estimated from the piece itself.
std::vector<Cloud> segment_clouds(const Piece& piece, Rational segment_beats);

// ---- the three tension measures ------------------------------------------

/// Largest pairwise distance in the cloud; 0 for empty or single-point.
double cloud_diameter(const Cloud& cloud);

/// Distance between consecutive centers of effect; 0 when either side is
/// empty. Carrying across empty windows is the profile's job.
double cloud_momentum(const Cloud& prev, const Cloud& current);

/// Distance from the cloud's center of effect to the key center; 0 when
/// the cloud is empty.
double tensile_strain(const Cloud& cloud, const KeyRep& key);

/// Per-measure values for a window sequence, with the carry rules applied:
/// an empty window keeps the last center of effect, so its momentum is 0
/// and its strain repeats; windows before the first note score 0.
struct MeasureVectors {
  std::vector<double> diameter, momentum, strain;
};
MeasureVectors measures_from_clouds(const std::vector<Cloud>& clouds, const KeyRep& key);

// ---- profiles --------------------------------------------------------------

struct TensionProfile {
  Rational segment_beats{1, 2};
  KeyRep key;
  std::vector<double> diameter, momentum, strain;

  size_t size() const { return diameter.size(); }
};

/// Full tension profile of a piece. Throws Error on an empty piece.
TensionProfile profile(const Piece& piece, Rational segment_beats,
                       const SpiralParams& params = default_spiral_params());

/// Same, but against a caller-supplied key instead of the piece's own
/// estimate. Lets two pieces (or two pitch assignments of one rhythm) be
/// profiled in a shared key context so their strain values compare.
TensionProfile profile(const Piece& piece, Rational segment_beats, const KeyRep& key,
                       const SpiralParams& params = default_spiral_params());

enum class DistanceMetric { L1, L2 };

/// Weighted distance between equal-length profiles: per measure either the
/// sum of absolute differences (L1) or the root of summed squares (L2),
/// then combined with `weights` (diameter, momentum, strain). Throws Error
/// naming the measure and lengths on a size mismatch.
double profile_distance(const TensionProfile& a, const TensionProfile& b,
                        const std::array<double, 3>& weights, DistanceMetric metric);

/// CSV with header `segment,onset_beats,diameter,momentum,strain`.
std::string profile_to_csv(const TensionProfile& profile);

/// Parses profile_to_csv output (or any CSV with that header). Only the
/// measure columns are read back; grid fields keep their defaults.
TensionProfile parse_profile_csv(const std::string& text);

}  // namespace tonemorph
