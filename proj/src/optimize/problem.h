#pragma once

#include <map>
#include <vector>

#include "core/piece.h"
#include "core/point_set.h"
#include "core/rng.h"
#include "patterns/tec.h"
#include "tension/tension.h"

namespace tonemorph {

struct TrackRange {
  int low = 0;
  int high = 127;

  bool contains(int pitch) const { return pitch >= low && pitch <= high; }
  friend bool operator==(TrackRange a, TrackRange b) { return a.low == b.low && a.high == b.high; }
};

struct MorphOptions {
  std::array<double, 3> weights{1.0, 1.0, 1.0};  // diameter, momentum, strain
  double penalty = 1e6;                          // per violated fixed pitch
  Rational segment_beats{1, 2};
  DistanceMetric metric = DistanceMetric::L1;
  SpiralParams spiral{};
};

/// Links every point of a pattern cover: point i and point i+v are the same
/// sounding shape, so their pitches move together. Returns, per point, the
/// index of its class representative (the lexicographically smallest point
/// reachable through any chain of translators). Throws Error when the cover
/// names points outside the set or leaves points uncovered.
std::vector<int> point_classes(const PointSet& points, const Cover& cover);

/// One value per free variable, in variable order.
struct Assignment {
  std::vector<int> pitches;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.pitches == b.pitches;
  }
};

/// The pitch assignment problem: choose one pitch per free variable so the
/// realized piece tracks a target tension profile, while every pattern
/// occurrence stays an exact transposition of its source and every note
/// stays inside its track's template range. Patterns and ranges are hard
/// (baked into variables and domains); fixed pitches are soft (penalty).
class MorphProblem {
 public:
  const Piece& source() const { return source_; }
  const Cover& cover() const { return cover_; }
  const TensionProfile& target() const { return target_; }
  const MorphOptions& options() const { return options_; }
  const KeyRep& key() const { return key_; }
  const SegmentPlan& plan() const { return plan_; }
  const Speller& speller() const { return speller_; }
  const std::map<int, int>& fixed_pitches() const { return fixed_; }

  /// Template pitch range per track, the hard range constraint.
  const std::vector<TrackRange>& track_ranges() const { return track_ranges_; }

  size_t free_count() const { return domains_.size(); }
  const std::vector<TrackRange>& domains() const { return domains_; }
  int variable_of_note(int note) const { return note_variable_[static_cast<size_t>(note)]; }
  /// realized pitch of note = assignment[variable] + delta
  int delta_of_note(int note) const { return note_delta_[static_cast<size_t>(note)]; }
  const std::vector<int>& notes_of_variable(int var) const {
    return variable_notes_[static_cast<size_t>(var)];
  }

  /// Chronological slices of the template and the variables rooted in each.
  const std::vector<TimeSlice>& slice_table() const { return slices_; }
  const std::vector<std::vector<int>>& variables_by_slice() const { return slice_variables_; }

  /// Segments whose cloud contains at least one note of the variable.
  const std::vector<std::vector<int>>& segments_of_variable() const { return variable_segments_; }

  /// Template pitches as an assignment (the identity morph). Always feasible.
  Assignment template_assignment() const;

 private:
  friend MorphProblem build_problem(Piece source, Cover cover, TensionProfile target,
                                    std::map<int, int> fixed, MorphOptions options);

  Piece source_;
  Cover cover_;
  TensionProfile target_;
  MorphOptions options_;
  std::map<int, int> fixed_;
  KeyRep key_;
  SegmentPlan plan_;
  Speller speller_{KeyRep{}};
  std::vector<TrackRange> track_ranges_;
  std::vector<TrackRange> domains_;
  std::vector<int> note_variable_;
  std::vector<int> note_delta_;
  std::vector<std::vector<int>> variable_notes_;
  std::vector<TimeSlice> slices_;
  std::vector<std::vector<int>> slice_variables_;
  std::vector<std::vector<int>> variable_segments_;
};

/// Validates the cover against the template, derives variables from the
/// translator links, and intersects every linked note's admissible range
/// into each variable's domain. Throws Error on an invalid cover or a
/// target profile of the wrong length, InfeasibleError when some variable
/// has an empty domain.
MorphProblem build_problem(Piece source, Cover cover, TensionProfile target,
                           std::map<int, int> fixed, MorphOptions options);

/// Realized MIDI pitch per template note index.
std::vector<int> realized_pitches(const MorphProblem& problem, const Assignment& assignment);

/// The template with assigned pitches, notes re-sorted canonically.
Piece realize(const MorphProblem& problem, const Assignment& assignment);

/// Weighted tension distance to the target plus penalty times the number of
/// violated fixed pitches. Full recomputation; the evaluator reproduces
/// this value incrementally.
double objective(const MorphProblem& problem, const Assignment& assignment);

/// Uniform independent draw from every variable's domain.
Assignment random_feasible(const MorphProblem& problem, Rng& rng);

}  // namespace tonemorph
