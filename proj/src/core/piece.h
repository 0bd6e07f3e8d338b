#pragma once

#include <string>
#include <vector>

#include "core/note_event.h"
#include "core/rational.h"

namespace tonemorph {

/// A score: notes on an integer tatum grid plus the grid's meaning.
/// `tatums_per_beat` says how many grid steps make one beat (beat = quarter
/// note); `beats_per_bar` is kept for bar-aware rendering only.
struct Piece {
  std::vector<NoteEvent> notes;  // canonical order, see note_less
  int tatums_per_beat = 2;
  Rational beats_per_bar{4, 1};
  std::string title;

  bool empty() const { return notes.empty(); }
  /// End of the last sounding note, in tatums. 0 for an empty piece.
  int64_t length_tatums() const;
  Rational length_beats() const { return Rational(length_tatums(), tatums_per_beat); }
  /// 1 + the largest track number (0 when empty).
  int track_count() const;

  void sort_notes();
  /// Throws Error if any invariant fails (ordering, ranges, grid sanity).
  void validate() const;
};

/// All notes sharing one onset, in ascending pitch order.
struct TimeSlice {
  int64_t onset = 0;
  std::vector<int> note_indices;
};

/// Partition of all note indices by onset, ascending. Every index appears
/// exactly once.
std::vector<TimeSlice> slices(const Piece& piece);

}  // namespace tonemorph
