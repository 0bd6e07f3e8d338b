#include "core/piece.h"

#include <algorithm>

#include "core/errors.h"

namespace tonemorph {

int64_t Piece::length_tatums() const {
  int64_t end = 0;
  for (const NoteEvent& n : notes) end = std::max(end, n.end());
  return end;
}

int Piece::track_count() const {
  int hi = -1;
  for (const NoteEvent& n : notes) hi = std::max(hi, n.track);
  return hi + 1;
}

void Piece::sort_notes() { std::sort(notes.begin(), notes.end(), note_less); }

void Piece::validate() const {
  if (tatums_per_beat < 1) throw Error("tatums_per_beat must be >= 1");
  if (beats_per_bar.num <= 0) throw Error("beats_per_bar must be positive");
  for (size_t i = 0; i < notes.size(); ++i) {
    const NoteEvent& n = notes[i];
    if (n.onset < 0) throw Error("note " + std::to_string(i) + " has negative onset");
    if (n.duration < 1) throw Error("note " + std::to_string(i) + " has duration < 1");
    if (n.midi_pitch < 0 || n.midi_pitch > 127)
      throw Error("note " + std::to_string(i) + " pitch out of 0..127");
    if (n.velocity < 0 || n.velocity > 127)
      throw Error("note " + std::to_string(i) + " velocity out of 0..127");
    if (n.track < 0) throw Error("note " + std::to_string(i) + " has negative track");
    if (i > 0 && note_less(n, notes[i - 1]))
      throw Error("notes not in canonical order at index " + std::to_string(i));
  }
}

std::vector<TimeSlice> slices(const Piece& piece) {
  std::vector<TimeSlice> out;
  for (int i = 0; i < static_cast<int>(piece.notes.size()); ++i) {
    if (out.empty() || out.back().onset != piece.notes[i].onset) {
      out.push_back(TimeSlice{piece.notes[i].onset, {}});
    }
    out.back().note_indices.push_back(i);
  }
  return out;
}

}  // namespace tonemorph
