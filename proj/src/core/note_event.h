#pragma once

#include <cstdint>
#include <tuple>

namespace tonemorph {

/// One note. Time is integer tatums (the analysis grid); `track` is a
/// voice/instrument lane used for range constraints and MIDI output.
struct NoteEvent {
  int64_t onset = 0;
  int64_t duration = 1;  // > 0
  int midi_pitch = 60;   // 0..127
  int velocity = 64;     // 1..127
  int track = 0;

  int64_t end() const { return onset + duration; }

  friend bool operator==(const NoteEvent& a, const NoteEvent& b) {
    return a.onset == b.onset && a.duration == b.duration && a.midi_pitch == b.midi_pitch &&
           a.velocity == b.velocity && a.track == b.track;
  }
  friend bool operator!=(const NoteEvent& a, const NoteEvent& b) { return !(a == b); }
};

/// Canonical score order: onset, then pitch, then track, then the rest.
inline bool note_less(const NoteEvent& a, const NoteEvent& b) {
  return std::tie(a.onset, a.midi_pitch, a.track, a.duration, a.velocity) <
         std::tie(b.onset, b.midi_pitch, b.track, b.duration, b.velocity);
}

}  // namespace tonemorph
