#pragma once

#include <cstdint>
#include <vector>

#include "core/piece.h"

namespace tonemorph {

struct MidiReadOptions {
  /// Grid resolution for quantizing tick times. 0 picks the default
  /// eighth-note grid (2 tatums per quarter-note beat).
  int tatums_per_beat = 0;
};

/// Reads a standard MIDI file, format 0 or 1. Note-on with velocity 0 is a
/// note-off. Tick times quantize to the tatum grid (ties round down); zero
/// lengths clamp to one tatum. Tracks come from channels (format 0) or from
/// note-bearing chunks in file order (format 1), renumbered densely from 0.
/// The first time-signature meta sets beats_per_bar, the first track-name
/// meta sets the title. Throws ParseError with a byte offset on malformed
/// bytes, on SMPTE division, and on note-on/note-off pairing violations
/// (the message names the pitch and tick).
Piece parse_midi(const std::vector<uint8_t>& bytes, const MidiReadOptions& options = {});

/// Writes format 1, one chunk per distinct track value (ascending), PPQN =
/// 120 * tatums_per_beat, fixed 120 bpm tempo. Same Piece, same bytes.
std::vector<uint8_t> write_midi(const Piece& piece);

}  // namespace tonemorph
