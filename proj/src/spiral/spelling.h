#pragma once

#include "core/piece.h"
#include "spiral/spiral.h"

namespace tonemorph {

/// Half-width of the fifths window searched when spelling a MIDI pitch.
/// 15 fifths to either side of the tonic covers every note name with up to
/// a double accidental, so each pitch class has two or three candidates.
inline constexpr int kSpellingWindow = 15;

/// Picks the note name for a MIDI pitch: among candidates of the right
/// pitch class near the key tonic, take the one whose helix position is
/// closest to `context_ce`. Ties prefer fewer fifths from the tonic, then
/// the plainer name. Use the key's own position as context when nothing
/// has sounded yet.
SpelledPitch spell(int midi_pitch, const SpiralPoint& context_ce, const KeyRep& key,
                   const SpiralParams& params = default_spiral_params());

/// Spelling resolver with the per-key candidate table precomputed; same
/// results as spell(), cheaper in inner loops.
class Speller {
 public:
  struct SpelledPoint {
    SpelledPitch pitch;
    SpiralPoint position;
  };

  Speller(const KeyRep& key, const SpiralParams& params = default_spiral_params());

  SpelledPitch operator()(int midi_pitch, const SpiralPoint& context_ce) const;
  /// Spelling plus its helix position, for callers that need both.
  SpelledPoint spell_point(int midi_pitch, const SpiralPoint& context_ce) const;
  const KeyRep& key() const { return key_; }

 private:
  struct Candidate {
    int fifths;
    SpiralPoint position;
  };
  KeyRep key_;
  std::vector<Candidate> by_class_[12];
};

/// Whole-piece key estimate. Duration-weighted pitch classes are first
/// given fifths positions by the 12-wide window that packs them tightest
/// (least weighted variance along the line of fifths), then the weighted
/// center of effect picks the nearest key. Throws Error on an empty piece.
KeyRep global_key(const Piece& piece, const SpiralParams& params = default_spiral_params());

}  // namespace tonemorph
