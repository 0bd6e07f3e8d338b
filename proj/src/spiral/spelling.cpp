#include "spiral/spelling.h"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <tuple>

namespace tonemorph {
namespace {

int pitch_class_of_fifths(int fifths) { return ((fifths * 7) % 12 + 12) % 12; }

int octave_for(int midi_pitch) { return midi_pitch / 12 - 1; }

}  // namespace

Speller::Speller(const KeyRep& key, const SpiralParams& params) : key_(key) {
  for (int f = key.tonic_fifths - kSpellingWindow; f <= key.tonic_fifths + kSpellingWindow; ++f) {
    if (std::abs(f) > params.max_fifths) continue;
    by_class_[pitch_class_of_fifths(f)].push_back({f, pitch_position(f, params)});
  }
  for (int pc = 0; pc < 12; ++pc) {
    if (by_class_[pc].empty()) throw Error("spelling window has no candidate for a pitch class");
  }
}

Speller::SpelledPoint Speller::spell_point(int midi_pitch, const SpiralPoint& context_ce) const {
  int pc = ((midi_pitch % 12) + 12) % 12;
  const auto& row = by_class_[pc];
  auto rank = [&](int fifths) {
    return std::make_tuple(std::abs(fifths - key_.tonic_fifths), std::abs(fifths), fifths);
  };
  const Candidate* best = &row[0];
  double best_dist = distance(row[0].position, context_ce);
  for (size_t i = 1; i < row.size(); ++i) {
    double d = distance(row[i].position, context_ce);
    if (d < best_dist || (d == best_dist && rank(row[i].fifths) < rank(best->fifths))) {
      best = &row[i];
      best_dist = d;
    }
  }
  return {SpelledPitch{best->fifths, octave_for(midi_pitch)}, best->position};
}

SpelledPitch Speller::operator()(int midi_pitch, const SpiralPoint& context_ce) const {
  return spell_point(midi_pitch, context_ce).pitch;
}

SpelledPitch spell(int midi_pitch, const SpiralPoint& context_ce, const KeyRep& key,
                   const SpiralParams& params) {
  Speller speller(key, params);
  return speller(midi_pitch, context_ce);
}

KeyRep global_key(const Piece& piece, const SpiralParams& params) {
  if (piece.empty()) throw Error("key of an empty piece");

  double class_weight[12] = {0};
  for (const NoteEvent& n : piece.notes) {
    class_weight[((n.midi_pitch % 12) + 12) % 12] += static_cast<double>(n.duration);
  }

  // Choose the 12-wide fifths window that packs the sounding classes
  // tightest (least weighted variance along the line of fifths). The
  // statistics are computed in window-local coordinates so that windows
  // twelve fifths apart, which see the same classes at shifted names, get
  // bit-identical variances; the tie then resolves toward the spelling
  // whose weighted mean lies nearest the naturals. Any real key signature
  // sits well inside this offset range.
  int best_offset = 0;
  double best_variance = std::numeric_limits<double>::infinity();
  double best_mean = 0;
  for (int offset = -18; offset <= 7; ++offset) {
    double total = 0, mean_local = 0;
    for (int x = 0; x < 12; ++x) {
      double w = class_weight[pitch_class_of_fifths(offset + x)];
      total += w;
      mean_local += w * x;
    }
    mean_local /= total;
    double variance = 0;
    for (int x = 0; x < 12; ++x) {
      double w = class_weight[pitch_class_of_fifths(offset + x)];
      variance += w * (x - mean_local) * (x - mean_local);
    }
    double mean = mean_local + offset;
    if (variance < best_variance ||
        (variance == best_variance &&
         std::make_pair(std::abs(mean), offset) <
             std::make_pair(std::abs(best_mean), best_offset))) {
      best_variance = variance;
      best_offset = offset;
      best_mean = mean;
    }
  }

  Cloud cloud;
  for (int f = best_offset; f < best_offset + 12; ++f) {
    double w = class_weight[pitch_class_of_fifths(f)];
    if (w > 0) cloud.points.push_back({pitch_position(f, params), w});
  }
  SpiralPoint ce = center_of_effect(cloud);
  int center = static_cast<int>(std::llround(best_mean));
  return nearest_key(ce, center, 7, params);
}

}  // namespace tonemorph
