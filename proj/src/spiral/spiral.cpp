#include "spiral/spiral.h"

#include <cstdlib>
#include <tuple>

namespace tonemorph {

const SpiralParams& default_spiral_params() {
  static const SpiralParams params;
  return params;
}

std::string mode_name(Mode mode) { return mode == Mode::Major ? "major" : "minor"; }

SpiralPoint pitch_position(int fifths, const SpiralParams& params) {
  if (std::abs(fifths) > params.max_fifths)
    throw Error("fifths index " + std::to_string(fifths) + " outside +/-" +
                std::to_string(params.max_fifths));
  // Quarter turn per fifth: k=0 at (0, r), k=1 at (r, 0), rising by height.
  double angle = fifths * (M_PI / 2.0);
  return {params.radius * std::sin(angle), params.radius * std::cos(angle),
          fifths * params.height};
}

SpiralPoint major_chord_position(int root_fifths, const SpiralParams& params) {
  const auto& w = params.chord_weights;
  return w[0] * pitch_position(root_fifths, params) +
         w[1] * pitch_position(root_fifths + 1, params) +
         w[2] * pitch_position(root_fifths + 4, params);
}

SpiralPoint minor_chord_position(int root_fifths, const SpiralParams& params) {
  const auto& w = params.chord_weights;
  return w[0] * pitch_position(root_fifths, params) +
         w[1] * pitch_position(root_fifths + 1, params) +
         w[2] * pitch_position(root_fifths - 3, params);
}

KeyRep key_position(int tonic_fifths, Mode mode, const SpiralParams& params) {
  const auto& w = params.key_weights;
  double norm = w[0] + w[1] + w[2];
  if (norm <= 0) throw Error("key weights must have positive sum");
  SpiralPoint pos;
  if (mode == Mode::Major) {
    pos = w[0] * major_chord_position(tonic_fifths, params) +
          w[1] * major_chord_position(tonic_fifths + 1, params) +
          w[2] * major_chord_position(tonic_fifths - 1, params);
  } else {
    double a = params.dominant_major_share;
    double b = params.subdominant_minor_share;
    SpiralPoint dominant = a * major_chord_position(tonic_fifths + 1, params) +
                           (1.0 - a) * minor_chord_position(tonic_fifths + 1, params);
    SpiralPoint subdominant = b * minor_chord_position(tonic_fifths - 1, params) +
                              (1.0 - b) * major_chord_position(tonic_fifths - 1, params);
    pos = w[0] * minor_chord_position(tonic_fifths, params) + w[1] * dominant +
          w[2] * subdominant;
  }
  return {tonic_fifths, mode, (1.0 / norm) * pos};
}

double Cloud::total_weight() const {
  double sum = 0;
  for (const WeightedPoint& p : points) sum += p.weight;
  return sum;
}

SpiralPoint center_of_effect(const Cloud& cloud) {
  if (cloud.empty()) throw Error("center of effect of an empty cloud");
  SpiralPoint sum;
  double total = 0;
  for (const WeightedPoint& p : cloud.points) {
    sum = sum + p.weight * p.position;
    total += p.weight;
  }
  if (total <= 0) throw Error("cloud weights must have positive sum");
  return (1.0 / total) * sum;
}

KeyRep nearest_key(SpiralPoint ce, int center_fifths, int radius, const SpiralParams& params) {
  bool have = false;
  KeyRep best;
  double best_dist = 0;
  for (int tonic = center_fifths - radius; tonic <= center_fifths + radius; ++tonic) {
    // Key chord tones span [tonic-4, tonic+5]; skip tonics whose chords
    // would leave the helix bound.
    if (std::abs(tonic) + 5 > params.max_fifths) continue;
    for (Mode mode : {Mode::Major, Mode::Minor}) {
      KeyRep key = key_position(tonic, mode, params);
      double d = distance(ce, key.position);
      bool better;
      if (!have) {
        better = true;
      } else if (d != best_dist) {
        better = d < best_dist;
      } else {
        auto rank = [](const KeyRep& k) {
          return std::make_tuple(std::abs(k.tonic_fifths), k.tonic_fifths,
                                 k.mode == Mode::Major ? 0 : 1);
        };
        better = rank(key) < rank(best);
      }
      if (better) {
        have = true;
        best = key;
        best_dist = d;
      }
    }
  }
  if (!have) throw Error("no key candidates inside helix bound");
  return best;
}

}  // namespace tonemorph
