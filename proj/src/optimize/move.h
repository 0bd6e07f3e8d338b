#pragma once

namespace tonemorph {

enum class Neighborhood { Change1, ChangeSlice, Swap };

const char* neighborhood_name(Neighborhood kind);

/// A candidate step: assign pitch_a to variable var_a, and, when var_b is
/// set, pitch_b to var_b in the same step. Swaps are the two-variable case
/// with the current values exchanged.
struct Move {
  Neighborhood kind = Neighborhood::Change1;
  int var_a = -1;
  int pitch_a = 0;
  int var_b = -1;
  int pitch_b = 0;
};

}  // namespace tonemorph
