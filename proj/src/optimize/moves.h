#pragma once

#include <functional>

#include "core/rng.h"
#include "optimize/move.h"
#include "optimize/problem.h"

namespace tonemorph {

/// Nominal full-neighborhood sizes used to order the neighborhoods by cost
/// (n notes, m voices, p pitch options): one-note change m*n*p, slice pair
/// change p^2, pairwise swap (n*m - 1)!.
double theoretical_neighborhood_size(Neighborhood kind, double n, double m, double p);

/// Streams candidate moves of one neighborhood anchored at a slice, in
/// first-descent order, calling `visit` per candidate until it returns true
/// (move taken). Returns whether a candidate was taken.
///
/// change1: every other in-range pitch for each variable rooted here.
/// changeSlice: all in-range pitch pairs (minus the current pair) for two
///   distinct variables of this slice drawn with the run RNG; with fewer
///   than two variables it degenerates to change1, with none it is empty.
/// swap: exchange pitches between a variable rooted here and any later
///   variable, when each value fits the other's domain and they differ.
///
/// Only free variables move; notes derived through pattern translators
/// follow their variable and are never candidates themselves.
bool enumerate_moves(const MorphProblem& problem, Neighborhood kind, size_t slice,
                     const Assignment& current, Rng& rng,
                     const std::function<bool(const Move&)>& visit);

}  // namespace tonemorph
