#include "optimize/moves.h"

#include <cmath>

namespace tonemorph {

const char* neighborhood_name(Neighborhood kind) {
  switch (kind) {
    case Neighborhood::Change1:
      return "change1";
    case Neighborhood::ChangeSlice:
      return "changeSlice";
    case Neighborhood::Swap:
      return "swap";
  }
  return "?";
}

double theoretical_neighborhood_size(Neighborhood kind, double n, double m, double p) {
  switch (kind) {
    case Neighborhood::Change1:
      return m * n * p;
    case Neighborhood::ChangeSlice:
      return p * p;
    case Neighborhood::Swap:
      return std::tgamma(n * m);  // (n*m - 1)!
  }
  return 0;
}

namespace {

bool change1_on_variable(const MorphProblem& problem, int var, const Assignment& current,
                         const std::function<bool(const Move&)>& visit, Neighborhood label) {
  const TrackRange& dom = problem.domains()[static_cast<size_t>(var)];
  int cur = current.pitches[static_cast<size_t>(var)];
  for (int pitch = dom.low; pitch <= dom.high; ++pitch) {
    if (pitch == cur) continue;
    Move move{label, var, pitch, -1, 0};
    if (visit(move)) return true;
  }
  return false;
}

}  // namespace

bool enumerate_moves(const MorphProblem& problem, Neighborhood kind, size_t slice,
                     const Assignment& current, Rng& rng,
                     const std::function<bool(const Move&)>& visit) {
  const std::vector<int>& vars = problem.variables_by_slice()[slice];
  if (vars.empty()) return false;

  switch (kind) {
    case Neighborhood::Change1: {
      for (int var : vars) {
        if (change1_on_variable(problem, var, current, visit, Neighborhood::Change1)) return true;
      }
      return false;
    }

    case Neighborhood::ChangeSlice: {
      if (vars.size() < 2) {
        // Degenerate slice: fall back to single-note changes here.
        for (int var : vars) {
          if (change1_on_variable(problem, var, current, visit, Neighborhood::ChangeSlice))
            return true;
        }
        return false;
      }
      // Two distinct variables of this slice, drawn fresh each visit.
      size_t ia = rng.uniform_index(vars.size());
      size_t ib = rng.uniform_index(vars.size() - 1);
      if (ib >= ia) ++ib;
      int var_a = vars[ia];
      int var_b = vars[ib];
      const TrackRange& dom_a = problem.domains()[static_cast<size_t>(var_a)];
      const TrackRange& dom_b = problem.domains()[static_cast<size_t>(var_b)];
      int cur_a = current.pitches[static_cast<size_t>(var_a)];
      int cur_b = current.pitches[static_cast<size_t>(var_b)];
      for (int pa = dom_a.low; pa <= dom_a.high; ++pa) {
        for (int pb = dom_b.low; pb <= dom_b.high; ++pb) {
          if (pa == cur_a && pb == cur_b) continue;
          Move move{Neighborhood::ChangeSlice, var_a, pa, var_b, pb};
          if (visit(move)) return true;
        }
      }
      return false;
    }

    case Neighborhood::Swap: {
      size_t total = problem.free_count();
      for (int var_a : vars) {
        int cur_a = current.pitches[static_cast<size_t>(var_a)];
        const TrackRange& dom_a = problem.domains()[static_cast<size_t>(var_a)];
        // Pair with every later variable so each unordered pair appears
        // once per sweep.
        for (size_t var_b = static_cast<size_t>(var_a) + 1; var_b < total; ++var_b) {
          int cur_b = current.pitches[var_b];
          if (cur_a == cur_b) continue;
          const TrackRange& dom_b = problem.domains()[var_b];
          if (!dom_a.contains(cur_b) || !dom_b.contains(cur_a)) continue;
          Move move{Neighborhood::Swap, var_a, cur_b, static_cast<int>(var_b), cur_a};
          if (visit(move)) return true;
        }
      }
      return false;
    }
  }
  return false;
}

}  // namespace tonemorph
