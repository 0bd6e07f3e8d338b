#pragma once

#include <vector>

#include "optimize/move.h"
#include "optimize/problem.h"

namespace tonemorph {

/// Incremental objective for one evolving assignment. A pitch change only
/// disturbs the tension windows its notes sound in (the template rhythm is
/// fixed), so only those windows' clouds are rebuilt; the three measure
/// sums are then re-accumulated exactly like the full recomputation in
/// objective(), yielding bit-identical values.
class Evaluator {
 public:
  Evaluator(const MorphProblem& problem, Assignment initial);

  const MorphProblem& problem() const { return *problem_; }
  const Assignment& assignment() const { return assignment_; }
  double objective() const { return objective_; }

  /// Objective the move would give. State is unchanged afterwards.
  double probe(const Move& move);
  /// Applies the move and updates the cached objective.
  void commit(const Move& move);
  /// Replaces the whole assignment (perturbation / restart).
  void reset(Assignment assignment);

 private:
  void rebuild_segment(size_t seg);
  /// Sets vars to values, refreshes realized pitches and touched windows.
  void apply_pairs(const std::vector<std::pair<int, int>>& var_values);
  double compute_objective() const;

  const MorphProblem* problem_;
  Assignment assignment_;
  std::vector<int> realized_;  // current pitch per note

  // Per tension window. Emptiness is static, so the carry structure
  // (previous non-empty window, strain carry source) is precomputed.
  std::vector<char> seg_empty_;
  std::vector<SpiralPoint> seg_ce_;
  std::vector<double> seg_diameter_;
  std::vector<int> prev_nonempty_;
  std::vector<int> carry_source_;

  double objective_ = 0;
};

}  // namespace tonemorph
