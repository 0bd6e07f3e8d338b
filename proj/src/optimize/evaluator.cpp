#include "optimize/evaluator.h"

#include <algorithm>
#include <cmath>

namespace tonemorph {

Evaluator::Evaluator(const MorphProblem& problem, Assignment initial)
    : problem_(&problem), assignment_(std::move(initial)) {
  const SegmentPlan& plan = problem.plan();
  size_t count = plan.contributors.size();
  seg_empty_.resize(count);
  seg_ce_.resize(count);
  seg_diameter_.resize(count);
  prev_nonempty_.assign(count, -1);
  carry_source_.assign(count, -1);
  int last_nonempty = -1;
  for (size_t s = 0; s < count; ++s) {
    seg_empty_[s] = plan.contributors[s].empty() ? 1 : 0;
    prev_nonempty_[s] = last_nonempty;
    if (!seg_empty_[s]) last_nonempty = static_cast<int>(s);
    carry_source_[s] = last_nonempty;
  }
  reset(std::move(assignment_));
}

void Evaluator::reset(Assignment assignment) {
  assignment_ = std::move(assignment);
  realized_ = realized_pitches(*problem_, assignment_);
  for (size_t s = 0; s < seg_empty_.size(); ++s) {
    if (!seg_empty_[s]) rebuild_segment(s);
  }
  objective_ = compute_objective();
}

void Evaluator::rebuild_segment(size_t seg) {
  Cloud cloud = build_cloud(problem_->plan().contributors[seg], realized_, problem_->speller());
  seg_ce_[seg] = center_of_effect(cloud);
  seg_diameter_[seg] = cloud_diameter(cloud);
}

void Evaluator::apply_pairs(const std::vector<std::pair<int, int>>& var_values) {
  std::vector<int> touched;
  for (const auto& [var, value] : var_values) {
    assignment_.pitches[static_cast<size_t>(var)] = value;
    for (int note : problem_->notes_of_variable(var)) {
      realized_[static_cast<size_t>(note)] = value + problem_->delta_of_note(note);
    }
    const auto& segs = problem_->segments_of_variable()[static_cast<size_t>(var)];
    touched.insert(touched.end(), segs.begin(), segs.end());
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (int seg : touched) rebuild_segment(static_cast<size_t>(seg));
}

double Evaluator::probe(const Move& move) {
  int old_a = assignment_.pitches[static_cast<size_t>(move.var_a)];
  std::vector<std::pair<int, int>> forward{{move.var_a, move.pitch_a}};
  std::vector<std::pair<int, int>> back{{move.var_a, old_a}};
  if (move.var_b >= 0) {
    int old_b = assignment_.pitches[static_cast<size_t>(move.var_b)];
    forward.push_back({move.var_b, move.pitch_b});
    back.push_back({move.var_b, old_b});
  }
  apply_pairs(forward);
  double value = compute_objective();
  // Rebuilding from the restored pitches reproduces every cache bit.
  apply_pairs(back);
  return value;
}

void Evaluator::commit(const Move& move) {
  std::vector<std::pair<int, int>> forward{{move.var_a, move.pitch_a}};
  if (move.var_b >= 0) forward.push_back({move.var_b, move.pitch_b});
  apply_pairs(forward);
  objective_ = compute_objective();
}

double Evaluator::compute_objective() const {
  const TensionProfile& target = problem_->target();
  const MorphOptions& options = problem_->options();
  const SpiralPoint key_position = problem_->key().position;
  size_t count = seg_empty_.size();

  // Mirrors profile_distance: per measure accumulate, then weight, in the
  // same order, so values match the full recomputation exactly.
  double total = 0;
  for (int m = 0; m < 3; ++m) {
    double acc = 0;
    for (size_t s = 0; s < count; ++s) {
      double term;
      if (m == 0) {
        term = seg_empty_[s] ? 0.0 : seg_diameter_[s];
      } else if (m == 1) {
        term = (!seg_empty_[s] && prev_nonempty_[s] >= 0)
                   ? distance(seg_ce_[static_cast<size_t>(prev_nonempty_[s])], seg_ce_[s])
                   : 0.0;
      } else {
        int src = carry_source_[s];
        term = src >= 0 ? distance(seg_ce_[static_cast<size_t>(src)], key_position) : 0.0;
      }
      const std::vector<double>& tv = m == 0 ? target.diameter : m == 1 ? target.momentum
                                                                        : target.strain;
      double d = term - tv[s];
      acc += options.metric == DistanceMetric::L1 ? std::abs(d) : d * d;
    }
    if (options.metric == DistanceMetric::L2) acc = std::sqrt(acc);
    total += options.weights[static_cast<size_t>(m)] * acc;
  }

  int violations = 0;
  for (const auto& [note, wanted] : problem_->fixed_pitches()) {
    if (realized_[static_cast<size_t>(note)] != wanted) ++violations;
  }
  return total + options.penalty * violations;
}

}  // namespace tonemorph
