#include "optimize/search.h"

#include <algorithm>
#include <cstdio>

namespace tonemorph {

std::string trace_to_csv(const SearchTrace& trace, bool include_timing) {
  std::string out = "# seed=" + std::to_string(trace.seed) + "\n";
  out += "move,elapsed_ms,objective,best_objective,neighborhood,perturbation\n";
  char buf[192];
  for (const TraceRow& row : trace.rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%lld,%.9g,%.9g,%s,%d\n",
                  static_cast<long long>(row.move),
                  static_cast<long long>(include_timing ? row.elapsed_ms : 0), row.objective,
                  row.best_objective, row.neighborhood.c_str(), row.perturbation ? 1 : 0);
    out += buf;
  }
  return out;
}

TraceRecorder::TraceRecorder(uint64_t seed) : start_(std::chrono::steady_clock::now()) {
  trace_.seed = seed;
}

void TraceRecorder::push(double objective, const std::string& kind, bool perturbation) {
  if (!any_ || objective < best_) {
    best_ = objective;
    any_ = true;
  }
  TraceRow row;
  row.move = moves_;
  row.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
  row.objective = objective;
  row.best_objective = best_;
  row.neighborhood = kind;
  row.perturbation = perturbation;
  trace_.rows.push_back(std::move(row));
}

void TraceRecorder::record_init(double objective) { push(objective, "init", false); }

void TraceRecorder::record_accept(double objective, Neighborhood kind) {
  ++moves_;
  push(objective, neighborhood_name(kind), false);
}

void TraceRecorder::record_perturb(double objective) { push(objective, "perturb", true); }

bool local_search(Evaluator& evaluator, Neighborhood kind, Rng& rng, TraceRecorder* recorder) {
  const MorphProblem& problem = evaluator.problem();
  size_t slice_count = problem.slice_table().size();
  if (slice_count == 0) return false;

  bool improved_any = false;
  size_t cursor = 0;
  size_t clean_streak = 0;  // slices visited since the last acceptance
  while (clean_streak < slice_count) {
    bool accepted =
        enumerate_moves(problem, kind, cursor, evaluator.assignment(), rng, [&](const Move& move) {
          double value = evaluator.probe(move);
          if (value < evaluator.objective()) {
            evaluator.commit(move);
            return true;
          }
          return false;
        });
    if (accepted) {
      improved_any = true;
      if (recorder) recorder->record_accept(evaluator.objective(), kind);
      // Resume a few slices back: an accepted change can unlock
      // improvements just before it, no need to restart the sweep.
      cursor = cursor > 4 ? cursor - 4 : 0;
      clean_streak = 0;
    } else {
      ++clean_streak;
      ++cursor;
      if (cursor >= slice_count) cursor = 0;
    }
  }
  return improved_any;
}

Assignment perturb(const MorphProblem& problem, const Assignment& assignment, Rng& rng) {
  Assignment out = assignment;
  size_t up = problem.free_count();
  size_t redraw = (up * 12 + 99) / 100;  // ceil(0.12 * UP), at least 1
  for (size_t var : rng.sample_indices(up, redraw)) {
    const TrackRange& dom = problem.domains()[var];
    out.pitches[var] = rng.uniform_int(dom.low, dom.high);
  }
  return out;
}

VnsResult vns(const MorphProblem& problem, int max_iters, uint64_t seed) {
  Rng rng(seed);
  VnsResult result;
  result.initial = random_feasible(problem, rng);

  Evaluator evaluator(problem, result.initial);
  TraceRecorder recorder(seed);
  recorder.record_init(evaluator.objective());
  result.initial_objective = evaluator.objective();
  result.best = result.initial;
  result.best_objective = evaluator.objective();

  auto descend = [&] {
    // Neighborhoods cycle cheapest-first; any improvement restarts the cycle.
    bool any;
    do {
      any = false;
      for (Neighborhood kind :
           {Neighborhood::Change1, Neighborhood::ChangeSlice, Neighborhood::Swap}) {
        if (local_search(evaluator, kind, rng, &recorder)) any = true;
      }
    } while (any);
    if (evaluator.objective() < result.best_objective) {
      result.best_objective = evaluator.objective();
      result.best = evaluator.assignment();
    }
  };

  descend();
  for (int iter = 0; iter < max_iters; ++iter) {
    evaluator.reset(perturb(problem, evaluator.assignment(), rng));
    recorder.record_perturb(evaluator.objective());
    descend();
    ++result.iterations;
  }

  result.final_assignment = evaluator.assignment();
  result.final_objective = evaluator.objective();
  result.trace = recorder.take_trace();
  return result;
}

}  // namespace tonemorph
