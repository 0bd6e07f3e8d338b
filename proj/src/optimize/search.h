#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "optimize/evaluator.h"
#include "optimize/moves.h"

namespace tonemorph {

/// One trace event. `move` counts accepted moves so far; init and
/// perturbation rows repeat the current count. `objective` is the current
/// value after the event, `best_objective` the running minimum.
struct TraceRow {
  int64_t move = 0;
  int64_t elapsed_ms = 0;
  double objective = 0;
  double best_objective = 0;
  std::string neighborhood;  // init | change1 | changeSlice | swap | perturb
  bool perturbation = false;
};

struct SearchTrace {
  uint64_t seed = 0;
  std::vector<TraceRow> rows;
};

/// CSV with a `# seed=` header line. Wall-clock stamps are only written
/// when `include_timing` is set; otherwise the column is 0 so identical
/// runs give identical bytes.
std::string trace_to_csv(const SearchTrace& trace, bool include_timing);

/// Collects trace rows and tracks the running best during a search.
class TraceRecorder {
 public:
  explicit TraceRecorder(uint64_t seed);

  void record_init(double objective);
  void record_accept(double objective, Neighborhood kind);
  void record_perturb(double objective);

  double best_objective() const { return best_; }
  int64_t accepted_moves() const { return moves_; }
  const SearchTrace& trace() const { return trace_; }
  SearchTrace take_trace() { return std::move(trace_); }

 private:
  void push(double objective, const std::string& kind, bool perturbation);

  SearchTrace trace_;
  std::chrono::steady_clock::time_point start_;
  int64_t moves_ = 0;
  double best_ = 0;
  bool any_ = false;
};

/// First-descent pass over one neighborhood: sweep the slices
/// chronologically, take the first improving candidate, rewind four slices
/// after each acceptance, stop after a full clean sweep. Returns whether
/// anything improved; the evaluator holds the resulting assignment.
bool local_search(Evaluator& evaluator, Neighborhood kind, Rng& rng,
                  TraceRecorder* recorder = nullptr);

/// Redraws ceil(12% of the variables) uniformly from their domains.
Assignment perturb(const MorphProblem& problem, const Assignment& assignment, Rng& rng);

struct VnsResult {
  Assignment initial;
  Assignment best;
  Assignment final_assignment;
  double initial_objective = 0;
  double best_objective = 0;
  double final_objective = 0;
  int64_t iterations = 0;  // completed perturbation cycles
  SearchTrace trace;
};

/// Variable neighborhood search: from a random feasible start, descend
/// through {change1, changeSlice, swap} until none improves, then perturb
/// and repeat for max_iters perturbation cycles. Deterministic for a fixed
/// seed; returns the best assignment ever visited plus the full trace.
VnsResult vns(const MorphProblem& problem, int max_iters, uint64_t seed);

}  // namespace tonemorph
