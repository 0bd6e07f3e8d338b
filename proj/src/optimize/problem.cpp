#include "optimize/problem.h"

#include <algorithm>

#include "core/errors.h"
#include "spiral/spelling.h"

namespace tonemorph {
namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[static_cast<size_t>(i)] != i) {
    parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
    i = parent[static_cast<size_t>(i)];
  }
  return i;
}

/// Keeps the smaller index as root, so every class representative is the
/// lexicographically smallest point of its class.
void unite(std::vector<int>& parent, int a, int b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a == b) return;
  if (a < b)
    parent[static_cast<size_t>(b)] = a;
  else
    parent[static_cast<size_t>(a)] = b;
}

int index_of_point(const PointSet& points, Point p, const char* role) {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p)
    throw Error(std::string("cover ") + role + " names point (" + std::to_string(p.time) + "," +
                std::to_string(p.pitch) + ") not in the piece");
  return static_cast<int>(it - points.begin());
}

}  // namespace

std::vector<int> point_classes(const PointSet& points, const Cover& cover) {
  std::vector<int> parent(points.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::vector<char> covered(points.size(), 0);

  for (const Tec& tec : cover.tecs) {
    for (Point p : tec.pattern) {
      int i = index_of_point(points, p, "pattern");
      covered[static_cast<size_t>(i)] = 1;
      for (Point v : tec.translators) {
        if (v == Point{0, 0}) continue;
        int j = index_of_point(points, p + v, "occurrence");
        covered[static_cast<size_t>(j)] = 1;
        unite(parent, i, j);
      }
    }
  }
  size_t uncovered = 0;
  for (char c : covered)
    if (!c) ++uncovered;
  if (uncovered > 0)
    throw Error("cover leaves " + std::to_string(uncovered) + " point(s) uncovered");

  std::vector<int> root(points.size());
  for (size_t i = 0; i < points.size(); ++i) root[i] = find_root(parent, static_cast<int>(i));
  return root;
}

MorphProblem build_problem(Piece source, Cover cover, TensionProfile target,
                           std::map<int, int> fixed, MorphOptions options) {
  source.validate();
  MorphProblem problem;
  problem.source_ = std::move(source);
  problem.cover_ = std::move(cover);
  problem.options_ = options;

  const Piece& piece = problem.source_;
  if (piece.empty()) throw Error("cannot build a problem from an empty piece");

  ScorePointSet sps = to_pointset(piece);
  std::vector<int> classes = point_classes(sps.points, problem.cover_);

  // Variables: one per class representative, in point order.
  std::vector<int> var_of_point(sps.points.size(), -1);
  std::vector<int> root_point_of_var;
  for (size_t i = 0; i < sps.points.size(); ++i) {
    if (classes[i] == static_cast<int>(i)) {
      var_of_point[i] = static_cast<int>(root_point_of_var.size());
      root_point_of_var.push_back(static_cast<int>(i));
    }
  }

  size_t note_count = piece.notes.size();
  problem.note_variable_.resize(note_count);
  problem.note_delta_.resize(note_count);
  problem.variable_notes_.resize(root_point_of_var.size());
  for (size_t i = 0; i < sps.points.size(); ++i) {
    int root = classes[i];
    int var = var_of_point[static_cast<size_t>(root)];
    int delta = static_cast<int>(sps.points[i].pitch - sps.points[static_cast<size_t>(root)].pitch);
    for (int note : sps.note_indices[i]) {
      problem.note_variable_[static_cast<size_t>(note)] = var;
      problem.note_delta_[static_cast<size_t>(note)] = delta;
      problem.variable_notes_[static_cast<size_t>(var)].push_back(note);
    }
  }
  for (auto& notes : problem.variable_notes_) std::sort(notes.begin(), notes.end());

  // Hard range constraint: each track keeps its template ambit.
  problem.track_ranges_.assign(static_cast<size_t>(piece.track_count()), TrackRange{0, 127});
  std::vector<char> track_seen(static_cast<size_t>(piece.track_count()), 0);
  for (const NoteEvent& n : piece.notes) {
    auto& range = problem.track_ranges_[static_cast<size_t>(n.track)];
    if (!track_seen[static_cast<size_t>(n.track)]) {
      range = TrackRange{n.midi_pitch, n.midi_pitch};
      track_seen[static_cast<size_t>(n.track)] = 1;
    } else {
      range.low = std::min(range.low, n.midi_pitch);
      range.high = std::max(range.high, n.midi_pitch);
    }
  }

  // Domain of a variable: every linked note must stay inside its track range.
  problem.domains_.assign(root_point_of_var.size(), TrackRange{0, 127});
  for (size_t var = 0; var < problem.domains_.size(); ++var) {
    TrackRange dom{0, 127};
    for (int note : problem.variable_notes_[var]) {
      const NoteEvent& n = piece.notes[static_cast<size_t>(note)];
      int delta = problem.note_delta_[static_cast<size_t>(note)];
      const TrackRange& range = problem.track_ranges_[static_cast<size_t>(n.track)];
      dom.low = std::max(dom.low, range.low - delta);
      dom.high = std::min(dom.high, range.high - delta);
    }
    if (dom.low > dom.high) {
      int root_note = problem.variable_notes_[var].front();
      throw InfeasibleError(
          "no pitch satisfies the range constraints linked to note " + std::to_string(root_note),
          root_note);
    }
    problem.domains_[var] = dom;
  }

  // Fixed pitches are soft, but must at least name real notes.
  for (const auto& [note, pitch] : fixed) {
    if (note < 0 || static_cast<size_t>(note) >= note_count)
      throw Error("fixed pitch names note " + std::to_string(note) + " out of range");
    if (pitch < 0 || pitch > 127)
      throw Error("fixed pitch for note " + std::to_string(note) + " out of 0..127");
  }
  problem.fixed_ = std::move(fixed);

  problem.key_ = global_key(piece, options.spiral);
  problem.speller_ = Speller(problem.key_, options.spiral);
  problem.plan_ = SegmentPlan::build(piece, options.segment_beats);
  if (static_cast<int64_t>(target.size()) != problem.plan_.count)
    throw Error("target profile has " + std::to_string(target.size()) + " segments, piece needs " +
                std::to_string(problem.plan_.count));
  problem.target_ = std::move(target);

  problem.slices_ = slices(piece);
  problem.slice_variables_.resize(problem.slices_.size());
  for (size_t var = 0; var < root_point_of_var.size(); ++var) {
    int64_t root_time = sps.points[static_cast<size_t>(root_point_of_var[var])].time;
    auto it = std::lower_bound(problem.slices_.begin(), problem.slices_.end(), root_time,
                               [](const TimeSlice& s, int64_t t) { return s.onset < t; });
    problem.slice_variables_[static_cast<size_t>(it - problem.slices_.begin())].push_back(
        static_cast<int>(var));
  }

  problem.variable_segments_.resize(root_point_of_var.size());
  for (size_t seg = 0; seg < problem.plan_.contributors.size(); ++seg) {
    for (const SegmentContribution& c : problem.plan_.contributors[seg]) {
      problem.variable_segments_[static_cast<size_t>(
                                     problem.note_variable_[static_cast<size_t>(c.note)])]
          .push_back(static_cast<int>(seg));
    }
  }
  for (auto& segs : problem.variable_segments_) {
    std::sort(segs.begin(), segs.end());
    segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
  }
  return problem;
}

Assignment MorphProblem::template_assignment() const {
  Assignment a;
  a.pitches.reserve(free_count());
  for (const auto& notes : variable_notes_) {
    int root_note = notes.front();
    a.pitches.push_back(source_.notes[static_cast<size_t>(root_note)].midi_pitch -
                        note_delta_[static_cast<size_t>(root_note)]);
  }
  return a;
}

std::vector<int> realized_pitches(const MorphProblem& problem, const Assignment& assignment) {
  const Piece& piece = problem.source();
  std::vector<int> out(piece.notes.size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = assignment.pitches[static_cast<size_t>(problem.variable_of_note(static_cast<int>(i)))] +
             problem.delta_of_note(static_cast<int>(i));
  }
  return out;
}

Piece realize(const MorphProblem& problem, const Assignment& assignment) {
  Piece out = problem.source();
  std::vector<int> pitches = realized_pitches(problem, assignment);
  for (size_t i = 0; i < out.notes.size(); ++i) out.notes[i].midi_pitch = pitches[i];
  out.sort_notes();
  return out;
}

double objective(const MorphProblem& problem, const Assignment& assignment) {
  std::vector<int> pitches = realized_pitches(problem, assignment);
  std::vector<Cloud> clouds;
  clouds.reserve(problem.plan().contributors.size());
  for (const auto& contributions : problem.plan().contributors) {
    clouds.push_back(build_cloud(contributions, pitches, problem.speller()));
  }
  MeasureVectors m = measures_from_clouds(clouds, problem.key());
  TensionProfile candidate;
  candidate.segment_beats = problem.options().segment_beats;
  candidate.key = problem.key();
  candidate.diameter = std::move(m.diameter);
  candidate.momentum = std::move(m.momentum);
  candidate.strain = std::move(m.strain);
  double d = profile_distance(candidate, problem.target(), problem.options().weights,
                              problem.options().metric);
  int violations = 0;
  for (const auto& [note, wanted] : problem.fixed_pitches()) {
    if (pitches[static_cast<size_t>(note)] != wanted) ++violations;
  }
  return d + problem.options().penalty * violations;
}

Assignment random_feasible(const MorphProblem& problem, Rng& rng) {
  Assignment a;
  a.pitches.reserve(problem.free_count());
  for (const TrackRange& dom : problem.domains()) {
    a.pitches.push_back(rng.uniform_int(dom.low, dom.high));
  }
  return a;
}

}  // namespace tonemorph
