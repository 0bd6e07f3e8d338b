#pragma once

// Shared fixtures, random generators and reference implementations for the
// test suites. The reference implementations here are deliberately naive
// and share no code with the library versions they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "core/midi_io.h"
#include "core/piece.h"
#include "core/point_set.h"
#include "core/rng.h"
#include "patterns/tec.h"
#include "spiral/spiral.h"

#include "json.hpp"

namespace tonemorph::testing {

// ---- fixture builders -------------------------------------------------------

inline NoteEvent note(int64_t onset, int64_t duration, int pitch, int velocity = 80,
                      int track = 0) {
  NoteEvent n;
  n.onset = onset;
  n.duration = duration;
  n.midi_pitch = pitch;
  n.velocity = velocity;
  n.track = track;
  return n;
}

inline Piece make_piece(std::vector<NoteEvent> notes, int tatums_per_beat = 2) {
  Piece piece;
  piece.notes = std::move(notes);
  piece.tatums_per_beat = tatums_per_beat;
  piece.sort_notes();
  piece.validate();
  return piece;
}

/// Cloud of unit-weight pitch positions given by fifths indices.
inline Cloud cloud_of_fifths(const std::vector<int>& fifths,
                             const SpiralParams& params = default_spiral_params()) {
  Cloud cloud;
  for (int k : fifths) cloud.points.push_back({pitch_position(k, params), 1.0});
  return cloud;
}

// Triads on the line of fifths.
inline std::vector<int> c_major_triad() { return {0, 1, 4}; }        // C G E
inline std::vector<int> g_major_triad() { return {1, 2, 5}; }        // G D B
inline std::vector<int> c_sharp_major_triad() { return {7, 8, 11}; } // C# G# E#
inline std::vector<int> a_minor_triad() { return {3, 0, 4}; }        // A C E
inline std::vector<int> tristan_chord() { return {-1, 5, 9, 8}; }    // F B D# G#

/// Twenty-note study: a five-note motif stated on track 0, repeated a
/// fourth up on track 0 and a fourth down on track 1, plus five loose
/// closing notes. Found patterns should recover the three statements.
inline std::string motif_text() {
  return "# grid: tatums_per_beat=2 beats_per_bar=4/1\n"
         "# a 5-note motif, repeated twice transposed, plus scatter\n"
         "0 2 60 80 0\n"
         "2 2 62 80 0\n"
         "4 2 64 80 0\n"
         "6 2 62 80 0\n"
         "8 2 67 80 0\n"
         "16 2 65 80 0\n"
         "18 2 67 80 0\n"
         "20 2 69 80 0\n"
         "22 2 67 80 0\n"
         "24 2 72 80 0\n"
         "32 2 55 80 1\n"
         "34 2 57 80 1\n"
         "36 2 59 80 1\n"
         "38 2 57 80 1\n"
         "40 2 62 80 1\n"
         "48 2 48 80 1\n"
         "50 2 52 80 1\n"
         "52 2 55 80 1\n"
         "54 2 59 80 1\n"
         "56 2 60 80 1\n";
}

/// Two-track study piece with 34 notes: a melody over sustained chords, so
/// every window holds several voices and all three tension measures vary.
inline Piece desk_piece() {
  std::vector<NoteEvent> notes;
  const int melody[][3] = {{0, 2, 60},  {2, 1, 64},  {3, 1, 67},  {4, 2, 72},  {6, 2, 67},
                           {8, 2, 64},  {10, 1, 65}, {11, 1, 69}, {12, 2, 76}, {14, 2, 72},
                           {16, 2, 69}, {18, 1, 65}, {19, 1, 62}, {20, 2, 60}, {22, 2, 64},
                           {24, 2, 67}, {26, 2, 72}, {28, 4, 60}};
  for (auto& r : melody) notes.push_back(note(r[0], r[1], r[2], 80, 0));
  const int chords[][3] = {{0, 8, 43},  {0, 8, 50},  {0, 8, 59},  {8, 8, 45},  {8, 8, 52},
                           {8, 8, 57},  {16, 8, 41}, {16, 8, 48}, {16, 8, 57}, {24, 8, 43},
                           {24, 8, 47}, {24, 8, 50}, {24, 8, 55}, {28, 4, 48}, {28, 4, 56},
                           {28, 4, 64}};
  for (auto& r : chords) notes.push_back(note(r[0], r[1], r[2], 80, 1));
  return make_piece(notes);
}

// ---- random generators ------------------------------------------------------

/// Random piece without duplicate (track, pitch, overlapping-time) MIDI
/// collisions: at most one note per (track, pitch, onset) and no note of the
/// same track+pitch sounding during another. Keeps MIDI round trips valid.
inline Piece random_piece(Rng& rng, int max_notes, int tracks = 2, int pitch_lo = 36,
                          int pitch_hi = 96) {
  Piece piece;
  piece.tatums_per_beat = 2;
  int wanted = rng.uniform_int(1, max_notes);
  // Per (track, pitch): end of the last scheduled note, to avoid overlap.
  std::map<std::pair<int, int>, int64_t> busy_until;
  for (int i = 0; i < wanted; ++i) {
    NoteEvent n;
    n.onset = rng.uniform_int(0, 63);
    n.duration = rng.uniform_int(1, 8);
    n.midi_pitch = rng.uniform_int(pitch_lo, pitch_hi);
    n.velocity = rng.uniform_int(1, 127);
    n.track = rng.uniform_int(0, tracks - 1);
    auto key = std::make_pair(n.track, n.midi_pitch);
    auto it = busy_until.find(key);
    if (it != busy_until.end() && n.onset < it->second) continue;  // would overlap, drop
    busy_until[key] = std::max(it == busy_until.end() ? int64_t{0} : it->second, n.end());
    piece.notes.push_back(n);
  }
  if (piece.notes.empty()) piece.notes.push_back(note(0, 2, 60));
  // Dense track numbers; MIDI round trips renumber lanes from 0 anyway.
  std::map<int, int> dense;
  for (const NoteEvent& n : piece.notes) dense.emplace(n.track, 0);
  int next = 0;
  for (auto& [track, id] : dense) id = next++;
  for (NoteEvent& n : piece.notes) n.track = dense[n.track];
  piece.sort_notes();
  piece.validate();
  return piece;
}

inline PointSet random_point_set(Rng& rng, int max_points, int64_t time_hi = 30,
                                 int64_t pitch_lo = -24, int64_t pitch_hi = 24) {
  std::vector<Point> points;
  int wanted = rng.uniform_int(1, max_points);
  for (int i = 0; i < wanted; ++i) {
    points.push_back({rng.uniform_int(0, static_cast<int>(time_hi)),
                      rng.uniform_int(static_cast<int>(pitch_lo), static_cast<int>(pitch_hi))});
  }
  return make_point_set(std::move(points));
}

// ---- reference implementations ---------------------------------------------

/// Linear-scan membership, no ordering assumptions.
inline bool slow_contains(const PointSet& set, Point p) {
  for (Point q : set)
    if (q == p) return true;
  return false;
}

/// Maximal translatable patterns by definition: for every lexicographically
/// positive difference vector, every point whose translation stays inside.
inline std::map<Point, PointSet> slow_sia(const PointSet& points) {
  std::map<Point, std::set<Point>> raw;
  for (Point a : points) {
    for (Point b : points) {
      Point v = b - a;
      if (!(Point{0, 0} < v)) continue;
      raw[v].insert(a);
    }
  }
  std::map<Point, PointSet> result;
  for (auto& [v, pts] : raw) result[v] = PointSet(pts.begin(), pts.end());
  return result;
}

/// TECs of all distinct MTP shapes, by definition. Translator candidates
/// map the pattern's first point onto some set point, which is exhaustive:
/// a translator must send that point somewhere in the set. The pattern is
/// re-anchored so the smallest translator is the identity.
inline std::vector<Tec> slow_siatec(const PointSet& points) {
  std::vector<Tec> result;
  if (points.empty()) return result;
  std::vector<PointSet> patterns;
  if (points.size() == 1) {
    patterns.push_back(points);
  } else {
    std::set<PointSet> shapes;
    for (auto& [v, pattern] : slow_sia(points)) {
      PointSet shape = pattern;
      for (Point& p : shape) p = p - pattern.front();
      if (shapes.insert(shape).second) patterns.push_back(pattern);
    }
  }
  std::set<std::string> seen;
  for (const PointSet& pattern : patterns) {
    std::vector<Point> offsets;
    for (Point q : points) {
      Point v = q - pattern.front();
      bool fits = true;
      for (Point p : pattern)
        if (!slow_contains(points, p + v)) {
          fits = false;
          break;
        }
      if (fits) offsets.push_back(v);
    }
    std::sort(offsets.begin(), offsets.end());
    Point anchor = offsets.front();
    Tec tec;
    tec.pattern = pattern;
    for (Point& p : tec.pattern) p = p + anchor;
    for (Point v : offsets) tec.translators.push_back(v - anchor);
    if (seen.insert(encode_tec(tec)).second) result.push_back(tec);
  }
  std::sort(result.begin(), result.end(), [](const Tec& a, const Tec& b) {
    return std::tie(a.pattern, a.translators) < std::tie(b.pattern, b.translators);
  });
  return result;
}

inline double slow_cloud_diameter(const Cloud& cloud) {
  double best = 0;
  for (size_t i = 0; i < cloud.points.size(); ++i)
    for (size_t j = 0; j < cloud.points.size(); ++j)
      best = std::max(best, distance(cloud.points[i].position, cloud.points[j].position));
  return best;
}

/// Nearest key by scan, with the key centers recomputed from first
/// principles (pitch -> chord -> key blends) instead of key_position().
inline KeyRep slow_nearest_key(SpiralPoint ce, int center_fifths, int radius,
                               const SpiralParams& params = default_spiral_params()) {
  auto pitch = [&](int k) -> SpiralPoint {
    double angle = k * (3.14159265358979323846 / 2.0);
    return {params.radius * std::sin(angle), params.radius * std::cos(angle),
            k * params.height};
  };
  auto major_chord = [&](int k) {
    const auto& w = params.chord_weights;
    return w[0] * pitch(k) + w[1] * pitch(k + 1) + w[2] * pitch(k + 4);
  };
  auto minor_chord = [&](int k) {
    const auto& w = params.chord_weights;
    return w[0] * pitch(k) + w[1] * pitch(k + 1) + w[2] * pitch(k - 3);
  };
  auto key_center = [&](int tonic, Mode mode) {
    const auto& w = params.key_weights;
    double total = w[0] + w[1] + w[2];
    SpiralPoint p;
    if (mode == Mode::Major) {
      p = w[0] * major_chord(tonic) + w[1] * major_chord(tonic + 1) +
          w[2] * major_chord(tonic - 1);
    } else {
      double a = params.dominant_major_share, b = params.subdominant_minor_share;
      SpiralPoint dom = a * major_chord(tonic + 1) + (1 - a) * minor_chord(tonic + 1);
      SpiralPoint sub = b * minor_chord(tonic - 1) + (1 - b) * major_chord(tonic - 1);
      p = w[0] * minor_chord(tonic) + w[1] * dom + w[2] * sub;
    }
    return (1.0 / total) * p;
  };
  bool have = false;
  KeyRep best;
  double best_d = 0;
  for (int tonic = center_fifths - radius; tonic <= center_fifths + radius; ++tonic) {
    if (std::abs(tonic) + 5 > params.max_fifths) continue;
    for (Mode mode : {Mode::Major, Mode::Minor}) {
      SpiralPoint pos = key_center(tonic, mode);
      double d = distance(ce, pos);
      auto rank = std::make_tuple(d, std::abs(tonic), tonic, mode == Mode::Minor ? 1 : 0);
      auto best_rank = std::make_tuple(best_d, std::abs(best.tonic_fifths), best.tonic_fifths,
                                       best.mode == Mode::Minor ? 1 : 0);
      if (!have || rank < best_rank) {
        have = true;
        best = {tonic, mode, pos};
        best_d = d;
      }
    }
  }
  return best;
}

// ---- emitted-files checker --------------------------------------------------

/// Re-derives the hard constraints from a morph run's output files alone:
/// every pattern occurrence in patterns.tec must be present in output.mid as
/// an exact transposition, and every note must sit inside its track's range
/// from report.json. Returns human-readable violations; empty means clean.
inline std::vector<std::string> check_morph_outputs(const std::filesystem::path& dir) {
  std::vector<std::string> violations;
  auto read_bytes = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::vector<uint8_t>((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
  };
  auto read_text = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  Piece piece = parse_midi(read_bytes(dir / "output.mid"));
  std::set<Point> sounding;
  for (const NoteEvent& n : piece.notes) sounding.insert({n.onset, n.midi_pitch});

  std::istringstream tecs(read_text(dir / "patterns.tec"));
  std::string line;
  size_t line_no = 0;
  while (std::getline(tecs, line)) {
    ++line_no;
    if (line.empty()) continue;
    Tec tec = decode_tec(line);
    for (Point v : tec.translators) {
      for (Point p : tec.pattern) {
        Point q = p + v;
        if (!sounding.count(q)) {
          violations.push_back("patterns.tec line " + std::to_string(line_no) + ": point (" +
                               std::to_string(q.time) + "," + std::to_string(q.pitch) +
                               ") not sounding in output.mid");
        }
      }
    }
  }

  auto report = nlohmann::json::parse(read_text(dir / "report.json"));
  std::map<int, std::pair<int, int>> ranges;
  for (const auto& r : report.at("track_ranges")) {
    ranges[r.at("track").get<int>()] = {r.at("low").get<int>(), r.at("high").get<int>()};
  }
  for (const NoteEvent& n : piece.notes) {
    auto it = ranges.find(n.track);
    if (it == ranges.end()) {
      violations.push_back("report.json: no range for track " + std::to_string(n.track));
      continue;
    }
    if (n.midi_pitch < it->second.first || n.midi_pitch > it->second.second) {
      violations.push_back("output.mid: pitch " + std::to_string(n.midi_pitch) + " at onset " +
                           std::to_string(n.onset) + " outside track " + std::to_string(n.track) +
                           " range [" + std::to_string(it->second.first) + "," +
                           std::to_string(it->second.second) + "]");
    }
  }
  return violations;
}

/// Scratch directory under the system temp root, wiped on creation.
inline std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spew(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace tonemorph::testing
