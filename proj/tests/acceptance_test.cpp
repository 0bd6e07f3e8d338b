#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.h"
#include "core/pointset_text.h"
#include "core/rng.h"
#include "optimize/problem.h"
#include "optimize/search.h"
#include "patterns/cover.h"
#include "patterns/discovery.h"
#include "patterns/tec.h"
#include "spiral/spiral.h"
#include "tension/tension.h"
#include "test_util.h"

// End-to-end acceptance gates. Every test prints one summary line,
//
//   [ACCEPT] criterion N (<what>): PASS|FAIL
//
// so a log scan shows exactly which guarantees held. Tests run in
// declaration order; each is self-contained.

namespace tonemorph {
namespace {

namespace fs = std::filesystem;
using testing::c_major_triad;
using testing::c_sharp_major_triad;
using testing::check_morph_outputs;
using testing::cloud_of_fifths;
using testing::desk_piece;
using testing::fresh_dir;
using testing::g_major_triad;
using testing::make_piece;
using testing::motif_text;
using testing::note;
using testing::random_point_set;
using testing::slow_cloud_diameter;
using testing::slow_nearest_key;
using testing::slow_sia;
using testing::slow_siatec;
using testing::slurp;
using testing::spew;
using testing::tristan_chord;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void verdict(int criterion, const char* what) {
  std::printf("[ACCEPT] criterion %d (%s): %s\n", criterion, what,
              ::testing::Test::HasFailure() ? "FAIL" : "PASS");
  std::fflush(stdout);
}

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun result;
  result.code = run_cli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) return 0.0;
  double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  if (va <= 0 || vb <= 0) return 0.0;
  return cov / std::sqrt(va * vb);
}

double variance(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

Cover singleton_cover(const PointSet& ps) {
  Cover cover;
  for (Point p : ps) cover.tecs.push_back(make_tec({p}, {{0, 0}}));
  return cover;
}

MorphProblem self_target_problem(const Piece& piece, MorphOptions opts = {}) {
  TensionProfile target = profile(piece, opts.segment_beats);
  return build_problem(piece, singleton_cover(to_pointset(piece).points), std::move(target), {},
                       opts);
}

/// Current objective may only climb at perturbation rows. Returns the
/// offending row indices.
std::vector<size_t> uphill_rows_without_perturbation(const SearchTrace& trace) {
  std::vector<size_t> bad;
  for (size_t i = 1; i < trace.rows.size(); ++i) {
    if (trace.rows[i].objective > trace.rows[i - 1].objective && !trace.rows[i].perturbation)
      bad.push_back(i);
  }
  return bad;
}

// ---- criterion 1: tension ordinals ------------------------------------------

TEST(Acceptance, Criterion1TensionOrdinals) {
  auto t0 = std::chrono::steady_clock::now();

  Cloud cmaj = cloud_of_fifths(c_major_triad());
  Cloud gmaj = cloud_of_fifths(g_major_triad());
  Cloud csharp = cloud_of_fifths(c_sharp_major_triad());
  Cloud tristan = cloud_of_fifths(tristan_chord());

  // A plain triad is tighter than a chromatic four-note knot.
  EXPECT_LT(cloud_diameter(cmaj), cloud_diameter(tristan));

  // The tonic triad sits closer to its own key than a triad a semitone off.
  KeyRep c_major = key_position(0, Mode::Major);
  EXPECT_LT(tensile_strain(cmaj, c_major), tensile_strain(csharp, c_major));

  // Moving to the semitone-distant chord travels farther than to the fifth.
  EXPECT_GT(cloud_momentum(cmaj, csharp), cloud_momentum(cmaj, gmaj));

  EXPECT_LT(seconds_since(t0), 1.0);
  verdict(1, "tension ordinals");
}

// ---- criterion 2: brute-force oracle equivalence -----------------------------

TEST(Acceptance, Criterion2OracleEquivalence) {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1002);

  for (int round = 0; round < 200; ++round) {
    PointSet ps = random_point_set(rng, 12);

    auto mtps = sia(ps);
    EXPECT_EQ(mtps, slow_sia(ps)) << "round " << round;

    std::vector<Tec> fast = siatec(ps);
    std::vector<Tec> slow = slow_siatec(ps);
    ASSERT_EQ(fast.size(), slow.size()) << "round " << round;
    for (size_t i = 0; i < fast.size(); ++i)
      EXPECT_EQ(encode_tec(fast[i]), encode_tec(slow[i])) << "round " << round;

    Cloud cloud;
    int n = rng.uniform_int(1, 12);
    for (int i = 0; i < n; ++i)
      cloud.points.push_back(
          {pitch_position(rng.uniform_int(-12, 12)), static_cast<double>(rng.uniform_int(1, 4))});
    EXPECT_NEAR(cloud_diameter(cloud), slow_cloud_diameter(cloud), 1e-9) << "round " << round;

    SpiralPoint ce = center_of_effect(cloud);
    int center = rng.uniform_int(-4, 4);
    KeyRep got = nearest_key(ce, center);
    KeyRep want = slow_nearest_key(ce, center, 7);
    EXPECT_EQ(got.tonic_fifths, want.tonic_fifths) << "round " << round;
    EXPECT_EQ(got.mode, want.mode) << "round " << round;
    EXPECT_NEAR(distance(got.position, want.position), 0, 1e-9) << "round " << round;
  }

  EXPECT_LT(seconds_since(t0), 30.0);
  verdict(2, "brute-force oracle equivalence, 200 instances");
}

// ---- criterion 3: cover correctness ------------------------------------------

TEST(Acceptance, Criterion3CoverCorrectness) {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1003);

  for (int round = 0; round < 200; ++round) {
    PointSet ps = random_point_set(rng, 40);

    Cover partition = cosiatec(ps);
    PointSet seen;
    size_t total = 0;
    for (const Tec& tec : partition.tecs) {
      PointSet cov = tec.coverage();
      total += cov.size();
      for (Point p : cov) EXPECT_FALSE(contains(seen, p)) << "round " << round;
      seen = set_union(seen, cov);
    }
    EXPECT_EQ(seen, ps) << "round " << round;
    EXPECT_EQ(total, ps.size()) << "round " << round;
    EXPECT_GE(compression_ratio(partition), 1.0) << "round " << round;

    Cover greedy = siatec_compress(ps);
    EXPECT_EQ(greedy.coverage(), ps) << "round " << round;
    EXPECT_GE(compression_ratio(greedy), 1.0) << "round " << round;

    for (const Cover* cover : {&partition, &greedy}) {
      for (const Tec& tec : cover->tecs) {
        std::string text = encode_tec(tec);
        EXPECT_EQ(encode_tec(decode_tec(text)), text) << "round " << round;
      }
    }
  }

  EXPECT_LT(seconds_since(t0), 60.0);
  verdict(3, "cover partition/coverage/ratio/round-trip, 200 sets");
}

// ---- criterion 4: motif fixture compression ----------------------------------

TEST(Acceptance, Criterion4MotifCompression) {
  Piece piece = parse_pointset_text(motif_text());
  ASSERT_EQ(piece.notes.size(), 20u);

  ScorePointSet sps = to_pointset(piece);
  PatternFilter filter;
  filter.min_len = 5;
  Cover cover = cosiatec(sps.points, filter);

  double cr = compression_ratio(cover);
  EXPECT_GT(cr, 1.3);
  // Three motif statements share one 5-point pattern; the rest are loose.
  EXPECT_DOUBLE_EQ(cr, 20.0 / 12.0);

  std::vector<int> classes = point_classes(sps.points, cover);
  std::set<int> unique(classes.begin(), classes.end());
  EXPECT_LT(static_cast<double>(unique.size()),
            static_cast<double>(piece.notes.size()) / 1.3);
  EXPECT_EQ(unique.size(), 10u);

  verdict(4, "repeated-motif fixture compresses");
}

// ---- criterion 5: independent output checker ---------------------------------

TEST(Acceptance, Criterion5ConstraintChecker) {
  fs::path dir = fresh_dir("accept_checker");
  fs::path input = dir / "motif.txt";
  spew(input, motif_text());
  fs::path fixed = dir / "fixed.txt";
  spew(fixed, "0 62\n3 65\n");

  const std::vector<std::vector<std::string>> configs = {
      {},
      {"--pattern-algo", "siatec-compress", "--seed", "2"},
      {"--min-pattern-len", "5", "--seed", "9"},
      {"--distance", "l2", "--weights", "2,1,0.5", "--seed", "5"},
      {"--segment-beats", "1", "--max-iters", "6", "--seed", "3"},
      {"--fixed-pitches", fixed.string(), "--seed", "4"},
  };

  int checked = 0;
  for (size_t i = 0; i < configs.size(); ++i) {
    fs::path out = dir / ("run" + std::to_string(i));
    fs::create_directories(out);
    std::vector<std::string> args = {"morph", input.string(), "--out-dir", out.string()};
    args.insert(args.end(), configs[i].begin(), configs[i].end());
    CliRun r = run(args);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<std::string> violations = check_morph_outputs(out);
    for (const std::string& v : violations) ADD_FAILURE() << "run " << i << ": " << v;
    ++checked;
  }
  EXPECT_EQ(checked, 6);

  verdict(5, "emitted files pass the post-hoc checker");
}

// ---- criterion 6: optimizer convergence --------------------------------------

TEST(Acceptance, Criterion6Convergence) {
  Piece piece = desk_piece();
  ASSERT_EQ(piece.notes.size(), 34u);
  MorphProblem problem = self_target_problem(piece);
  ASSERT_EQ(problem.free_count(), 34u);

  const TensionProfile& target = problem.target();
  ASSERT_GT(variance(target.diameter), 0.0);
  ASSERT_GT(variance(target.momentum), 0.0);
  ASSERT_GT(variance(target.strain), 0.0);

  Rational seg = problem.options().segment_beats;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto t0 = std::chrono::steady_clock::now();
    VnsResult r = vns(problem, 12, seed);
    EXPECT_LE(seconds_since(t0), 150.0) << "seed " << seed;

    EXPECT_GT(r.initial_objective, 0.0) << "seed " << seed;
    double prev = std::numeric_limits<double>::infinity();
    for (const TraceRow& row : r.trace.rows) {
      EXPECT_LE(row.best_objective, prev) << "seed " << seed;
      prev = row.best_objective;
    }
    EXPECT_LE(r.best_objective, 0.4 * r.initial_objective) << "seed " << seed;

    TensionProfile before = profile(realize(problem, r.initial), seg, problem.key());
    TensionProfile after = profile(realize(problem, r.best), seg, problem.key());
    EXPECT_GT(pearson(after.diameter, target.diameter), pearson(before.diameter, target.diameter))
        << "seed " << seed;
    EXPECT_GT(pearson(after.momentum, target.momentum), pearson(before.momentum, target.momentum))
        << "seed " << seed;
    EXPECT_GT(pearson(after.strain, target.strain), pearson(before.strain, target.strain))
        << "seed " << seed;
  }

  verdict(6, "34-note convergence, 20 seeded runs");
}

// ---- criterion 7: exhaustive optimum -----------------------------------------

TEST(Acceptance, Criterion7GlobalOptimum) {
  // Six free notes, a short melody over two held tones, aimed at the
  // profile of a differently pitched clone so the optimum is nonzero.
  Piece piece = make_piece({note(0, 2, 60), note(2, 2, 62), note(4, 2, 64), note(6, 2, 65),
                            note(0, 4, 50, 80, 1), note(4, 4, 52, 80, 1)});
  Piece target_piece = piece;
  const int wanted[] = {62, 61, 65, 63, 51, 49};
  for (size_t i = 0; i < target_piece.notes.size(); ++i)
    target_piece.notes[i].midi_pitch = wanted[i];
  target_piece.sort_notes();

  MorphOptions opts;
  MorphProblem problem = build_problem(piece, singleton_cover(to_pointset(piece).points),
                                       profile(target_piece, opts.segment_beats), {}, opts);
  ASSERT_EQ(problem.free_count(), 6u);
  for (const TrackRange& dom : problem.domains()) ASSERT_LE(dom.high - dom.low, 5);

  // Odometer over the full domain product.
  Assignment a = problem.template_assignment();
  for (size_t v = 0; v < a.pitches.size(); ++v) a.pitches[v] = problem.domains()[v].low;
  double optimum = std::numeric_limits<double>::infinity();
  while (true) {
    optimum = std::min(optimum, objective(problem, a));
    size_t v = 0;
    while (v < a.pitches.size() && a.pitches[v] == problem.domains()[v].high) {
      a.pitches[v] = problem.domains()[v].low;
      ++v;
    }
    if (v == a.pitches.size()) break;
    ++a.pitches[v];
  }
  ASSERT_GT(optimum, 0.0);

  int exact = 0, close = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    VnsResult r = vns(problem, 40, seed);
    EXPECT_GE(r.best_objective, optimum - 1e-9) << "seed " << seed;
    if (r.best_objective <= optimum + 1e-9) ++exact;
    if (r.best_objective <= 1.05 * optimum + 1e-12) ++close;
  }
  EXPECT_GE(exact, 95);
  EXPECT_EQ(close, 100);

  verdict(7, "search matches the exhaustive optimum");
}

// ---- criterion 8: byte determinism -------------------------------------------

TEST(Acceptance, Criterion8Determinism) {
  fs::path dir = fresh_dir("accept_determinism");
  fs::path input = dir / "motif.txt";
  spew(input, motif_text());

  auto morph_into = [&](const fs::path& out) {
    fs::create_directories(out);
    CliRun r = run({"morph", input.string(), "--out-dir", out.string(), "--min-pattern-len", "5",
                    "--max-iters", "5", "--seed", "13"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  };
  morph_into(dir / "a");
  morph_into(dir / "b");
  for (const char* name : {"output.mid", "patterns.tec", "tension_before.csv",
                           "tension_after.csv", "trace.csv", "report.json"}) {
    EXPECT_EQ(slurp(dir / "a" / name), slurp(dir / "b" / name)) << name;
  }
  EXPECT_TRUE(check_morph_outputs(dir / "a").empty());

  auto tension_into = [&](const fs::path& out) {
    fs::create_directories(out);
    CliRun r = run({"tension", input.string(), "--out-dir", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  };
  tension_into(dir / "ta");
  tension_into(dir / "tb");
  for (const char* name : {"tension.csv", "tension.plot"})
    EXPECT_EQ(slurp(dir / "ta" / name), slurp(dir / "tb" / name)) << name;

  auto patterns_into = [&](const fs::path& out) {
    fs::create_directories(out);
    CliRun r = run({"patterns", input.string(), "--out-dir", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  };
  patterns_into(dir / "pa");
  patterns_into(dir / "pb");
  EXPECT_EQ(slurp(dir / "pa" / "patterns.tec"), slurp(dir / "pb" / "patterns.tec"));

  verdict(8, "identical input+config+seed give identical bytes");
}

// ---- criterion 9: perturbation signature -------------------------------------

TEST(Acceptance, Criterion9PerturbationSignature) {
  Piece piece = desk_piece();
  MorphProblem problem = self_target_problem(piece);

  int perturbation_rows = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    VnsResult r = vns(problem, 8, seed);
    for (size_t i : uphill_rows_without_perturbation(r.trace))
      ADD_FAILURE() << "seed " << seed << ": objective climbed at non-perturbation row " << i;
    for (const TraceRow& row : r.trace.rows) perturbation_rows += row.perturbation;
  }
  // The check must have had something to bite on.
  EXPECT_EQ(perturbation_rows, 10 * 8);

  verdict(9, "objective climbs only at perturbations");
}

}  // namespace
}  // namespace tonemorph
