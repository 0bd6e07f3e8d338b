#include "cli/commands.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "core/errors.h"
#include "core/midi_io.h"
#include "core/pointset_text.h"
#include "optimize/search.h"
#include "patterns/cover.h"

namespace tonemorph {
namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

void write_file(const fs::path& path, const std::vector<uint8_t>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

/// MIDI if it starts with the MThd magic, plain text otherwise.
Piece load_piece(const RunConfig& config) {
  std::string raw = read_file(config.input_path);
  if (raw.size() >= 4 && raw.compare(0, 4, "MThd") == 0) {
    std::vector<uint8_t> bytes(raw.begin(), raw.end());
    return parse_midi(bytes, MidiReadOptions{config.tatums_per_beat});
  }
  Piece piece = parse_pointset_text(raw);
  if (config.tatums_per_beat > 0) piece.tatums_per_beat = config.tatums_per_beat;
  return piece;
}

PatternFilter filter_of(const RunConfig& config) {
  return PatternFilter{config.min_pattern_len, config.max_pattern_len};
}

Cover run_cover(const RunConfig& config, const PointSet& points) {
  if (config.pattern_algo == "cosiatec") return cosiatec(points, filter_of(config));
  if (config.pattern_algo == "siatec-compress") return siatec_compress(points, filter_of(config));
  throw Error("unknown pattern algorithm '" + config.pattern_algo + "'");
}

MorphOptions options_of(const RunConfig& config) {
  MorphOptions options;
  options.weights = config.weights;
  options.penalty = config.penalty;
  options.segment_beats = config.segment_beats;
  options.metric = config.metric;
  return options;
}

fs::path ensure_out_dir(const RunConfig& config) {
  fs::path dir = config.out_dir.empty() ? fs::path(".") : fs::path(config.out_dir);
  fs::create_directories(dir);
  return dir;
}

/// Lines of `note_index midi_pitch`, # comments allowed.
std::map<int, int> parse_fixed_pitches(const std::string& text) {
  std::map<int, int> fixed;
  std::istringstream lines(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream fields(line);
    long long note, pitch;
    if (!(fields >> note)) continue;  // blank or comment-only line
    std::string rest;
    if (!(fields >> pitch) || (fields >> rest))
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'note_index midi_pitch'");
    fixed[static_cast<int>(note)] = static_cast<int>(pitch);
  }
  return fixed;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  size_t n = a.size();
  if (n == 0 || n != b.size()) return 0;
  double ma = 0, mb = 0;
  for (size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double cov = 0, va = 0, vb = 0;
  for (size_t i = 0; i < n; ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  if (va <= 0 || vb <= 0) return 0;
  return cov / std::sqrt(va * vb);
}

nlohmann::ordered_json correlation_json(const TensionProfile& profile,
                                        const TensionProfile& target) {
  return nlohmann::ordered_json{{"diameter", pearson(profile.diameter, target.diameter)},
                                {"momentum", pearson(profile.momentum, target.momentum)},
                                {"strain", pearson(profile.strain, target.strain)}};
}

std::string plot_script() {
  return
      "set datafile separator \",\"\n"
      "set xlabel \"beats\"\n"
      "set ylabel \"tension\"\n"
      "set key outside top\n"
      "plot \"tension.csv\" every ::1 using 2:3 with lines title \"cloud diameter\", \\\n"
      "     \"tension.csv\" every ::1 using 2:4 with lines title \"cloud momentum\", \\\n"
      "     \"tension.csv\" every ::1 using 2:5 with lines title \"tensile strain\"\n";
}

std::string cover_to_text(const Cover& cover) {
  std::string out;
  for (const Tec& tec : cover.tecs) {
    out += encode_tec(tec);
    out += '\n';
  }
  return out;
}

size_t unique_pitch_count(const PointSet& points, const Cover& cover) {
  std::vector<int> classes = point_classes(points, cover);
  size_t up = 0;
  for (size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == static_cast<int>(i)) ++up;
  }
  return up;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace

int cmd_tension(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Piece piece = load_piece(config);
    TensionProfile prof = profile(piece, config.segment_beats);
    fs::path dir = ensure_out_dir(config);
    write_file(dir / "tension.csv", profile_to_csv(prof));
    write_file(dir / "tension.plot", plot_script());
    out << "key=" << (prof.key.tonic_fifths >= 0 ? "+" : "") << prof.key.tonic_fifths << " "
        << mode_name(prof.key.mode) << " segments=" << prof.size() << "\n";
    return kExitOk;
  });
}

int cmd_patterns(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Piece piece = load_piece(config);
    ScorePointSet sps = to_pointset(piece);
    Cover cover = run_cover(config, sps.points);
    fs::path dir = ensure_out_dir(config);
    write_file(dir / "patterns.tec", cover_to_text(cover));
    char buf[96];
    std::snprintf(buf, sizeof(buf), "CR=%.3f TECs=%zu UP=%zu\n", compression_ratio(cover),
                  cover.tecs.size(), unique_pitch_count(sps.points, cover));
    out << buf;
    return kExitOk;
  });
}

int cmd_morph(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Piece piece = load_piece(config);
    ScorePointSet sps = to_pointset(piece);
    Cover cover = run_cover(config, sps.points);

    TensionProfile target;
    if (!config.target_profile_path.empty()) {
      target = parse_profile_csv(read_file(config.target_profile_path));
      target.segment_beats = config.segment_beats;
    } else {
      target = profile(piece, config.segment_beats);
    }

    std::map<int, int> fixed;
    if (!config.fixed_pitches_path.empty()) {
      fixed = parse_fixed_pitches(read_file(config.fixed_pitches_path));
    }

    MorphProblem problem = build_problem(piece, cover, target, fixed, options_of(config));
    VnsResult result = vns(problem, config.max_iters, config.seed);

    Piece initial_piece = realize(problem, result.initial);
    Piece best_piece = realize(problem, result.best);

    fs::path dir = ensure_out_dir(config);
    write_file(dir / "output.mid", write_midi(best_piece));
    write_file(dir / "trace.csv", trace_to_csv(result.trace, config.trace_timing));

    // The cover restated in output coordinates: every pattern point carries
    // the realized pitch of its template point, translators are unchanged.
    // Checked against output.mid by tests, and checkable by anyone.
    std::vector<int> realized = realized_pitches(problem, result.best);
    Cover realized_cover;
    for (const Tec& tec : cover.tecs) {
      PointSet pattern;
      for (Point p : tec.pattern) {
        int idx = sps.point_of(p);
        int note = sps.note_indices[static_cast<size_t>(idx)].front();
        pattern.push_back(Point{p.time, realized[static_cast<size_t>(note)]});
      }
      realized_cover.tecs.push_back(make_tec(std::move(pattern), tec.translators));
    }
    write_file(dir / "patterns.tec", cover_to_text(realized_cover));

    // Both assignments profiled in the problem's key context, the one the
    // objective is measured in, so these rows compare against the target.
    TensionProfile before = profile(initial_piece, config.segment_beats, problem.key());
    TensionProfile after = profile(best_piece, config.segment_beats, problem.key());
    write_file(dir / "tension_before.csv", profile_to_csv(before));
    write_file(dir / "tension_after.csv", profile_to_csv(after));

    nlohmann::ordered_json report;
    report["command"] = "morph";
    report["input"] = config.input_path;
    report["seed"] = config.seed;
    report["iterations"] = result.iterations;
    report["pattern_algo"] = config.pattern_algo;
    report["unique_pitches"] = problem.free_count();
    report["tec_count"] = cover.tecs.size();
    report["compression_ratio"] = compression_ratio(cover);
    nlohmann::ordered_json ranges = nlohmann::ordered_json::array();
    for (size_t t = 0; t < problem.track_ranges().size(); ++t) {
      ranges.push_back({{"track", t},
                        {"low", problem.track_ranges()[t].low},
                        {"high", problem.track_ranges()[t].high}});
    }
    report["track_ranges"] = ranges;
    report["objective"] = {{"initial", result.initial_objective},
                           {"best", result.best_objective},
                           {"final", result.final_objective}};
    report["correlation"] = {{"initial", correlation_json(before, target)},
                             {"final", correlation_json(after, target)}};
    write_file(dir / "report.json", report.dump(2) + "\n");

    char buf[128];
    std::snprintf(buf, sizeof(buf), "objective initial=%.6g best=%.6g moves=%lld\n",
                  result.initial_objective, result.best_objective,
                  static_cast<long long>(result.trace.rows.empty()
                                             ? 0
                                             : result.trace.rows.back().move));
    out << buf;
    return kExitOk;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pattern-aware tension analysis and pitch morphing"};
  app.require_subcommand(1);

  RunConfig config;
  std::string segment_beats = "1/2";
  std::string weights = "1,1,1";
  std::string distance = "l1";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", config.input_path, "MIDI file or point-set text")->required();
    cmd->add_option("--out-dir", config.out_dir, "output directory (created if missing)");
    cmd->add_option("--tatums-per-beat", config.tatums_per_beat,
                    "grid steps per quarter beat; 0 = eighth-note default")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--segment-beats", segment_beats, "tension window length in beats (a/b or decimal)");
  };
  auto add_patterns = [&](CLI::App* cmd) {
    cmd->add_option("--pattern-algo", config.pattern_algo, "cosiatec | siatec-compress")
        ->check(CLI::IsMember({"cosiatec", "siatec-compress"}));
    cmd->add_option("--min-pattern-len", config.min_pattern_len, "smallest admissible pattern");
    cmd->add_option("--max-pattern-len", config.max_pattern_len,
                    "largest admissible pattern, 0 = unbounded");
  };

  CLI::App* tension = app.add_subcommand("tension", "tension profile of a piece");
  add_common(tension);

  CLI::App* patterns = app.add_subcommand("patterns", "repeated-pattern cover of a piece");
  add_common(patterns);
  add_patterns(patterns);

  CLI::App* morph = app.add_subcommand("morph", "reassign pitches toward a target tension profile");
  add_common(morph);
  add_patterns(morph);
  morph->add_option("--weights", weights, "measure weights: diameter,momentum,strain");
  morph->add_option("--penalty", config.penalty, "cost per violated fixed pitch");
  morph->add_option("--distance", distance, "profile distance: l1 | l2")
      ->check(CLI::IsMember({"l1", "l2"}));
  morph->add_option("--max-iters", config.max_iters, "perturbation cycles")
      ->check(CLI::NonNegativeNumber);
  morph->add_option("--seed", config.seed, "random seed");
  morph->add_option("--target-profile", config.target_profile_path,
                    "target tension CSV (defaults to the piece's own profile)");
  morph->add_option("--fixed-pitches", config.fixed_pitches_path,
                    "file of 'note_index midi_pitch' lines, enforced by penalty");
  morph->add_flag("--trace-timing", config.trace_timing,
                  "write wall-clock times into trace.csv (breaks byte determinism)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    config.segment_beats = parse_rational(segment_beats);
    if (config.segment_beats.num <= 0) throw Error("--segment-beats must be positive");
    std::istringstream ws(weights);
    std::string cell;
    std::vector<double> wv;
    while (std::getline(ws, cell, ',')) wv.push_back(std::stod(cell));
    if (wv.size() != 3) throw Error("--weights needs three comma-separated numbers");
    config.weights = {wv[0], wv[1], wv[2]};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  config.metric = distance == "l2" ? DistanceMetric::L2 : DistanceMetric::L1;

  if (tension->parsed()) {
    config.command = "tension";
    return cmd_tension(config, out, err);
  }
  if (patterns->parsed()) {
    config.command = "patterns";
    return cmd_patterns(config, out, err);
  }
  config.command = "morph";
  return cmd_morph(config, out, err);
}

}  // namespace tonemorph
