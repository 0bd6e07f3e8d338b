#pragma once

#include <array>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "core/rational.h"
#include "tension/tension.h"

namespace tonemorph {

/// Everything a command run needs, normally filled from argv.
struct RunConfig {
  std::string command;  // tension | patterns | morph
  std::string input_path;
  std::string out_dir = ".";

  int tatums_per_beat = 0;  // 0 = default eighth-note grid for MIDI input
  Rational segment_beats{1, 2};

  std::string pattern_algo = "cosiatec";  // or siatec-compress
  size_t min_pattern_len = 1;
  size_t max_pattern_len = 0;  // 0 = unbounded

  std::array<double, 3> weights{1.0, 1.0, 1.0};
  double penalty = 1e6;
  DistanceMetric metric = DistanceMetric::L1;
  int max_iters = 10;
  uint64_t seed = 1;
  std::string target_profile_path;
  std::string fixed_pitches_path;
  bool trace_timing = false;
};

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBadInput = 3;
inline constexpr int kExitInfeasible = 4;

int cmd_tension(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_patterns(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_morph(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (without the program name) and dispatches. Returns the
/// process exit code; never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace tonemorph
