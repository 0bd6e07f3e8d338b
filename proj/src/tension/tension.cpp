#include "tension/tension.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "core/errors.h"

namespace tonemorph {

SegmentPlan SegmentPlan::build(const Piece& piece, Rational segment_beats) {
  if (segment_beats.num <= 0) throw Error("segment length must be positive");
  SegmentPlan plan;
  plan.segment_beats = segment_beats;
  // Window w covers tatum span [w*step, (w+1)*step) with step = s * tpb.
  Rational step = segment_beats * Rational(piece.tatums_per_beat);
  plan.count = ceil_div(piece.length_tatums() * step.den, step.num);
  plan.contributors.resize(static_cast<size_t>(plan.count));
  for (int i = 0; i < static_cast<int>(piece.notes.size()); ++i) {
    const NoteEvent& n = piece.notes[i];
    // Windows the note can touch: floor(onset/step) .. windows before end/step.
    int64_t first = (n.onset * step.den) / step.num;
    for (int64_t w = first; w < plan.count; ++w) {
      Rational lo = max(Rational(w) * step, Rational(n.onset));
      Rational hi = min(Rational(w + 1) * step, Rational(n.end()));
      if (!(lo < hi)) {
        if (Rational(w) * step >= Rational(n.end())) break;
        continue;
      }
      plan.contributors[static_cast<size_t>(w)].push_back(
          {i, n.onset, (hi - lo).to_double()});
    }
  }
  return plan;
}

Cloud build_cloud(const std::vector<SegmentContribution>& contributions,
                  const std::vector<int>& pitch_of, const Speller& speller) {
  // Chain order follows the sounding score, not the source order: onset,
  // then current pitch, then the stable input order.
  std::vector<const SegmentContribution*> order;
  order.reserve(contributions.size());
  for (const SegmentContribution& c : contributions) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [&](const SegmentContribution* a, const SegmentContribution* b) {
                     int pa = pitch_of[static_cast<size_t>(a->note)];
                     int pb = pitch_of[static_cast<size_t>(b->note)];
                     return std::tie(a->onset, pa) < std::tie(b->onset, pb);
                   });
  Cloud cloud;
  SpiralPoint context = speller.key().position;
  for (const SegmentContribution* c : order) {
    auto spelled = speller.spell_point(pitch_of[static_cast<size_t>(c->note)], context);
    cloud.points.push_back({spelled.position, c->weight});
    context = center_of_effect(cloud);
  }
  return cloud;
}

std::vector<Cloud> segment_clouds(const Piece& piece, Rational segment_beats, const KeyRep& key,
                                  const SpiralParams& params) {
  SegmentPlan plan = SegmentPlan::build(piece, segment_beats);
  Speller speller(key, params);
  std::vector<int> pitch_of(piece.notes.size());
  for (size_t i = 0; i < piece.notes.size(); ++i) pitch_of[i] = piece.notes[i].midi_pitch;
  std::vector<Cloud> clouds;
  clouds.reserve(plan.contributors.size());
  for (const auto& contributions : plan.contributors) {
    clouds.push_back(build_cloud(contributions, pitch_of, speller));
  }
  return clouds;
}

std::vector<Cloud> segment_clouds(const Piece& piece, Rational segment_beats) {
  return segment_clouds(piece, segment_beats, global_key(piece));
}

// ---- measures ---------------------------------------------------------------

double cloud_diameter(const Cloud& cloud) {
  double best = 0;
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    for (size_t j = i + 1; j < cloud.points.size(); ++j) {
      best = std::max(best, distance(cloud.points[i].position, cloud.points[j].position));
    }
  }
  return best;
}

double cloud_momentum(const Cloud& prev, const Cloud& current) {
  if (prev.empty() || current.empty()) return 0;
  return distance(center_of_effect(prev), center_of_effect(current));
}

double tensile_strain(const Cloud& cloud, const KeyRep& key) {
  if (cloud.empty()) return 0;
  return distance(center_of_effect(cloud), key.position);
}

MeasureVectors measures_from_clouds(const std::vector<Cloud>& clouds, const KeyRep& key) {
  MeasureVectors out;
  size_t n = clouds.size();
  out.diameter.resize(n, 0.0);
  out.momentum.resize(n, 0.0);
  out.strain.resize(n, 0.0);
  bool have_carry = false;
  SpiralPoint carry;  // last center of effect seen
  for (size_t s = 0; s < n; ++s) {
    if (!clouds[s].empty()) {
      out.diameter[s] = cloud_diameter(clouds[s]);
      SpiralPoint ce = center_of_effect(clouds[s]);
      out.momentum[s] = (s > 0 && have_carry) ? distance(carry, ce) : 0.0;
      carry = ce;
      have_carry = true;
    }
    // Empty window: diameter 0, the carried center stands still (momentum 0).
    out.strain[s] = have_carry ? distance(carry, key.position) : 0.0;
  }
  return out;
}

// ---- profiles ----------------------------------------------------------------

TensionProfile profile(const Piece& piece, Rational segment_beats, const SpiralParams& params) {
  return profile(piece, segment_beats, global_key(piece, params), params);
}

TensionProfile profile(const Piece& piece, Rational segment_beats, const KeyRep& key,
                       const SpiralParams& params) {
  std::vector<Cloud> clouds = segment_clouds(piece, segment_beats, key, params);
  MeasureVectors m = measures_from_clouds(clouds, key);
  TensionProfile out;
  out.segment_beats = segment_beats;
  out.key = key;
  out.diameter = std::move(m.diameter);
  out.momentum = std::move(m.momentum);
  out.strain = std::move(m.strain);
  return out;
}

double profile_distance(const TensionProfile& a, const TensionProfile& b,
                        const std::array<double, 3>& weights, DistanceMetric metric) {
  const char* names[3] = {"diameter", "momentum", "strain"};
  const std::vector<double>* av[3] = {&a.diameter, &a.momentum, &a.strain};
  const std::vector<double>* bv[3] = {&b.diameter, &b.momentum, &b.strain};
  double total = 0;
  for (int m = 0; m < 3; ++m) {
    if (av[m]->size() != bv[m]->size())
      throw Error(std::string("profile length mismatch: ") + names[m] + " has " +
                  std::to_string(av[m]->size()) + " vs " + std::to_string(bv[m]->size()) +
                  " segments");
    double acc = 0;
    for (size_t j = 0; j < av[m]->size(); ++j) {
      double d = (*av[m])[j] - (*bv[m])[j];
      acc += metric == DistanceMetric::L1 ? std::abs(d) : d * d;
    }
    if (metric == DistanceMetric::L2) acc = std::sqrt(acc);
    total += weights[static_cast<size_t>(m)] * acc;
  }
  return total;
}

std::string profile_to_csv(const TensionProfile& profile) {
  std::string out = "segment,onset_beats,diameter,momentum,strain\n";
  char buf[160];
  for (size_t s = 0; s < profile.size(); ++s) {
    double onset = (Rational(static_cast<int64_t>(s)) * profile.segment_beats).to_double();
    std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f,%.6f\n", s, onset, profile.diameter[s],
                  profile.momentum[s], profile.strain[s]);
    out += buf;
  }
  return out;
}

TensionProfile parse_profile_csv(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  size_t line_no = 0;
  TensionProfile out;
  bool saw_header = false;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "segment,onset_beats,diameter,momentum,strain")
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected header segment,onset_beats,diameter,momentum,strain");
      saw_header = true;
      continue;
    }
    std::istringstream fields(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5)
      throw ParseError("line " + std::to_string(line_no) + ": expected 5 columns, got " +
                       std::to_string(cells.size()));
    try {
      size_t used = 0;
      out.diameter.push_back(std::stod(cells[2], &used));
      out.momentum.push_back(std::stod(cells[3], &used));
      out.strain.push_back(std::stod(cells[4], &used));
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad number");
    }
  }
  if (!saw_header) throw ParseError("empty profile CSV");
  return out;
}

}  // namespace tonemorph
