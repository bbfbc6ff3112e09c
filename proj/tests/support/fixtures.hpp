#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fittsnorm/core.hpp"
#include "fittsnorm/synth.hpp"

namespace fx {

using fittsnorm::Bias;
using fittsnorm::ClickEvent;
using fittsnorm::Condition;
using fittsnorm::Point;
using fittsnorm::TrialRecord;

/// One trial. A first click outside the target gets a follow-up hit at the centre.
inline TrialRecord trial(const std::string& pid, Bias bias, Condition cond, int seq, int index,
                         Point start, Point target, Point first_click, double mt_ms) {
  TrialRecord r;
  r.participant_id = pid;
  r.device = "fixture";
  r.bias = bias;
  r.condition = cond;
  r.sequence_index = seq;
  r.trial_index = index;
  r.start = start;
  r.target = target;
  r.clicks.push_back({first_click.x, first_click.y, mt_ms});
  if (fittsnorm::distance(first_click, target) > cond.width_px / 2.0) {
    r.clicks.push_back({target.x, target.y, mt_ms + 300.0});
  }
  return r;
}

/// Deviation of one endpoint in the frame of the previous target centre.
struct Deviation {
  double dx = 0.0;
  double dy = 0.0;
};

/// A full sequence on the 25-target layout circle (index step 13). Trial k's
/// first click sits at target + R(theta) * (dx, dy), theta being the direction
/// from the previous target centre.
inline std::vector<TrialRecord> sequence(const std::string& pid, Bias bias, Condition cond, int seq,
                                         const std::vector<Deviation>& devs,
                                         const std::vector<double>& mts_ms) {
  std::vector<TrialRecord> out;
  Point prev = fittsnorm::layout_target(cond.amplitude_px, 0, 25);
  Point start = prev;
  for (std::size_t k = 0; k < devs.size(); ++k) {
    const int idx = static_cast<int>(k) + 1;
    const Point target = fittsnorm::layout_target(cond.amplitude_px, (13 * idx) % 25, 25);
    const double th = std::atan2(target.y - prev.y, target.x - prev.x);
    const Point click{target.x + devs[k].dx * std::cos(th) - devs[k].dy * std::sin(th),
                      target.y + devs[k].dx * std::sin(th) + devs[k].dy * std::cos(th)};
    out.push_back(trial(pid, bias, cond, seq, idx, start, target, click, mts_ms[k]));
    prev = target;
    start = out.back().clicks.back().position();
  }
  return out;
}

/// `n` on-target trials with the given constant MT.
inline std::vector<TrialRecord> clean_sequence(const std::string& pid, Bias bias, Condition cond,
                                               int seq, double mt_ms, int n = 25,
                                               unsigned seed = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, cond.width_px / 8.0);
  std::vector<Deviation> devs;
  for (int i = 0; i < n; ++i) devs.push_back({g(rng), g(rng)});
  return sequence(pid, bias, cond, seq, devs, std::vector<double>(n, mt_ms));
}

inline const std::vector<Condition>& standard_conditions() {
  static const std::vector<Condition> c = {{320, 20}, {320, 45}, {320, 100},
                                           {500, 20}, {500, 45}, {500, 100}};
  return c;
}

/// 3 biases x 6 conditions x 25 trials for one participant.
inline std::vector<TrialRecord> full_participant(const std::string& pid, double mt_ms = 800.0,
                                                 unsigned seed = 1) {
  std::vector<TrialRecord> out;
  int seq = 0;
  for (Bias b : fittsnorm::kAllBiases) {
    for (const Condition& c : standard_conditions()) {
      auto s = clean_sequence(pid, b, c, seq, mt_ms, 25, seed + static_cast<unsigned>(seq));
      out.insert(out.end(), s.begin(), s.end());
      ++seq;
    }
  }
  return out;
}

}  // namespace fx
