#include "fittsnorm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "detail/parallel.hpp"
#include "fittsnorm/effective.hpp"
#include "fittsnorm/error.hpp"

namespace fittsnorm {

void AgentProfile::validate() const {
  for (double u : utilization) {
    if (!(u > 0.0)) throw ValidationError("utilization must be positive");
  }
  if (!(sigma_y_ratio > 0.0)) throw ValidationError("sigma_y ratio must be positive");
  if (!(sigma_y_sensitivity >= 0.0 && sigma_y_sensitivity <= 1.0)) {
    throw ValidationError("sigma_y sensitivity must lie in [0, 1]");
  }
  if (!(slope_s_per_bit > 0.0)) throw ValidationError("slope must be positive");
  if (!(mt_noise_sd_s >= 0.0) || !(mt_noise_clip_sd > 0.0)) {
    throw ValidationError("noise settings must be non-negative");
  }
  if (!(min_mt_ms > 0.0)) throw ValidationError("minimum MT must be positive");
  if (!(intercept_jitter_sd_s >= 0.0) || !(slope_jitter_sd >= 0.0) || !(spread_jitter_sd >= 0.0)) {
    throw ValidationError("jitter sds must be non-negative");
  }
  if (!(reaim_sd_fraction > 0.0) || !(reaim_delay_min_ms >= 0.0) ||
      !(reaim_delay_max_ms >= reaim_delay_min_ms)) {
    throw ValidationError("invalid re-aim settings");
  }
  for (double u : utilization) {
    if (!(1.0 + sigma_y_sensitivity * (u - 1.0) > 0.0)) {
      throw ValidationError("implied sigma_y is not positive");
    }
  }
}

ExperimentDesign ExperimentDesign::standard() {
  ExperimentDesign d;
  d.amplitudes = {320.0, 500.0};
  d.widths = {20.0, 45.0, 100.0};
  d.biases = {kAllBiases.begin(), kAllBiases.end()};
  return d;
}

void ExperimentDesign::validate() const {
  if (amplitudes.empty() || widths.empty() || biases.empty()) {
    throw ValidationError("design needs at least one amplitude, width and bias");
  }
  for (double a : amplitudes) {
    for (double w : widths) Condition{a, w}.validate();
  }
  if (include_practice) practice_condition.validate();
  if (trials_per_sequence < 2 || trials_per_sequence > kMaxTrialsPerSequence) {
    throw ValidationError("trials per sequence must lie in 2..25");
  }
}

Point layout_target(double amplitude_px, int index, int n_targets) {
  const double angle = 2.0 * std::numbers::pi * index / n_targets;
  return {kLayoutCenter.x + amplitude_px / 2.0 * std::cos(angle),
          kLayoutCenter.y + amplitude_px / 2.0 * std::sin(angle)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string synthetic_participant_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "P%03zu", index + 1);
  return buf;
}

namespace {

constexpr int kTargetsOnCircle = 25;

double round6(double v) { return std::round(v * 1e6) / 1e6; }
Point round6(Point p) { return {round6(p.x), round6(p.y)}; }

struct ParticipantTraits {
  double intercept_s = 0.0;
  double slope = 0.0;
  double spread = 1.0;
};

void generate_sequence(const AgentProfile& prof, const ParticipantTraits& traits,
                       const std::string& pid, Bias bias, const Condition& cond, int seq,
                       bool practice, int n_trials, std::mt19937_64& rng,
                       std::vector<TrialRecord>& out) {
  std::normal_distribution<double> std_normal(0.0, 1.0);
  std::uniform_real_distribution<double> delay(prof.reaim_delay_min_ms, prof.reaim_delay_max_ms);
  const auto bi = static_cast<std::size_t>(bias);
  const double unit = cond.width_px / kEffectiveWidthFactor * traits.spread;
  const double u = prof.utilization[bi];
  const double sigma_x = u * unit;
  const double sigma_y =
      prof.sigma_y_ratio * unit * (1.0 + prof.sigma_y_sensitivity * (u - 1.0));
  const double offset = prof.aim_offset_sigma[bi] * sigma_x;
  const double half_w = cond.width_px / 2.0;

  std::vector<double> dxs(n_trials);
  std::vector<double> dys(n_trials);
  for (int k = 0; k < n_trials; ++k) dxs[k] = offset + sigma_x * std_normal(rng);
  for (int k = 0; k < n_trials; ++k) dys[k] = sigma_y * std_normal(rng);

  const std::size_t first = out.size();
  Point prev_center = round6(layout_target(cond.amplitude_px, 0, kTargetsOnCircle));
  Point start = prev_center;
  std::vector<double> realized_dx(n_trials);
  for (int k = 1; k <= n_trials; ++k) {
    const int ti = (kTargetIndexStep * k) % kTargetsOnCircle;
    const Point target = round6(layout_target(cond.amplitude_px, ti, kTargetsOnCircle));
    const double theta = std::atan2(target.y - prev_center.y, target.x - prev_center.x);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double dx = dxs[k - 1];
    const double dy = dys[k - 1];
    const Point click =
        round6(Point{target.x + dx * c - dy * s, target.y + dx * s + dy * c});
    realized_dx[k - 1] = (click.x - target.x) * c + (click.y - target.y) * s;

    TrialRecord r;
    r.participant_id = pid;
    r.device = "synthetic";
    r.bias = bias;
    r.condition = cond;
    r.sequence_index = seq;
    r.trial_index = k;
    r.start = start;
    r.target = target;
    r.practice = practice;
    r.clicks.push_back({click.x, click.y, 0.0});
    if (distance(click, target) > half_w) {
      for (;;) {
        const double rx = cond.width_px * prof.reaim_sd_fraction * std_normal(rng);
        const double ry = cond.width_px * prof.reaim_sd_fraction * std_normal(rng);
        const Point hit = round6(Point{target.x + rx, target.y + ry});
        if (distance(hit, target) < half_w - 1e-5) {
          r.clicks.push_back({hit.x, hit.y, std::round(delay(rng))});
          break;
        }
      }
    }
    out.push_back(std::move(r));
    prev_center = target;
    start = out.back().clicks.back().position();
  }

  // The law uses the spread the agent actually produced, measured in the frame
  // of the previous target centre.
  double mean_dx = 0.0;
  for (double v : realized_dx) mean_dx += v;
  mean_dx /= n_trials;
  double ss = 0.0;
  for (double v : realized_dx) ss += (v - mean_dx) * (v - mean_dx);
  const double realized_sigma = std::sqrt(ss / (n_trials - 1));
  const double id = std::log2(cond.amplitude_px / (kEffectiveWidthFactor * realized_sigma) + 1.0);

  std::vector<double> noise(n_trials);
  for (double& z : noise) {
    z = std::clamp(prof.mt_noise_sd_s * std_normal(rng), -prof.mt_noise_clip_sd * prof.mt_noise_sd_s,
                   prof.mt_noise_clip_sd * prof.mt_noise_sd_s);
  }
  double mean_noise = 0.0;
  for (double z : noise) mean_noise += z;
  mean_noise /= n_trials;

  const double base_ms = 1000.0 * (traits.intercept_s + traits.slope * id);
  for (int k = 0; k < n_trials; ++k) {
    TrialRecord& r = out[first + k];
    const double mt = std::max(prof.min_mt_ms, std::round(base_ms + 1000.0 * (noise[k] - mean_noise)));
    r.clicks[0].t_ms = mt;
    for (std::size_t c = 1; c < r.clicks.size(); ++c) r.clicks[c].t_ms += r.clicks[c - 1].t_ms;
  }
}

std::vector<TrialRecord> generate_participant(const AgentProfile& prof,
                                              const ExperimentDesign& design, std::size_t index,
                                              std::uint64_t seed) {
  const std::uint64_t pseed = splitmix64(seed ^ splitmix64(index + 1));
  std::mt19937_64 trait_rng(splitmix64(pseed));
  std::normal_distribution<double> std_normal(0.0, 1.0);
  ParticipantTraits traits;
  traits.spread = std::exp(prof.spread_jitter_sd * std_normal(trait_rng));
  traits.intercept_s = prof.intercept_s + prof.intercept_jitter_sd_s * std_normal(trait_rng);
  traits.slope = prof.slope_s_per_bit * std::exp(prof.slope_jitter_sd * std_normal(trait_rng));

  const std::string pid = synthetic_participant_id(index);
  std::vector<TrialRecord> out;
  int seq = 0;
  for (Bias bias : design.biases) {
    auto run = [&](const Condition& cond, bool practice) {
      std::mt19937_64 rng(splitmix64(pseed + 0x632be59bd9b4e019ULL * static_cast<std::uint64_t>(seq + 1)));
      generate_sequence(prof, traits, pid, bias, cond, seq, practice, design.trials_per_sequence,
                        rng, out);
      ++seq;
    };
    if (design.include_practice) run(design.practice_condition, true);
    for (double a : design.amplitudes) {
      for (double w : design.widths) run(Condition{a, w}, false);
    }
  }
  return out;
}

}  // namespace

std::vector<TrialRecord> generate_population(const AgentProfile& profile,
                                             std::size_t n_participants,
                                             const ExperimentDesign& design, std::uint64_t seed,
                                             std::size_t max_workers) {
  profile.validate();
  design.validate();
  if (n_participants == 0) throw ValidationError("participant count must be positive");
  std::vector<std::vector<TrialRecord>> parts(n_participants);
  detail::parallel_for(
      n_participants,
      [&](std::size_t p) { parts[p] = generate_participant(profile, design, p, seed); },
      max_workers);
  std::vector<TrialRecord> out;
  for (auto& part : parts) {
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace fittsnorm
