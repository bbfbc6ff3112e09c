#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "fittsnorm/core.hpp"

namespace fittsnorm {

/// Behavioural parameters of a synthetic participant population.
///
/// Along-axis spread: sigma_x = u[bias] * W / 4.133 * j, where j is a per-participant
/// log-normal spread factor. Orthogonal spread: sigma_y = rho * W / 4.133 * j *
/// (1 + s * (u[bias] - 1)), so sigma_y / sigma_x = rho * (1 + s*(u - 1)) / u and
/// s = 0 keeps sigma_y fixed across biases while s = 1 scales it like sigma_x.
struct AgentProfile {
  std::array<double, 3> utilization{0.8, 1.0, 1.3};  ///< u per bias
  double sigma_y_ratio = 0.85;                          ///< rho
  double sigma_y_sensitivity = 0.65;                    ///< s
  /// Mean along-axis aim point per bias, in units of that bias's sigma_x
  /// (negative = undershoot).
  std::array<double, 3> aim_offset_sigma{-1.0, 0.0, 1.0};

  double intercept_s = 0.1;     ///< a0
  double slope_s_per_bit = 0.15;  ///< b0
  double mt_noise_sd_s = 0.08;
  /// Per-trial noise is clipped at this many SDs and centred within each sequence.
  double mt_noise_clip_sd = 2.5;
  double min_mt_ms = 50.0;

  double intercept_jitter_sd_s = 0.05;
  double slope_jitter_sd = 0.0;   ///< log-normal sd of the per-participant slope factor
  double spread_jitter_sd = 0.15;  ///< log-normal sd of j

  double reaim_sd_fraction = 0.125;  ///< re-aim scatter sd as a fraction of W
  double reaim_delay_min_ms = 250.0;
  double reaim_delay_max_ms = 450.0;

  /// Defaults: spread grows about 62% along the axis and 37% across it from accurate to fast.
  [[nodiscard]] static AgentProfile calibrated() { return {}; }
  /// Throws ValidationError on out-of-range parameters.
  void validate() const;
};

struct ExperimentDesign {
  std::vector<double> amplitudes;
  std::vector<double> widths;
  std::vector<Bias> biases;
  int trials_per_sequence = kMaxTrialsPerSequence;
  bool include_practice = false;
  Condition practice_condition{460.0, 50.0};

  /// 2 amplitudes x 3 widths x 3 biases, 25 trials per sequence.
  [[nodiscard]] static ExperimentDesign standard();
  void validate() const;
};

/// Layout-circle centre in task-area pixels.
inline constexpr Point kLayoutCenter{600.0, 400.0};
inline constexpr int kTargetIndexStep = 13;

/// Centre of target `index` (0..n-1) on a layout circle of diameter A.
[[nodiscard]] Point layout_target(double amplitude_px, int index, int n_targets);

/// Deterministic 64-bit mixer used to derive independent random streams.
[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);

/// Participant ids "P001", "P002", ...
[[nodiscard]] std::string synthetic_participant_id(std::size_t index);

/// Simulated trial logs for `n_participants` agents. Each participant draws from
/// its own stream derived from `seed`, so the result is independent of thread
/// count and identical for identical arguments.
[[nodiscard]] std::vector<TrialRecord> generate_population(const AgentProfile& profile,
                                                           std::size_t n_participants,
                                                           const ExperimentDesign& design,
                                                           std::uint64_t seed,
                                                           std::size_t max_workers = 0);

}  // namespace fittsnorm
