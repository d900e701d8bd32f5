#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace anticipate {

/// Constant-bit-rate stream over a window of `num_slots` slots.
struct VideoSpec {
  double bits_per_slot = 250'000.0;          // V
  double slot_duration_s = 1.0 / 6.0;        // T_d
  std::size_t num_slots = 96;                // T
  double max_carryover_bits = 5 * 250'000.0; // Z
  std::optional<double> avg_rate_bps;        // R, checked against V / T_d when set

  void validate() const;
  double total_bits() const { return bits_per_slot * static_cast<double>(num_slots); }
};

struct BufferStep {
  double next_carryover_bits = 0.0;
  double played_bits = 0.0;
  bool outage = false;
};

/// One slot of the play-out buffer. If `carryover + received` covers V the
/// slot plays V bits and the excess is carried; otherwise playback stalls,
/// nothing is played and every buffered bit is kept. `tolerance_bits` absorbs
/// round-off in plans that hit V exactly.
BufferStep step_buffer(double carryover_bits, double received_bits, double bits_per_slot,
                       double tolerance_bits = 0.0);

struct BufferTimeline {
  std::vector<double> received_bits;
  std::vector<double> carryover_bits;  // z_t at the start of slot t, z_1 = 0
  std::vector<double> played_bits;
  std::vector<bool> outage_flags;
  double final_carryover_bits = 0.0;
  /// Slots whose carry-over exceeds the spec's Z; reported, never clipped.
  std::vector<std::size_t> carryover_violations;

  std::size_t outage_count() const;
};

/// Default round-off allowance used when replaying planner output: 1e-6 V.
double playback_tolerance(const VideoSpec& spec);

/// Folds step_buffer over a received-bits plan.
BufferTimeline simulate_playback(std::span<const double> received_bits, const VideoSpec& spec);
BufferTimeline simulate_playback(std::span<const double> received_bits, const VideoSpec& spec,
                                 double tolerance_bits);

}  // namespace anticipate
