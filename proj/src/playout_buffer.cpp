#include "anticipate/playout_buffer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace anticipate {

void VideoSpec::validate() const {
  if (!(bits_per_slot > 0) || !std::isfinite(bits_per_slot)) {
    throw std::invalid_argument("video.bits_per_slot: must be > 0");
  }
  if (!(slot_duration_s > 0) || !std::isfinite(slot_duration_s)) {
    throw std::invalid_argument("video.slot_duration_s: must be > 0");
  }
  if (num_slots < 1) throw std::invalid_argument("video.num_slots: must be >= 1");
  if (!(max_carryover_bits >= 0) || !std::isfinite(max_carryover_bits)) {
    throw std::invalid_argument("video.max_carryover_bits: must be >= 0");
  }
  if (avg_rate_bps) {
    const double r = *avg_rate_bps;
    if (!(r > 0) || std::abs(r - bits_per_slot / slot_duration_s) / r > 1e-6) {
      throw std::invalid_argument("video.avg_rate_bps: inconsistent with bits_per_slot / slot_duration_s");
    }
  }
}

BufferStep step_buffer(double carryover_bits, double received_bits, double bits_per_slot,
                       double tolerance_bits) {
  if (carryover_bits < 0 || received_bits < 0 || bits_per_slot < 0 || tolerance_bits < 0) {
    throw std::invalid_argument("step_buffer: inputs must be non-negative");
  }
  const double available = carryover_bits + received_bits;
  if (available + tolerance_bits >= bits_per_slot) {
    return {std::max(available - bits_per_slot, 0.0), bits_per_slot, false};
  }
  return {available, 0.0, true};
}

std::size_t BufferTimeline::outage_count() const {
  return static_cast<std::size_t>(std::count(outage_flags.begin(), outage_flags.end(), true));
}

double playback_tolerance(const VideoSpec& spec) { return 1e-6 * spec.bits_per_slot; }

BufferTimeline simulate_playback(std::span<const double> received_bits, const VideoSpec& spec) {
  return simulate_playback(received_bits, spec, playback_tolerance(spec));
}

BufferTimeline simulate_playback(std::span<const double> received_bits, const VideoSpec& spec,
                                 double tolerance_bits) {
  spec.validate();
  if (received_bits.size() != spec.num_slots) {
    throw std::invalid_argument("simulate_playback: plan length " +
                                std::to_string(received_bits.size()) + " != num_slots " +
                                std::to_string(spec.num_slots));
  }
  BufferTimeline timeline;
  const std::size_t slots = received_bits.size();
  timeline.received_bits.assign(received_bits.begin(), received_bits.end());
  timeline.carryover_bits.resize(slots);
  timeline.played_bits.resize(slots);
  timeline.outage_flags.resize(slots);

  double carry = 0.0;
  for (std::size_t t = 0; t < slots; ++t) {
    timeline.carryover_bits[t] = carry;
    if (carry > spec.max_carryover_bits + tolerance_bits) timeline.carryover_violations.push_back(t);
    // Planner output may dip a hair below zero after unit conversion.
    const double received = std::max(received_bits[t], 0.0);
    const auto step = step_buffer(carry, received, spec.bits_per_slot, tolerance_bits);
    timeline.played_bits[t] = step.played_bits;
    timeline.outage_flags[t] = step.outage;
    carry = step.next_carryover_bits;
  }
  timeline.final_carryover_bits = carry;
  return timeline;
}

}  // namespace anticipate
