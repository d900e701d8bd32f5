#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "anticipate/admission.hpp"
#include "anticipate/link_model.hpp"
#include "anticipate/planner.hpp"
#include "anticipate/playout_buffer.hpp"

namespace anticipate {

/// Two-cell highway scenario. Every default reproduces the reference setup:
/// BS1 at x = 0 and BS2 at x = 550 m, a user starting 35 m from BS1 and
/// driving towards BS2 at 30 m/s for a 16 s look-ahead window.
struct ScenarioConfig {
  std::vector<Point> bs_positions_m{{0.0, 0.0}, {550.0, 0.0}};
  Point user_start_m{35.0, 0.0};
  double user_heading_deg = 0.0;
  double user_speed_mps = 30.0;
  double lookahead_s = 16.0;
  double cell_radius_m = 250.0;
  /// PRBs free for the single-user experiments.
  int available_prbs = 50;

  double video_rate_bps = 1.5e6;
  double slot_duration_s = 1.0 / 6.0;
  /// Z as a multiple of V.
  double max_carryover_v = 5.0;

  LinkBudget link;
  ShadowingParams shadowing;
  std::uint64_t seed = 0;

  std::vector<double> sweep_z_v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  AdmissionConfig admission;
  std::vector<std::size_t> kv_values{5, 10, 15, 20, 25, 30, 35, 40};
  std::size_t num_seeds = 10;

  /// Throws std::invalid_argument with the dotted config key at fault.
  void validate() const;

  std::size_t num_slots() const;
  double bits_per_slot() const { return video_rate_bps * slot_duration_s; }
  VideoSpec video() const;
  VideoSpec video_with_carryover(double max_carryover_bits) const;
};

/// Malformed or unknown entries in a config file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// INI-style config: `[section]` headers and `key = value` lines, `;` or `#`
/// comments, comma-separated lists. Missing keys keep their defaults, so an
/// empty file yields the reference scenario. Throws ConfigError or
/// std::invalid_argument.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// The documented key list with default values, itself a valid config file.
std::string default_config_text();

/// User position at the start of each slot of the look-ahead window.
std::vector<Point> user_trajectory(const ScenarioConfig& config);

/// Predicted trace of user `user` under shadowing realisation `seed`.
ChannelTrace scenario_trace(const ScenarioConfig& config, std::uint64_t seed, std::size_t user);

struct PlannedRun {
  PlannerKind planner = PlannerKind::anticipatory;
  VideoSpec video;
  AllocationPlan plan;
  BufferTimeline timeline;
};

struct SingleUserResult {
  ChannelTrace trace;
  PlannedRun anticipatory;  // Z as configured
  PlannedRun baseline;      // zero buffer, slot-local
  double zero_buffer_total_prb_slots = 0.0;  // anticipatory LP with Z = 0
};

SingleUserResult run_single_user(const ScenarioConfig& config);

struct SweepRow {
  double z_over_v = 0.0;
  double z_bits = 0.0;
  bool feasible = false;
  double total_prb_slots = 0.0;
  double normalized_system_prbs = 0.0;     // / (T * num_system_prbs)
  double normalized_available_prbs = 0.0;  // / (T * available_prbs)
};

std::vector<SweepRow> run_buffer_sweep(const ScenarioConfig& config,
                                       std::span<const double> z_values_v);

/// Smallest swept Z after which total spectrum stays constant (relative
/// tolerance `rel_tol`). Rows must be sorted by Z.
double saturation_point_v(std::span<const SweepRow> rows, double rel_tol = 1e-9);

/// Multi-user admission experiment: every request follows the scenario trajectory
/// from its own arrival time with independent shadowing.
ServiceCurve run_multiuser(const ScenarioConfig& config, const AdmissionConfig& admission,
                           std::span<const std::size_t> kv_values, std::size_t num_seeds);

}  // namespace anticipate
