#include "anticipate/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace anticipate {

namespace {

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw std::invalid_argument(key + ": " + what);
}

bool positive(double x) { return x > 0 && std::isfinite(x); }

}  // namespace

void ScenarioConfig::validate() const {
  require(!bs_positions_m.empty(), "scenario.bs_x_m", "needs at least one base station");
  for (const auto& p : bs_positions_m) {
    require(std::isfinite(p.x) && std::isfinite(p.y), "scenario.bs_x_m", "must be finite");
  }
  require(std::isfinite(user_start_m.x) && std::isfinite(user_start_m.y), "scenario.user_start_x_m",
          "must be finite");
  require(std::isfinite(user_heading_deg), "scenario.user_heading_deg", "must be finite");
  require(positive(user_speed_mps), "scenario.user_speed_mps", "must be > 0");
  require(positive(lookahead_s), "scenario.lookahead_s", "must be > 0");
  require(positive(cell_radius_m), "scenario.cell_radius_m", "must be > 0");
  require(positive(video_rate_bps), "video.rate_bps", "must be > 0");
  require(positive(slot_duration_s), "video.slot_duration_s", "must be > 0");
  require(max_carryover_v >= 0 && std::isfinite(max_carryover_v), "video.max_carryover_v",
          "must be >= 0");
  const double slots = lookahead_s / slot_duration_s;
  require(slots >= 0.5 && std::abs(slots - std::round(slots)) <= 1e-9 * std::max(1.0, slots),
          "scenario.lookahead_s", "must be a whole number of slots");
  link.validate();
  shadowing.validate();
  require(available_prbs >= 0 && available_prbs <= link.num_system_prbs, "scenario.available_prbs",
          "must lie in [0, link.num_system_prbs]");
  for (double z : sweep_z_v) {
    require(z >= 0 && std::isfinite(z), "sweep.z_values_v", "entries must be >= 0");
  }
  require(!kv_values.empty(), "admission.kv_values", "must not be empty");
  for (auto kv : kv_values) require(kv >= 1, "admission.kv_values", "entries must be >= 1");
  require(num_seeds >= 1, "admission.num_seeds", "must be >= 1");
  AdmissionConfig probe = admission;
  probe.total_requests = 1;
  probe.validate(link.num_system_prbs);
}

std::size_t ScenarioConfig::num_slots() const {
  return static_cast<std::size_t>(std::llround(lookahead_s / slot_duration_s));
}

VideoSpec ScenarioConfig::video() const {
  return video_with_carryover(max_carryover_v * bits_per_slot());
}

VideoSpec ScenarioConfig::video_with_carryover(double max_carryover_bits) const {
  VideoSpec spec;
  spec.bits_per_slot = bits_per_slot();
  spec.slot_duration_s = slot_duration_s;
  spec.num_slots = num_slots();
  spec.max_carryover_bits = max_carryover_bits;
  spec.avg_rate_bps = video_rate_bps;
  return spec;
}

std::vector<Point> user_trajectory(const ScenarioConfig& config) {
  const double heading = config.user_heading_deg * std::numbers::pi / 180.0;
  const double ux = config.user_heading_deg == 0.0 ? 1.0 : std::cos(heading);
  const double uy = config.user_heading_deg == 0.0 ? 0.0 : std::sin(heading);
  std::vector<Point> path(config.num_slots());
  for (std::size_t k = 0; k < path.size(); ++k) {
    const double travelled = config.user_speed_mps * (static_cast<double>(k) * config.slot_duration_s);
    path[k] = {config.user_start_m.x + travelled * ux, config.user_start_m.y + travelled * uy};
  }
  return path;
}

ChannelTrace scenario_trace(const ScenarioConfig& config, std::uint64_t seed, std::size_t user) {
  const auto path = user_trajectory(config);
  return build_trace(path, config.bs_positions_m, config.link, config.video(), config.shadowing,
                     seed, user);
}

SingleUserResult run_single_user(const ScenarioConfig& config) {
  config.validate();
  SingleUserResult result;
  result.trace = scenario_trace(config, config.seed, 0);
  const VideoSpec video = config.video();
  const std::vector<double> residual(video.num_slots, static_cast<double>(config.available_prbs));

  result.anticipatory.planner = PlannerKind::anticipatory;
  result.anticipatory.video = video;
  result.anticipatory.plan = plan_anticipatory(video, result.trace, residual);
  result.anticipatory.timeline = simulate_playback(result.anticipatory.plan.received_bits, video);

  const VideoSpec unbuffered = config.video_with_carryover(0.0);
  result.baseline.planner = PlannerKind::baseline;
  result.baseline.video = unbuffered;
  result.baseline.plan = plan_baseline(unbuffered, result.trace, residual);
  result.baseline.timeline = simulate_playback(result.baseline.plan.received_bits, unbuffered);

  const auto zero = plan_anticipatory(unbuffered, result.trace, residual);
  result.zero_buffer_total_prb_slots = zero.feasible ? zero.total_prb_slots : kInfinity;
  return result;
}

std::vector<SweepRow> run_buffer_sweep(const ScenarioConfig& config,
                                       std::span<const double> z_values_v) {
  config.validate();
  if (z_values_v.empty()) throw std::invalid_argument("sweep.z_values_v: must not be empty");
  const auto trace = scenario_trace(config, config.seed, 0);
  const std::size_t slots = config.num_slots();
  const std::vector<double> residual(slots, static_cast<double>(config.available_prbs));
  const double slots_d = static_cast<double>(slots);

  std::vector<SweepRow> rows;
  for (double z_v : z_values_v) {
    require(z_v >= 0 && std::isfinite(z_v), "sweep.z_values_v", "entries must be >= 0");
    SweepRow row;
    row.z_over_v = z_v;
    row.z_bits = z_v * config.bits_per_slot();
    const auto plan = plan_anticipatory(config.video_with_carryover(row.z_bits), trace, residual);
    row.feasible = plan.feasible;
    row.total_prb_slots = plan.feasible ? plan.total_prb_slots : kInfinity;
    row.normalized_system_prbs = row.total_prb_slots / (slots_d * config.link.num_system_prbs);
    row.normalized_available_prbs =
        config.available_prbs > 0 ? row.total_prb_slots / (slots_d * config.available_prbs)
                                  : kInfinity;
    rows.push_back(row);
  }
  return rows;
}

double saturation_point_v(std::span<const SweepRow> rows, double rel_tol) {
  if (rows.empty()) throw std::invalid_argument("saturation_point_v: no rows");
  const double last = rows.back().total_prb_slots;
  std::size_t first = rows.size() - 1;
  while (first > 0) {
    const double prev = rows[first - 1].total_prb_slots;
    if (std::abs(prev - last) > rel_tol * std::max(std::abs(last), 1e-300)) break;
    --first;
  }
  return rows[first].z_over_v;
}

ServiceCurve run_multiuser(const ScenarioConfig& config, const AdmissionConfig& admission,
                           std::span<const std::size_t> kv_values, std::size_t num_seeds) {
  config.validate();
  AdmissionConfig probe = admission;
  for (auto kv : kv_values) {
    probe.total_requests = kv;
    probe.validate(config.link.num_system_prbs);
  }
  const auto path = user_trajectory(config);
  const VideoSpec video = config.video();
  const TraceFactory traces = [&](std::uint64_t seed, std::size_t request) {
    return build_trace(path, config.bs_positions_m, config.link, video, config.shadowing, seed,
                       request);
  };
  return service_curve(kv_values, admission, num_seeds, video, traces);
}

}  // namespace anticipate
