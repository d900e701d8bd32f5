#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "anticipate/planner.hpp"

namespace anticipate {

enum class PlannerKind { anticipatory, baseline };

std::string_view to_string(PlannerKind kind);

struct AdmissionConfig {
  std::size_t total_requests = 10;     // K_v
  double mean_interarrival_s = 0.58;
  int available_prbs = 15;
  std::uint64_t seed = 0;

  /// `num_system_prbs` caps `available_prbs`. Zero available PRBs is accepted
  /// and simply admits nobody.
  void validate(int num_system_prbs) const;
};

struct AdmissionRecord {
  double arrival_time_s = 0.0;
  std::size_t arrival_slot = 0;
  bool admitted = false;
  std::optional<AllocationPlan> plan;
  std::size_t outage_count = 0;
};

struct AdmissionLog {
  std::vector<AdmissionRecord> requests;
  std::size_t admitted_count = 0;
  std::size_t served_count = 0;
  /// PRBs left per global slot after all admissions.
  std::vector<double> residual_prbs_timeline;
};

/// Supplies the predicted trace of request `k` (its window starts at its
/// arrival slot).
using TraceSource = std::function<ChannelTrace(std::size_t request)>;

/// Exponential inter-arrival times; the first request arrives at t = 0.
std::vector<double> draw_arrival_times(std::size_t requests, double mean_interarrival_s,
                                       std::uint64_t seed);

/// Processes requests in arrival order against a per-slot ledger of free PRBs
/// on the global slot grid, then replays every admitted plan to count the
/// users that play without a single stall.
///
/// Anticipatory: admit iff the LP finds a no-outage plan inside the residual
/// capacity of the user's window. Baseline: admit iff the first slot can carry
/// V at the current rate; later shortfalls become outages.
AdmissionLog run_admission(const AdmissionConfig& config, const VideoSpec& spec,
                           const TraceSource& traces, PlannerKind planner);

/// Supplies the trace of request `k` in the realisation keyed by `seed`.
using TraceFactory = std::function<ChannelTrace(std::uint64_t seed, std::size_t request)>;

struct ServiceRun {
  std::size_t requests = 0;
  PlannerKind planner = PlannerKind::anticipatory;
  std::uint64_t seed = 0;
  std::size_t admitted = 0;
  std::size_t served = 0;
  double served_fraction = 0.0;
};

struct ServiceMean {
  std::size_t requests = 0;
  PlannerKind planner = PlannerKind::anticipatory;
  double admitted = 0.0;
  double served = 0.0;
  double served_fraction = 0.0;
};

struct ServiceCurve {
  std::vector<ServiceRun> runs;    // ordered by (requests, planner, seed)
  std::vector<ServiceMean> means;  // ordered by (requests, planner)
};

/// Served users per request count and planner, over seeds
/// base.seed .. base.seed + num_seeds - 1. Both planners see identical
/// arrivals and channels for a given seed.
ServiceCurve service_curve(std::span<const std::size_t> request_counts,
                           const AdmissionConfig& base, std::size_t num_seeds,
                           const VideoSpec& spec, const TraceFactory& traces);

}  // namespace anticipate
