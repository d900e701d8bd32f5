#include "anticipate/admission.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace anticipate {

std::string_view to_string(PlannerKind kind) {
  return kind == PlannerKind::anticipatory ? "anticipatory" : "baseline";
}

void AdmissionConfig::validate(int num_system_prbs) const {
  if (total_requests < 1) throw std::invalid_argument("admission.total_requests: must be >= 1");
  if (!(mean_interarrival_s > 0) || !std::isfinite(mean_interarrival_s)) {
    throw std::invalid_argument("admission.mean_interarrival_s: must be > 0");
  }
  if (available_prbs < 0 || available_prbs > num_system_prbs) {
    throw std::invalid_argument("admission.available_prbs: must lie in [0, " +
                                std::to_string(num_system_prbs) + "]");
  }
}

std::vector<double> draw_arrival_times(std::size_t requests, double mean_interarrival_s,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> gap(1.0 / mean_interarrival_s);
  std::vector<double> times(requests, 0.0);
  for (std::size_t k = 1; k < requests; ++k) times[k] = times[k - 1] + gap(rng);
  return times;
}

AdmissionLog run_admission(const AdmissionConfig& config, const VideoSpec& spec,
                           const TraceSource& traces, PlannerKind planner) {
  spec.validate();
  if (config.total_requests < 1 || !(config.mean_interarrival_s > 0) || config.available_prbs < 0) {
    throw std::invalid_argument("run_admission: invalid admission config");
  }
  const std::size_t window = spec.num_slots;
  const auto arrivals = draw_arrival_times(config.total_requests, config.mean_interarrival_s,
                                           config.seed);

  AdmissionLog log;
  log.requests.resize(config.total_requests);
  for (std::size_t k = 0; k < arrivals.size(); ++k) {
    log.requests[k].arrival_time_s = arrivals[k];
    log.requests[k].arrival_slot =
        static_cast<std::size_t>(std::floor(arrivals[k] / spec.slot_duration_s));
  }
  const std::size_t horizon = log.requests.back().arrival_slot + window;
  auto& ledger = log.residual_prbs_timeline;
  ledger.assign(horizon, static_cast<double>(config.available_prbs));

  std::vector<double> residual(window);
  for (std::size_t k = 0; k < log.requests.size(); ++k) {
    auto& request = log.requests[k];
    const std::size_t first = request.arrival_slot;
    for (std::size_t t = 0; t < window; ++t) residual[t] = std::max(ledger[first + t], 0.0);

    const ChannelTrace trace = traces(k);
    AllocationPlan plan;
    if (planner == PlannerKind::anticipatory) {
      plan = plan_anticipatory(spec, trace, residual);
      request.admitted = plan.feasible;
    } else {
      request.admitted = spec.bits_per_slot / trace.bits_per_prb.at(0) <= residual[0];
      if (request.admitted) plan = plan_baseline(spec, trace, residual);
    }
    if (!request.admitted) continue;

    for (std::size_t t = 0; t < window; ++t) ledger[first + t] -= plan.prbs[t];
    request.plan = std::move(plan);
    ++log.admitted_count;
  }

  for (auto& request : log.requests) {
    if (!request.plan) continue;
    const auto timeline = simulate_playback(request.plan->received_bits, spec);
    request.outage_count = timeline.outage_count();
    if (request.outage_count == 0) ++log.served_count;
  }
  return log;
}

ServiceCurve service_curve(std::span<const std::size_t> request_counts,
                           const AdmissionConfig& base, std::size_t num_seeds,
                           const VideoSpec& spec, const TraceFactory& traces) {
  if (request_counts.empty()) throw std::invalid_argument("service_curve: empty request range");
  if (num_seeds < 1) throw std::invalid_argument("service_curve: need at least one seed");

  ServiceCurve curve;
  for (std::size_t requests : request_counts) {
    for (PlannerKind planner : {PlannerKind::anticipatory, PlannerKind::baseline}) {
      ServiceMean mean{requests, planner, 0.0, 0.0, 0.0};
      for (std::size_t s = 0; s < num_seeds; ++s) {
        AdmissionConfig config = base;
        config.total_requests = requests;
        config.seed = base.seed + s;
        const auto log = run_admission(
            config, spec, [&](std::size_t k) { return traces(config.seed, k); }, planner);
        ServiceRun run{requests, planner, config.seed, log.admitted_count, log.served_count,
                       static_cast<double>(log.served_count) / static_cast<double>(requests)};
        mean.admitted += static_cast<double>(run.admitted);
        mean.served += static_cast<double>(run.served);
        mean.served_fraction += run.served_fraction;
        curve.runs.push_back(run);
      }
      const double n = static_cast<double>(num_seeds);
      mean.admitted /= n;
      mean.served /= n;
      mean.served_fraction /= n;
      curve.means.push_back(mean);
    }
  }
  return curve;
}

}  // namespace anticipate
