#include "anticipate/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace anticipate {

namespace {

void check_inputs(const VideoSpec& spec, const ChannelTrace& trace,
                  std::span<const double> residual_prbs) {
  spec.validate();
  const std::size_t slots = spec.num_slots;
  if (trace.size() != slots || trace.bits_per_prb.size() != slots) {
    throw std::invalid_argument("planner: trace length " + std::to_string(trace.size()) +
                                " != num_slots " + std::to_string(slots));
  }
  if (residual_prbs.size() != slots) {
    throw std::invalid_argument("planner: residual_prbs length " +
                                std::to_string(residual_prbs.size()) + " != num_slots " +
                                std::to_string(slots));
  }
  for (std::size_t t = 0; t < slots; ++t) {
    if (!(residual_prbs[t] >= 0) || !std::isfinite(residual_prbs[t])) {
      throw std::invalid_argument("planner: residual_prbs[" + std::to_string(t) +
                                  "] must be finite and >= 0");
    }
    if (!(trace.bits_per_prb[t] > 0) || !std::isfinite(trace.bits_per_prb[t])) {
      throw std::invalid_argument("planner: bits_per_prb[" + std::to_string(t) +
                                  "] must be finite and > 0");
    }
  }
}

AllocationPlan infeasible_plan(std::size_t slots) {
  AllocationPlan plan;
  plan.received_bits.assign(slots, 0.0);
  plan.carryover_bits.assign(slots - 1, 0.0);
  plan.prbs.assign(slots, 0.0);
  return plan;
}

// Reads one user's block [r; z] starting at `offset` out of an LP solution.
AllocationPlan extract_plan(std::span<const double> x, std::size_t offset,
                            const ChannelTrace& trace) {
  const std::size_t slots = trace.size();
  AllocationPlan plan;
  plan.feasible = true;
  plan.received_bits.resize(slots);
  plan.prbs.resize(slots);
  plan.carryover_bits.resize(slots - 1);
  for (std::size_t t = 0; t < slots; ++t) {
    plan.received_bits[t] = std::max(x[offset + t], 0.0) * kLpBitUnit;
    plan.prbs[t] = plan.received_bits[t] / trace.bits_per_prb[t];
    plan.total_prb_slots += plan.prbs[t];
  }
  for (std::size_t t = 0; t + 1 < slots; ++t) {
    plan.carryover_bits[t] = std::max(x[offset + slots + t], 0.0) * kLpBitUnit;
  }
  return plan;
}

}  // namespace

DenseMatrix build_buffer_matrix(std::size_t num_slots) {
  if (num_slots < 1) throw std::invalid_argument("build_buffer_matrix: num_slots must be >= 1");
  const std::size_t slots = num_slots;
  DenseMatrix a(slots, 2 * slots - 1);
  for (std::size_t t = 0; t < slots; ++t) {
    a(t, t) = 1.0;                                 // r_t
    if (t > 0) a(t, slots + t - 1) = 1.0;          // + z_t
    if (t + 1 < slots) a(t, slots + t) = -1.0;     // - z_{t+1}
  }
  return a;
}

AllocationPlan plan_anticipatory(const VideoSpec& spec, const ChannelTrace& trace,
                                 std::span<const double> residual_prbs,
                                 const SolverOptions& options) {
  check_inputs(spec, trace, residual_prbs);
  const std::size_t slots = spec.num_slots;

  // w_t = r_t / c_t is substituted, so the spectrum objective and the
  // per-slot PRB budget both become linear in r.
  LpProblem lp;
  lp.objective.assign(2 * slots - 1, 0.0);
  lp.var_upper_bounds.assign(2 * slots - 1, spec.max_carryover_bits / kLpBitUnit);
  for (std::size_t t = 0; t < slots; ++t) {
    const double units_per_prb = trace.bits_per_prb[t] / kLpBitUnit;
    lp.objective[t] = 1.0 / units_per_prb;
    lp.var_upper_bounds[t] = units_per_prb * residual_prbs[t];
  }
  lp.eq_matrix = build_buffer_matrix(slots);
  lp.eq_rhs.assign(slots, spec.bits_per_slot / kLpBitUnit);

  const auto solution = solve(lp, options);
  switch (solution.status) {
    case LpStatus::optimal: return extract_plan(solution.x, 0, trace);
    case LpStatus::infeasible: return infeasible_plan(slots);
    case LpStatus::unbounded: break;
  }
  throw std::logic_error("plan_anticipatory: LP reported unbounded");
}

AllocationPlan plan_baseline(const VideoSpec& spec, const ChannelTrace& trace,
                             std::span<const double> residual_prbs) {
  check_inputs(spec, trace, residual_prbs);
  const std::size_t slots = spec.num_slots;
  const double v = spec.bits_per_slot;

  AllocationPlan plan;
  plan.feasible = true;
  plan.received_bits.resize(slots);
  plan.prbs.resize(slots);
  for (std::size_t t = 0; t < slots; ++t) {
    const double c = trace.bits_per_prb[t];
    if (v / c <= residual_prbs[t]) {
      plan.received_bits[t] = v;
    } else {
      plan.received_bits[t] = c * residual_prbs[t];
      plan.feasible = false;
    }
    plan.prbs[t] = plan.received_bits[t] / c;
    plan.total_prb_slots += plan.prbs[t];
  }
  // Partial fills stall playback and leave their bits in the buffer.
  const auto timeline = simulate_playback(plan.received_bits, spec, 0.0);
  plan.carryover_bits.assign(timeline.carryover_bits.begin() + 1, timeline.carryover_bits.end());
  return plan;
}

JointPlan plan_joint(std::span<const VideoSpec> specs, std::span<const ChannelTrace> traces,
                     std::span<const double> residual_prbs, const SolverOptions& options) {
  if (specs.empty() || specs.size() != traces.size()) {
    throw std::invalid_argument("plan_joint: need one trace per user and at least one user");
  }
  const std::size_t slots = specs.front().num_slots;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    if (specs[k].num_slots != slots) {
      throw std::invalid_argument("plan_joint: all users must share the window length");
    }
    check_inputs(specs[k], traces[k], residual_prbs);
  }

  const std::size_t block = 2 * slots - 1;
  const std::size_t users = specs.size();
  LpProblem lp;
  lp.objective.assign(users * block, 0.0);
  lp.var_upper_bounds.assign(users * block, kInfinity);
  lp.eq_matrix = DenseMatrix(users * slots, users * block);
  lp.eq_rhs.resize(users * slots);
  lp.ub_matrix = DenseMatrix(slots, users * block);
  lp.ub_rhs.assign(residual_prbs.begin(), residual_prbs.end());

  const DenseMatrix a = build_buffer_matrix(slots);
  for (std::size_t k = 0; k < users; ++k) {
    const std::size_t col0 = k * block;
    for (std::size_t t = 0; t < slots; ++t) {
      for (std::size_t j = 0; j < block; ++j) lp.eq_matrix(k * slots + t, col0 + j) = a(t, j);
      lp.eq_rhs[k * slots + t] = specs[k].bits_per_slot / kLpBitUnit;
      const double prbs_per_unit = kLpBitUnit / traces[k].bits_per_prb[t];
      lp.objective[col0 + t] = prbs_per_unit;
      lp.ub_matrix(t, col0 + t) = prbs_per_unit;
    }
    for (std::size_t t = 0; t + 1 < slots; ++t) {
      lp.var_upper_bounds[col0 + slots + t] = specs[k].max_carryover_bits / kLpBitUnit;
    }
  }

  const auto solution = solve(lp, options);
  JointPlan joint;
  if (solution.status == LpStatus::unbounded) {
    throw std::logic_error("plan_joint: LP reported unbounded");
  }
  if (solution.status == LpStatus::infeasible) {
    for (std::size_t k = 0; k < users; ++k) joint.plans.push_back(infeasible_plan(slots));
    return joint;
  }
  joint.feasible = true;
  for (std::size_t k = 0; k < users; ++k) {
    joint.plans.push_back(extract_plan(solution.x, k * block, traces[k]));
    joint.total_prb_slots += joint.plans.back().total_prb_slots;
  }
  return joint;
}

}  // namespace anticipate
