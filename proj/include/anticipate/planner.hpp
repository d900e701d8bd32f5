#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "anticipate/link_model.hpp"
#include "anticipate/lp_solver.hpp"
#include "anticipate/playout_buffer.hpp"

namespace anticipate {

/// Per-slot rate plan for one user. Bits are real-valued.
struct AllocationPlan {
  std::vector<double> received_bits;   // r_t, length T
  std::vector<double> carryover_bits;  // z_2 .. z_T, length T - 1
  std::vector<double> prbs;            // w_t = r_t / c_t
  double total_prb_slots = 0.0;
  bool feasible = false;
};

/// No-outage buffer dynamics as a T x (2T - 1) matrix [I | B] acting on
/// x = [r_1..r_T, z_2..z_T]: row t reads r_t + z_t - z_{t+1}.
DenseMatrix build_buffer_matrix(std::size_t num_slots);

/// Bits are expressed in units of 2^20 inside the LP. A power of two keeps the
/// unit conversion exact in both directions.
inline constexpr double kLpBitUnit = 1048576.0;

/// Minimum-spectrum plan that never stalls playback, given the predicted
/// trace and the PRBs still free in each slot of the window. Returns
/// `feasible == false` when no such plan fits the residual capacity.
AllocationPlan plan_anticipatory(const VideoSpec& spec, const ChannelTrace& trace,
                                 std::span<const double> residual_prbs,
                                 const SolverOptions& options = {});

/// Slot-local comparator without look-ahead: asks for exactly V each slot
/// and takes whatever fits when the slot is short.
AllocationPlan plan_baseline(const VideoSpec& spec, const ChannelTrace& trace,
                             std::span<const double> residual_prbs);

struct JointPlan {
  std::vector<AllocationPlan> plans;
  double total_prb_slots = 0.0;
  bool feasible = false;
};

/// All users on a common window in one LP; the per-slot PRB budget is shared.
JointPlan plan_joint(std::span<const VideoSpec> specs, std::span<const ChannelTrace> traces,
                     std::span<const double> residual_prbs, const SolverOptions& options = {});

}  // namespace anticipate
