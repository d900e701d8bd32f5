#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "anticipate/admission.hpp"
#include "anticipate/scenario.hpp"

namespace anticipate {

/// Nine significant digits, shortest form ("%.9g").
std::string format_number(double value);

/// trace.csv: one row per (planner, slot).
/// planner,slot,time_s,serving_bs,distance_m,gain_db,bits_per_prb,r_bits,z_bits,w_prbs,buffer_bits,outage
void write_trace_csv(std::ostream& out, const SingleUserResult& result);

/// Human-readable block with per-planner totals.
void write_single_user_summary(std::ostream& out, const ScenarioConfig& config,
                               const SingleUserResult& result);

/// sweep.csv: z_over_v,z_bits,feasible,total_prb_slots,normalized_system_prbs,normalized_available_prbs
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

void write_sweep_summary(std::ostream& out, std::span<const SweepRow> rows);

/// service_curve.csv: kind,requests,planner,seed,admitted_users,served_users,served_fraction
/// `kind` is "run" for one seed or "mean" for the average over seeds (seed left empty).
void write_service_curve_csv(std::ostream& out, const ServiceCurve& curve);

void write_service_curve_summary(std::ostream& out, const ServiceCurve& curve);

}  // namespace anticipate
