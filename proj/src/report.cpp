#include "anticipate/report.hpp"

#include <cstdio>
#include <ostream>

namespace anticipate {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

namespace {

void write_run_rows(std::ostream& out, const ChannelTrace& trace, const PlannedRun& run) {
  const auto& plan = run.plan;
  const auto& timeline = run.timeline;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const double z = timeline.carryover_bits[t];
    out << to_string(run.planner) << ',' << t << ','
        << format_number(static_cast<double>(t) * trace.slot_duration_s) << ','
        << trace.serving_bs[t] << ',' << format_number(trace.distances_m[t]) << ','
        << format_number(trace.gain_db[t]) << ',' << format_number(trace.bits_per_prb[t]) << ','
        << format_number(plan.received_bits[t]) << ',' << format_number(z) << ','
        << format_number(plan.prbs[t]) << ',' << format_number(plan.received_bits[t] + z) << ','
        << (timeline.outage_flags[t] ? 1 : 0) << '\n';
  }
}

}  // namespace

void write_trace_csv(std::ostream& out, const SingleUserResult& result) {
  out << "planner,slot,time_s,serving_bs,distance_m,gain_db,bits_per_prb,r_bits,z_bits,w_prbs,"
         "buffer_bits,outage\n";
  write_run_rows(out, result.trace, result.anticipatory);
  write_run_rows(out, result.trace, result.baseline);
}

void write_single_user_summary(std::ostream& out, const ScenarioConfig& config,
                               const SingleUserResult& result) {
  const auto& video = result.anticipatory.video;
  out << "single-user experiment\n"
      << "  seed                      " << config.seed << '\n'
      << "  slots                     " << video.num_slots << '\n'
      << "  bits_per_slot             " << format_number(video.bits_per_slot) << '\n'
      << "  max_carryover_bits        " << format_number(video.max_carryover_bits) << '\n'
      << "  available_prbs            " << config.available_prbs << '\n';
  for (const PlannedRun* run : {&result.anticipatory, &result.baseline}) {
    out << "  " << to_string(run->planner) << ":\n"
        << "    feasible                " << (run->plan.feasible ? "yes" : "no") << '\n'
        << "    total_prb_slots         " << format_number(run->plan.total_prb_slots) << '\n'
        << "    outage_slots            " << run->timeline.outage_count() << '\n';
  }
  out << "  zero-buffer LP total      " << format_number(result.zero_buffer_total_prb_slots) << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "z_over_v,z_bits,feasible,total_prb_slots,normalized_system_prbs,"
         "normalized_available_prbs\n";
  for (const auto& row : rows) {
    out << format_number(row.z_over_v) << ',' << format_number(row.z_bits) << ','
        << (row.feasible ? 1 : 0) << ',' << format_number(row.total_prb_slots) << ','
        << format_number(row.normalized_system_prbs) << ','
        << format_number(row.normalized_available_prbs) << '\n';
  }
}

void write_sweep_summary(std::ostream& out, std::span<const SweepRow> rows) {
  out << "buffer sweep\n";
  for (const auto& row : rows) {
    out << "  Z = " << format_number(row.z_over_v) << " V  total_prb_slots "
        << format_number(row.total_prb_slots) << '\n';
  }
  const double z_sat = saturation_point_v(rows);
  if (rows.size() > 1 && z_sat == rows.back().z_over_v) {
    out << "  not saturated within the sweep\n";
  } else {
    out << "  saturates from Z = " << format_number(z_sat) << " V\n";
  }
}

void write_service_curve_csv(std::ostream& out, const ServiceCurve& curve) {
  out << "kind,requests,planner,seed,admitted_users,served_users,served_fraction\n";
  for (const auto& run : curve.runs) {
    out << "run," << run.requests << ',' << to_string(run.planner) << ',' << run.seed << ','
        << run.admitted << ',' << run.served << ',' << format_number(run.served_fraction) << '\n';
  }
  for (const auto& mean : curve.means) {
    out << "mean," << mean.requests << ',' << to_string(mean.planner) << ",,"
        << format_number(mean.admitted) << ',' << format_number(mean.served) << ','
        << format_number(mean.served_fraction) << '\n';
  }
}

void write_service_curve_summary(std::ostream& out, const ServiceCurve& curve) {
  out << "multi-user admission (mean served users)\n"
      << "  requests  anticipatory  baseline\n";
  for (std::size_t i = 0; i + 1 < curve.means.size(); i += 2) {
    const auto& a = curve.means[i];
    const auto& b = curve.means[i + 1];
    char line[96];
    std::snprintf(line, sizeof line, "  %8zu  %12.2f  %8.2f\n", a.requests, a.served, b.served);
    out << line;
  }
}

}  // namespace anticipate
