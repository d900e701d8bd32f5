#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "anticipate/admission.hpp"
#include "anticipate/link_model.hpp"
#include "anticipate/lp_solver.hpp"
#include "anticipate/planner.hpp"
#include "anticipate/playout_buffer.hpp"
#include "anticipate/report.hpp"
#include "anticipate/scenario.hpp"

namespace py = pybind11;
using namespace anticipate;

namespace {

DenseMatrix to_matrix(const std::vector<std::vector<double>>& rows, std::size_t cols) {
  DenseMatrix m(rows.size(), rows.empty() ? cols : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<double>> to_rows(const DenseMatrix& m) {
  std::vector<std::vector<double>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r].assign(m.row(r).begin(), m.row(r).end());
  return rows;
}

template <typename Fn>
std::string capture(Fn&& fn) {
  std::ostringstream out;
  fn(out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Anticipatory buffer control and resource allocation for video streaming";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<LinkBudget>(m, "LinkBudget")
      .def(py::init<>())
      .def_readwrite("total_power_dbm", &LinkBudget::total_power_dbm)
      .def_readwrite("num_system_prbs", &LinkBudget::num_system_prbs)
      .def_readwrite("prb_bandwidth_hz", &LinkBudget::prb_bandwidth_hz)
      .def_readwrite("noise_psd_dbm_hz", &LinkBudget::noise_psd_dbm_hz)
      .def_readwrite("noise_figure_db", &LinkBudget::noise_figure_db)
      .def_readwrite("interference_psd_dbm_hz", &LinkBudget::interference_psd_dbm_hz)
      .def_readwrite("snr_gap_db", &LinkBudget::snr_gap_db)
      .def_readwrite("min_bs_distance_m", &LinkBudget::min_bs_distance_m)
      .def("validate", &LinkBudget::validate);

  py::class_<ShadowingParams>(m, "ShadowingParams")
      .def(py::init<>())
      .def_readwrite("sigma_db", &ShadowingParams::sigma_db)
      .def_readwrite("decorrelation_m", &ShadowingParams::decorrelation_m);

  py::class_<VideoSpec>(m, "VideoSpec")
      .def(py::init<>())
      .def_readwrite("bits_per_slot", &VideoSpec::bits_per_slot)
      .def_readwrite("slot_duration_s", &VideoSpec::slot_duration_s)
      .def_readwrite("num_slots", &VideoSpec::num_slots)
      .def_readwrite("max_carryover_bits", &VideoSpec::max_carryover_bits)
      .def_readwrite("avg_rate_bps", &VideoSpec::avg_rate_bps)
      .def("validate", &VideoSpec::validate);

  py::class_<ChannelTrace>(m, "ChannelTrace")
      .def(py::init<>())
      .def_readwrite("slot_duration_s", &ChannelTrace::slot_duration_s)
      .def_readwrite("distances_m", &ChannelTrace::distances_m)
      .def_readwrite("serving_bs", &ChannelTrace::serving_bs)
      .def_readwrite("gain_db", &ChannelTrace::gain_db)
      .def_readwrite("bits_per_prb", &ChannelTrace::bits_per_prb)
      .def("__len__", &ChannelTrace::size);

  m.def("path_loss_db", &path_loss_db, py::arg("distance_km"));
  m.def("shadowing_db", &shadowing_db, py::arg("position_m"), py::arg("seed"),
        py::arg("decorrelation_m"), py::arg("sigma_db"));
  m.def("per_prb_bits", &per_prb_bits, py::arg("gain_db"), py::arg("budget"),
        py::arg("slot_duration_s"));

  py::class_<BufferStep>(m, "BufferStep")
      .def_readonly("next_carryover_bits", &BufferStep::next_carryover_bits)
      .def_readonly("played_bits", &BufferStep::played_bits)
      .def_readonly("outage", &BufferStep::outage);
  m.def("step_buffer", &step_buffer, py::arg("carryover_bits"), py::arg("received_bits"),
        py::arg("bits_per_slot"), py::arg("tolerance_bits") = 0.0);

  py::class_<BufferTimeline>(m, "BufferTimeline")
      .def_readonly("received_bits", &BufferTimeline::received_bits)
      .def_readonly("carryover_bits", &BufferTimeline::carryover_bits)
      .def_readonly("played_bits", &BufferTimeline::played_bits)
      .def_readonly("outage_flags", &BufferTimeline::outage_flags)
      .def_readonly("final_carryover_bits", &BufferTimeline::final_carryover_bits)
      .def_readonly("carryover_violations", &BufferTimeline::carryover_violations)
      .def("outage_count", &BufferTimeline::outage_count);
  m.def(
      "simulate_playback",
      [](const std::vector<double>& received, const VideoSpec& spec) {
        return simulate_playback(received, spec);
      },
      py::arg("received_bits"), py::arg("spec"));

  py::enum_<LpStatus>(m, "LpStatus")
      .value("optimal", LpStatus::optimal)
      .value("infeasible", LpStatus::infeasible)
      .value("unbounded", LpStatus::unbounded);

  py::class_<LpSolution>(m, "LpSolution")
      .def_readonly("status", &LpSolution::status)
      .def_readonly("x", &LpSolution::x)
      .def_readonly("objective_value", &LpSolution::objective_value)
      .def_readonly("reduced_costs", &LpSolution::reduced_costs)
      .def_readonly("iterations", &LpSolution::iterations);

  m.def(
      "solve_lp",
      [](const std::vector<double>& objective, const std::vector<std::vector<double>>& a_eq,
         const std::vector<double>& b_eq, const std::vector<std::vector<double>>& a_ub,
         const std::vector<double>& b_ub, const std::vector<double>& upper_bounds) {
        LpProblem lp;
        lp.objective = objective;
        lp.eq_matrix = to_matrix(a_eq, objective.size());
        lp.eq_rhs = b_eq;
        lp.ub_matrix = to_matrix(a_ub, objective.size());
        lp.ub_rhs = b_ub;
        lp.var_upper_bounds = upper_bounds;
        return solve(lp);
      },
      py::arg("objective"), py::arg("a_eq") = std::vector<std::vector<double>>{},
      py::arg("b_eq") = std::vector<double>{}, py::arg("a_ub") = std::vector<std::vector<double>>{},
      py::arg("b_ub") = std::vector<double>{}, py::arg("upper_bounds") = std::vector<double>{},
      "minimize c.x s.t. A_eq x = b_eq, A_ub x <= b_ub, 0 <= x <= upper_bounds");

  py::class_<AllocationPlan>(m, "AllocationPlan")
      .def_readonly("received_bits", &AllocationPlan::received_bits)
      .def_readonly("carryover_bits", &AllocationPlan::carryover_bits)
      .def_readonly("prbs", &AllocationPlan::prbs)
      .def_readonly("total_prb_slots", &AllocationPlan::total_prb_slots)
      .def_readonly("feasible", &AllocationPlan::feasible);

  m.def("build_buffer_matrix", [](std::size_t slots) { return to_rows(build_buffer_matrix(slots)); },
        py::arg("num_slots"));
  m.def(
      "plan_anticipatory",
      [](const VideoSpec& spec, const ChannelTrace& trace, const std::vector<double>& residual) {
        return plan_anticipatory(spec, trace, residual);
      },
      py::arg("spec"), py::arg("trace"), py::arg("residual_prbs"));
  m.def(
      "plan_baseline",
      [](const VideoSpec& spec, const ChannelTrace& trace, const std::vector<double>& residual) {
        return plan_baseline(spec, trace, residual);
      },
      py::arg("spec"), py::arg("trace"), py::arg("residual_prbs"));

  py::enum_<PlannerKind>(m, "PlannerKind")
      .value("anticipatory", PlannerKind::anticipatory)
      .value("baseline", PlannerKind::baseline);

  py::class_<AdmissionConfig>(m, "AdmissionConfig")
      .def(py::init<>())
      .def_readwrite("total_requests", &AdmissionConfig::total_requests)
      .def_readwrite("mean_interarrival_s", &AdmissionConfig::mean_interarrival_s)
      .def_readwrite("available_prbs", &AdmissionConfig::available_prbs)
      .def_readwrite("seed", &AdmissionConfig::seed);

  py::class_<ServiceMean>(m, "ServiceMean")
      .def_readonly("requests", &ServiceMean::requests)
      .def_readonly("planner", &ServiceMean::planner)
      .def_readonly("admitted", &ServiceMean::admitted)
      .def_readonly("served", &ServiceMean::served)
      .def_readonly("served_fraction", &ServiceMean::served_fraction);

  py::class_<ServiceRun>(m, "ServiceRun")
      .def_readonly("requests", &ServiceRun::requests)
      .def_readonly("planner", &ServiceRun::planner)
      .def_readonly("seed", &ServiceRun::seed)
      .def_readonly("admitted", &ServiceRun::admitted)
      .def_readonly("served", &ServiceRun::served)
      .def_readonly("served_fraction", &ServiceRun::served_fraction);

  py::class_<ServiceCurve>(m, "ServiceCurve")
      .def_readonly("runs", &ServiceCurve::runs)
      .def_readonly("means", &ServiceCurve::means)
      .def("to_csv", [](const ServiceCurve& c) {
        return capture([&](std::ostream& o) { write_service_curve_csv(o, c); });
      });

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_static("from_text",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return parse_config(in);
                  })
      .def_static("load", &load_config, py::arg("path"))
      .def_readwrite("user_speed_mps", &ScenarioConfig::user_speed_mps)
      .def_readwrite("lookahead_s", &ScenarioConfig::lookahead_s)
      .def_readwrite("available_prbs", &ScenarioConfig::available_prbs)
      .def_readwrite("video_rate_bps", &ScenarioConfig::video_rate_bps)
      .def_readwrite("slot_duration_s", &ScenarioConfig::slot_duration_s)
      .def_readwrite("max_carryover_v", &ScenarioConfig::max_carryover_v)
      .def_readwrite("link", &ScenarioConfig::link)
      .def_readwrite("shadowing", &ScenarioConfig::shadowing)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("sweep_z_v", &ScenarioConfig::sweep_z_v)
      .def_readwrite("admission", &ScenarioConfig::admission)
      .def_readwrite("kv_values", &ScenarioConfig::kv_values)
      .def_readwrite("num_seeds", &ScenarioConfig::num_seeds)
      .def("video", &ScenarioConfig::video)
      .def("validate", &ScenarioConfig::validate);

  m.def("default_config_text", &default_config_text);
  m.def("scenario_trace", &scenario_trace, py::arg("config"), py::arg("seed"), py::arg("user") = 0);

  py::class_<PlannedRun>(m, "PlannedRun")
      .def_readonly("planner", &PlannedRun::planner)
      .def_readonly("video", &PlannedRun::video)
      .def_readonly("plan", &PlannedRun::plan)
      .def_readonly("timeline", &PlannedRun::timeline);

  py::class_<SingleUserResult>(m, "SingleUserResult")
      .def_readonly("trace", &SingleUserResult::trace)
      .def_readonly("anticipatory", &SingleUserResult::anticipatory)
      .def_readonly("baseline", &SingleUserResult::baseline)
      .def_readonly("zero_buffer_total_prb_slots", &SingleUserResult::zero_buffer_total_prb_slots)
      .def("to_csv", [](const SingleUserResult& r) {
        return capture([&](std::ostream& o) { write_trace_csv(o, r); });
      });

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("z_over_v", &SweepRow::z_over_v)
      .def_readonly("z_bits", &SweepRow::z_bits)
      .def_readonly("feasible", &SweepRow::feasible)
      .def_readonly("total_prb_slots", &SweepRow::total_prb_slots)
      .def_readonly("normalized_system_prbs", &SweepRow::normalized_system_prbs)
      .def_readonly("normalized_available_prbs", &SweepRow::normalized_available_prbs);

  m.def("run_single_user", &run_single_user, py::arg("config"));
  m.def(
      "run_buffer_sweep",
      [](const ScenarioConfig& config, const std::vector<double>& z_values_v) {
        return run_buffer_sweep(config, z_values_v);
      },
      py::arg("config"), py::arg("z_values_v"));
  m.def(
      "run_multiuser",
      [](const ScenarioConfig& config, const AdmissionConfig& admission,
         const std::vector<std::size_t>& kv_values, std::size_t num_seeds) {
        return run_multiuser(config, admission, kv_values, num_seeds);
      },
      py::arg("config"), py::arg("admission"), py::arg("kv_values"), py::arg("num_seeds"));

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
