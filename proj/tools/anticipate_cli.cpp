// Command-line driver for the single-user, buffer-sweep and multi-user
// experiments. Exit codes: 0 success, 1 configuration error, 2 infeasible
// scenario (outputs are still written).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "anticipate/report.hpp"
#include "anticipate/scenario.hpp"

namespace fs = std::filesystem;
using namespace anticipate;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> sigma_db;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Scenario config file (INI)");
  cmd->add_option("--seed", opts.seed, "Override scenario.seed");
  cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--sigma-db", opts.sigma_db, "Override shadowing.sigma_db");
}

ScenarioConfig resolve(const CommonOptions& opts) {
  ScenarioConfig config = opts.config_path.empty() ? ScenarioConfig{} : load_config(opts.config_path);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.sigma_db) config.shadowing.sigma_db = *opts.sigma_db;
  config.validate();
  return config;
}

std::ofstream open_output(const CommonOptions& opts, const std::string& name) {
  fs::create_directories(opts.out_dir);
  const fs::path path = fs::path(opts.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

int run_single(const CommonOptions& opts) {
  const auto config = resolve(opts);
  const auto result = run_single_user(config);
  {
    auto csv = open_output(opts, "trace.csv");
    write_trace_csv(csv, result);
  }
  auto summary = open_output(opts, "summary.txt");
  write_single_user_summary(summary, config, result);
  write_single_user_summary(std::cout, config, result);
  if (!result.anticipatory.plan.feasible) {
    std::cerr << "infeasible: no outage-free plan fits the available PRBs\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int run_sweep(const CommonOptions& opts, const std::optional<std::vector<double>>& z_values) {
  const auto config = resolve(opts);
  const auto rows = run_buffer_sweep(config, z_values ? *z_values : config.sweep_z_v);
  {
    auto csv = open_output(opts, "sweep.csv");
    write_sweep_csv(csv, rows);
  }
  write_sweep_summary(std::cout, rows);
  for (const auto& row : rows) {
    if (!row.feasible) {
      std::cerr << "infeasible: Z = " << format_number(row.z_over_v) << " V\n";
      return kExitInfeasible;
    }
  }
  return kExitOk;
}

int run_multi(const CommonOptions& opts, std::optional<std::size_t> seeds,
              const std::optional<std::vector<std::size_t>>& kv) {
  auto config = resolve(opts);
  if (seeds) config.num_seeds = *seeds;
  if (kv) config.kv_values = *kv;
  config.validate();
  AdmissionConfig admission = config.admission;
  admission.seed = config.seed;
  const auto curve = run_multiuser(config, admission, config.kv_values, config.num_seeds);
  {
    auto csv = open_output(opts, "service_curve.csv");
    write_service_curve_csv(csv, curve);
  }
  write_service_curve_summary(std::cout, curve);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anticipatory buffer control and resource allocation simulator"};
  app.require_subcommand(1);

  CommonOptions single_opts, sweep_opts, multi_opts;
  auto* single = app.add_subcommand("single-user", "Plan one user; writes trace.csv and summary.txt");
  add_common(single, single_opts);

  auto* sweep = app.add_subcommand("buffer-sweep", "Total spectrum versus Z; writes sweep.csv");
  add_common(sweep, sweep_opts);
  std::optional<std::vector<double>> z_values;
  sweep->add_option("--z-values", z_values, "Z values in multiples of V")->delimiter(',');

  auto* multi = app.add_subcommand("multi-user", "Admission experiment; writes service_curve.csv");
  add_common(multi, multi_opts);
  std::optional<std::size_t> seeds;
  std::optional<std::vector<std::size_t>> kv;
  multi->add_option("--seeds", seeds, "Number of seeds to average");
  multi->add_option("--kv", kv, "Request counts K_v")->delimiter(',');

  auto* defaults = app.add_subcommand("print-config", "Print the default config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*single) return run_single(single_opts);
    if (*sweep) return run_sweep(sweep_opts, z_values);
    if (*multi) return run_multi(multi_opts, seeds, kv);
    if (*defaults) {
      std::cout << default_config_text();
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
