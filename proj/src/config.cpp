#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "anticipate/scenario.hpp"

namespace anticipate {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Accepts plain numbers and simple fractions such as "1/6".
double parse_number(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const double num = parse_number(key, text.substr(0, slash));
    const double den = parse_number(key, text.substr(slash + 1));
    if (den == 0.0) throw ConfigError(key + ": division by zero in '" + text + "'");
    return num / den;
  }
  if (text.empty()) throw ConfigError(key + ": empty value");
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(value)) {
    throw ConfigError(key + ": '" + text + "' is not a finite number");
  }
  return value;
}

long long parse_integer(const std::string& key, const std::string& raw) {
  const double value = parse_number(key, raw);
  if (value != std::floor(value) || std::abs(value) > 9.0e15) {
    throw ConfigError(key + ": '" + trim(raw) + "' is not an integer");
  }
  return static_cast<long long>(value);
}

std::size_t parse_count(const std::string& key, const std::string& raw) {
  const long long value = parse_integer(key, raw);
  if (value < 0) throw ConfigError(key + ": must be >= 0");
  return static_cast<std::size_t>(value);
}

std::vector<double> parse_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(key, item));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string& key, const std::string&)>;

template <typename Field>
Setter number(Field ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& k, const std::string& v) {
    c.*field = parse_number(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"scenario.seed",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         const long long s = parse_integer(k, v);
         if (s < 0) throw ConfigError(k + ": must be >= 0");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"scenario.bs_x_m",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         const auto xs = parse_list(k, v);
         c.bs_positions_m.resize(xs.size());
         for (std::size_t i = 0; i < xs.size(); ++i) c.bs_positions_m[i].x = xs[i];
       }},
      {"scenario.bs_y_m",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         const auto ys = parse_list(k, v);
         if (ys.size() != c.bs_positions_m.size()) {
           throw ConfigError(k + ": needs one entry per base station in scenario.bs_x_m");
         }
         for (std::size_t i = 0; i < ys.size(); ++i) c.bs_positions_m[i].y = ys[i];
       }},
      {"scenario.user_start_x_m",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.user_start_m.x = parse_number(k, v);
       }},
      {"scenario.user_start_y_m",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.user_start_m.y = parse_number(k, v);
       }},
      {"scenario.user_heading_deg", number(&ScenarioConfig::user_heading_deg)},
      {"scenario.user_speed_mps", number(&ScenarioConfig::user_speed_mps)},
      {"scenario.lookahead_s", number(&ScenarioConfig::lookahead_s)},
      {"scenario.cell_radius_m", number(&ScenarioConfig::cell_radius_m)},
      {"scenario.available_prbs",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.available_prbs = static_cast<int>(parse_integer(k, v));
       }},
      {"video.rate_bps", number(&ScenarioConfig::video_rate_bps)},
      {"video.slot_duration_s", number(&ScenarioConfig::slot_duration_s)},
      {"video.max_carryover_v", number(&ScenarioConfig::max_carryover_v)},
      {"link.total_power_dbm",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.link.total_power_dbm = parse_number(k, v);
       }},
      {"link.num_system_prbs",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.link.num_system_prbs = static_cast<int>(parse_integer(k, v));
       }},
      {"link.prb_bandwidth_hz",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.link.prb_bandwidth_hz = parse_number(k, v);
       }},
      {"link.noise_psd_dbm_hz",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.link.noise_psd_dbm_hz = parse_number(k, v);
       }},
      {"link.noise_figure_db",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.link.noise_figure_db = parse_number(k, v);
       }},
      {"link.interference_psd_dbm_hz",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.link.interference_psd_dbm_hz = parse_number(k, v);
       }},
      {"link.snr_gap_db",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.link.snr_gap_db = parse_number(k, v);
       }},
      {"link.min_bs_distance_m",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.link.min_bs_distance_m = parse_number(k, v);
       }},
      {"shadowing.sigma_db",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.shadowing.sigma_db = parse_number(k, v);
       }},
      {"shadowing.decorrelation_m",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.shadowing.decorrelation_m = parse_number(k, v);
       }},
      {"sweep.z_values_v",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.sweep_z_v = parse_list(k, v);
       }},
      {"admission.kv_values",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.kv_values.clear();
         for (double x : parse_list(k, v)) {
           if (x < 0 || x != std::floor(x)) throw ConfigError(k + ": entries must be counts");
           c.kv_values.push_back(static_cast<std::size_t>(x));
         }
       }},
      {"admission.num_seeds",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.num_seeds = parse_count(k, v);
       }},
      {"admission.mean_interarrival_s",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.admission.mean_interarrival_s = parse_number(k, v);
       }},
      {"admission.available_prbs",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.admission.available_prbs = static_cast<int>(parse_integer(k, v));
       }},
  };
  return table;
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }

  ScenarioConfig config;
  const auto& table = setters();
  // bs_y_m depends on bs_x_m, so x is applied first regardless of file order.
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) {
      throw ConfigError("config: entry '" + section + "' must live inside a [section]");
    }
    for (const auto& [key, value] : body) {
      const std::string dotted = section + "." + key;
      if (!table.contains(dotted)) throw ConfigError(dotted + ": unknown key");
      entries.emplace_back(dotted, value.get_value<std::string>());
    }
  }
  std::stable_partition(entries.begin(), entries.end(),
                        [](const auto& e) { return e.first == "scenario.bs_x_m"; });
  for (const auto& [key, value] : entries) table.at(key)(config, key, value);

  config.validate();
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(in);
}

std::string default_config_text() {
  return R"(; Reference two-cell highway scenario. Every key is optional.
[scenario]
seed = 0
bs_x_m = 0, 550
bs_y_m = 0, 0
user_start_x_m = 35
user_start_y_m = 0
user_heading_deg = 0
user_speed_mps = 30
lookahead_s = 16
cell_radius_m = 250
available_prbs = 50

[video]
rate_bps = 1500000
slot_duration_s = 1/6
max_carryover_v = 5

[link]
total_power_dbm = 46
num_system_prbs = 50
prb_bandwidth_hz = 180000
noise_psd_dbm_hz = -174
noise_figure_db = 9
interference_psd_dbm_hz = -149
snr_gap_db = 0
min_bs_distance_m = 35

[shadowing]
sigma_db = 10
decorrelation_m = 50

[sweep]
z_values_v = 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10

[admission]
kv_values = 5, 10, 15, 20, 25, 30, 35, 40
num_seeds = 10
mean_interarrival_s = 0.58
available_prbs = 15
)";
}

}  // namespace anticipate
