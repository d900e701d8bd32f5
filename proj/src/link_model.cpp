#include "anticipate/link_model.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "anticipate/playout_buffer.hpp"

namespace anticipate {

namespace {

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument(field + ": " + what);
}

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) {
  std::vector<std::uint32_t> raw;
  raw.reserve(words.size() * 2);
  for (auto w : words) {
    raw.push_back(static_cast<std::uint32_t>(w));
    raw.push_back(static_cast<std::uint32_t>(w >> 32));
  }
  std::seed_seq seq(raw.begin(), raw.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

// Lattices are capped at about a million points regardless of the span.
constexpr double kMaxLatticePoints = 1e6;

}  // namespace

void LinkBudget::validate() const {
  require(std::isfinite(total_power_dbm), "link.total_power_dbm", "must be finite");
  require(num_system_prbs >= 1, "link.num_system_prbs", "must be >= 1");
  require(std::isfinite(prb_bandwidth_hz) && prb_bandwidth_hz > 0, "link.prb_bandwidth_hz",
          "must be > 0");
  require(std::isfinite(noise_psd_dbm_hz), "link.noise_psd_dbm_hz", "must be finite");
  require(std::isfinite(noise_figure_db), "link.noise_figure_db", "must be finite");
  require(std::isfinite(interference_psd_dbm_hz), "link.interference_psd_dbm_hz",
          "must be finite");
  require(std::isfinite(snr_gap_db) && snr_gap_db >= 0, "link.snr_gap_db", "must be >= 0");
  require(std::isfinite(min_bs_distance_m) && min_bs_distance_m > 0, "link.min_bs_distance_m",
          "must be > 0");
}

double LinkBudget::prb_power_dbm() const {
  return watt_to_dbm(dbm_to_watt(total_power_dbm) / num_system_prbs);
}

double LinkBudget::noise_power_dbm() const {
  return noise_psd_dbm_hz + noise_figure_db + 10.0 * std::log10(prb_bandwidth_hz);
}

double LinkBudget::interference_power_dbm() const {
  return interference_psd_dbm_hz + 10.0 * std::log10(prb_bandwidth_hz);
}

double distance_m(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void ShadowingParams::validate() const {
  require(std::isfinite(sigma_db) && sigma_db >= 0, "shadowing.sigma_db", "must be >= 0");
  require(std::isfinite(decorrelation_m) && decorrelation_m > 0, "shadowing.decorrelation_m",
          "must be > 0");
}

double path_loss_db(double distance_km) {
  if (!(distance_km > 0) || !std::isfinite(distance_km)) {
    throw std::domain_error("path_loss_db: distance must be positive and finite");
  }
  return 128.1 + 37.6 * std::log10(distance_km);
}

ShadowingField::ShadowingField(const ShadowingParams& params, double min_position_m,
                               double max_position_m, std::uint64_t seed)
    : params_(params), origin_m_(min_position_m), seed_(seed) {
  params_.validate();
  if (!std::isfinite(min_position_m) || !std::isfinite(max_position_m) ||
      max_position_m < min_position_m) {
    throw std::invalid_argument("ShadowingField: invalid position interval");
  }
  extent_m_ = max_position_m - min_position_m;
  step_m_ = std::max(params_.decorrelation_m / 10.0, extent_m_ / kMaxLatticePoints);
  if (!(step_m_ > 0)) step_m_ = 1.0;

  const auto points = static_cast<std::size_t>(std::ceil(extent_m_ / step_m_)) + 1;
  lattice_.assign(points + 1, 0.0);
  if (params_.sigma_db == 0.0) return;

  std::mt19937_64 rng(mix_seed({seed_, 0x5eedULL}));
  std::normal_distribution<double> normal(0.0, 1.0);
  const double rho = std::exp(-step_m_ / params_.decorrelation_m);
  const double innovation = params_.sigma_db * std::sqrt(1.0 - rho * rho);
  lattice_[0] = params_.sigma_db * normal(rng);
  for (std::size_t i = 1; i < lattice_.size(); ++i) {
    lattice_[i] = rho * lattice_[i - 1] + innovation * normal(rng);
  }
}

double ShadowingField::at(double position_m) const {
  const double offset = position_m - origin_m_;
  if (!(offset >= 0) || offset > extent_m_) {
    throw std::out_of_range("ShadowingField::at: position outside the realised interval");
  }
  if (params_.sigma_db == 0.0) return 0.0;

  const auto i = std::min(static_cast<std::size_t>(std::floor(offset / step_m_)),
                          lattice_.size() - 2);
  const double left = offset - static_cast<double>(i) * step_m_;
  if (left == 0.0) return lattice_[i];
  const double right = step_m_ - left;

  const double d = params_.decorrelation_m;
  const double a = std::exp(-left / d);
  const double b = std::exp(-right / d);
  const double rho = a * b;
  const double denom = 1.0 - rho * rho;
  if (!(denom > 0)) return lattice_[i];

  const double mean = ((a - b * rho) * lattice_[i] + (b - a * rho) * lattice_[i + 1]) / denom;
  const double var = std::max(0.0, (1.0 - a * a) * (1.0 - b * b) / denom);

  std::mt19937_64 rng(mix_seed({seed_, std::bit_cast<std::uint64_t>(position_m)}));
  std::normal_distribution<double> normal(0.0, 1.0);
  return mean + params_.sigma_db * std::sqrt(var) * normal(rng);
}

double shadowing_db(double position_m, std::uint64_t seed, double decorrelation_m,
                    double sigma_db) {
  const ShadowingField field({sigma_db, decorrelation_m}, position_m, position_m, seed);
  return field.at(position_m);
}

double per_prb_bits(double gain_db, const LinkBudget& budget, double slot_duration_s) {
  if (!(slot_duration_s > 0)) {
    throw std::invalid_argument("per_prb_bits: slot duration must be > 0");
  }
  const double prb_power_w = dbm_to_watt(budget.total_power_dbm) / budget.num_system_prbs;
  const double noise_w = dbm_to_watt(budget.noise_power_dbm());
  const double interference_w = dbm_to_watt(budget.interference_power_dbm());
  const double sinr =
      prb_power_w * db_to_linear(gain_db) / (db_to_linear(budget.snr_gap_db) * (noise_w + interference_w));
  return slot_duration_s * budget.prb_bandwidth_hz * std::log1p(sinr) / std::numbers::ln2;
}

std::uint64_t link_seed(std::uint64_t seed, std::uint64_t user, std::uint64_t bs) {
  return mix_seed({seed, user, bs});
}

ChannelTrace build_trace(std::span<const Point> trajectory, std::span<const Point> bs_positions,
                         const LinkBudget& budget, const VideoSpec& spec,
                         const ShadowingParams& shadowing, std::uint64_t seed,
                         std::uint64_t user) {
  if (trajectory.empty()) throw std::invalid_argument("build_trace: empty trajectory");
  if (bs_positions.empty()) throw std::invalid_argument("build_trace: no base stations");
  if (trajectory.size() != spec.num_slots) {
    throw std::invalid_argument("build_trace: trajectory length " +
                                std::to_string(trajectory.size()) + " != num_slots " +
                                std::to_string(spec.num_slots));
  }
  budget.validate();
  shadowing.validate();

  // Shadowing is indexed by distance travelled along the trajectory.
  std::vector<double> travelled(trajectory.size(), 0.0);
  for (std::size_t t = 1; t < trajectory.size(); ++t) {
    travelled[t] = travelled[t - 1] + distance_m(trajectory[t - 1], trajectory[t]);
  }
  std::vector<ShadowingField> fields;
  fields.reserve(bs_positions.size());
  for (std::size_t b = 0; b < bs_positions.size(); ++b) {
    fields.emplace_back(shadowing, 0.0, travelled.back(), link_seed(seed, user, b));
  }

  ChannelTrace trace;
  trace.slot_duration_s = spec.slot_duration_s;
  const std::size_t slots = trajectory.size();
  trace.distances_m.resize(slots);
  trace.serving_bs.resize(slots);
  trace.gain_db.resize(slots);
  trace.bits_per_prb.resize(slots);

  std::size_t serving = 0;
  for (std::size_t t = 0; t < slots; ++t) {
    double best_gain = -std::numeric_limits<double>::infinity();
    double best_distance = 0.0;
    std::size_t best = serving;
    for (std::size_t b = 0; b < bs_positions.size(); ++b) {
      const double d = std::max(distance_m(trajectory[t], bs_positions[b]), budget.min_bs_distance_m);
      const double gain = -(path_loss_db(d / 1000.0) + fields[b].at(travelled[t]));
      const bool keeps_current = (t > 0 && b == serving);
      if (gain > best_gain || (gain == best_gain && keeps_current)) {
        best_gain = gain;
        best_distance = d;
        best = b;
      }
    }
    serving = best;
    trace.serving_bs[t] = best;
    trace.distances_m[t] = best_distance;
    trace.gain_db[t] = best_gain;
    trace.bits_per_prb[t] = per_prb_bits(best_gain, budget, spec.slot_duration_s);
  }
  return trace;
}

}  // namespace anticipate
