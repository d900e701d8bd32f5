#pragma once

#include <cstdint>
#include <cstddef>
#include <span>
#include <vector>

namespace anticipate {

struct VideoSpec;

/// Radio constants of the downlink. Defaults reproduce the reference LTE
/// 10 MHz deployment (50 PRBs of 180 kHz, 46 dBm, 9 dB noise figure).
struct LinkBudget {
  double total_power_dbm = 46.0;
  int num_system_prbs = 50;
  double prb_bandwidth_hz = 180e3;
  double noise_psd_dbm_hz = -174.0;
  double noise_figure_db = 9.0;
  double interference_psd_dbm_hz = -149.0;
  double snr_gap_db = 0.0;
  double min_bs_distance_m = 35.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  double prb_power_dbm() const;
  double noise_power_dbm() const;
  double interference_power_dbm() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance_m(Point a, Point b);

/// Log-normal shadowing parameters. The process is Gauss-Markov along the
/// travelled distance with autocorrelation exp(-dx / decorrelation_m).
struct ShadowingParams {
  double sigma_db = 10.0;
  double decorrelation_m = 50.0;

  void validate() const;
};

/// Outdoor macro-cell path loss 128.1 + 37.6 log10(d) in dB, d in km.
/// Throws std::domain_error for non-positive or non-finite distances.
double path_loss_db(double distance_km);

/// A frozen realisation of a spatially correlated shadowing process over the
/// position interval [min_position_m, max_position_m].
///
/// Values on an internal lattice follow an exact stationary AR(1) recursion;
/// off-lattice queries are drawn from the exact conditional (bridge)
/// distribution given the two neighbouring lattice values, with noise keyed on
/// the query position. Every query is therefore a pure function of
/// (seed, position): repeated and out-of-order queries agree.
class ShadowingField {
 public:
  ShadowingField(const ShadowingParams& params, double min_position_m,
                 double max_position_m, std::uint64_t seed);

  /// Shadowing in dB at `position_m`. Throws std::out_of_range outside the
  /// interval the field was built for.
  double at(double position_m) const;

  double lattice_step_m() const { return step_m_; }

 private:
  ShadowingParams params_;
  double origin_m_ = 0.0;
  double extent_m_ = 0.0;
  double step_m_ = 1.0;
  std::uint64_t seed_ = 0;
  std::vector<double> lattice_;
};

/// Convenience wrapper: one shadowing sample at `position_m` from a field
/// seeded with `seed`. Deterministic in (seed, position, params).
double shadowing_db(double position_m, std::uint64_t seed, double decorrelation_m,
                    double sigma_db);

/// Bits one PRB carries during one slot at average channel gain `gain_db`:
/// T_d * B * log2(1 + SINR_eff) with SINR_eff = (P/N) g / (gap (noise + I)).
double per_prb_bits(double gain_db, const LinkBudget& budget, double slot_duration_s);

/// Predicted per-slot channel of one user over its look-ahead window.
struct ChannelTrace {
  double slot_duration_s = 0.0;
  std::vector<double> distances_m;
  std::vector<std::size_t> serving_bs;
  std::vector<double> gain_db;
  std::vector<double> bits_per_prb;

  std::size_t size() const { return gain_db.size(); }
};

/// Derives the shadowing seed for one (user, base station) link so that every
/// link owns an independent stream.
std::uint64_t link_seed(std::uint64_t seed, std::uint64_t user, std::uint64_t bs);

/// Builds the predicted trace for a user following `trajectory` (one position
/// per slot). Each slot is served by the base station with the highest
/// average received power; ties keep the current serving station.
ChannelTrace build_trace(std::span<const Point> trajectory, std::span<const Point> bs_positions,
                         const LinkBudget& budget, const VideoSpec& spec,
                         const ShadowingParams& shadowing, std::uint64_t seed,
                         std::uint64_t user = 0);

}  // namespace anticipate
