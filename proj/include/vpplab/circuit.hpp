#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vpplab/errors.hpp"
#include "vpplab/rng.hpp"

namespace vpplab {

// One cell / bitline / sense-amplifier slice. Component values default to the
// reference DDR4 set; the transistor is a behavioral square-law device with a
// threshold and a linear body term, both shared by the saturation-voltage
// closed form below.
struct CircuitParams {
  double cell_capacitance_f = 16.8e-15;
  double cell_resistance_ohm = 698.0;
  double bitline_capacitance_f = 100.5e-15;
  double bitline_resistance_ohm = 6980.0;

  double access_nmos_w_nm = 55.0;
  double access_nmos_l_nm = 85.0;
  double senseamp_nmos_w_um = 1.3;
  double senseamp_nmos_l_um = 0.1;
  double senseamp_pmos_w_um = 0.9;
  double senseamp_pmos_l_um = 0.1;

  double vdd = 1.2;
  double vpp = 2.5;

  // Access transistor threshold. With body_effect = g the channel cuts off
  // when vpp - vth_access - (1+g)*v_source reaches zero.
  double vth_access = 0.72;
  double body_effect = 0.0;

  double v_readable_fraction = 0.75;
  double restoration_completion_fraction = 0.99;

  // Behavioral transconductance constants (units A/V^2 per W/L square for the
  // access device, S per W/L square for the latch) and the sense-amp enable
  // margin. These are the fitted calibration constants.
  double access_kprime = 9.6e-6;
  double sa_kprime = 2.65e-6;
  double sense_margin_v = 0.024;
  // Latch drive shape: current scales as (|imbalance|/(vdd/2))^exponent
  // times (headroom/(vdd/2))^room_exponent. Exponents below 1 strengthen
  // regeneration near the trip point and near the rails respectively.
  double sa_drive_exponent = 1.0;
  double sa_room_exponent = 1.0;
  // Input-referred latch offset per unit geometric mismatch of the two
  // sense-amp devices (volts per relative W imbalance).
  double sa_imbalance_v = 0.15;
  // Width of the moderate-inversion transition; keeps the tail of charge
  // restoration finite without moving the cutoff point.
  double subthreshold_v = 0.05;
  // Per-run input offset filled in from component mismatch by Monte Carlo.
  double sa_reference_offset_v = 0.0;

  double time_step_ps = 1.0;

  void validate() const {
    auto pos = [](double v, const char* n) {
      if (!(v > 0)) throw ProfileError(std::string("circuit parameter must be positive: ") + n);
    };
    pos(cell_capacitance_f, "cell_capacitance");
    pos(cell_resistance_ohm, "cell_resistance");
    pos(bitline_capacitance_f, "bitline_capacitance");
    pos(bitline_resistance_ohm, "bitline_resistance");
    pos(access_nmos_w_nm, "access_nmos_w");
    pos(access_nmos_l_nm, "access_nmos_l");
    pos(vdd, "vdd");
    pos(vpp, "vpp");
    pos(time_step_ps, "time_step");
    if (time_step_ps > 1.0 + 1e-12)
      throw ProfileError("integration step must be <= 1 ps");
    if (!(vth_access < vpp))
      throw ProfileError("vth_access must be below vpp");
    if (body_effect < 0)
      throw ProfileError("body_effect must be non-negative");
  }

  double access_k() const {
    return access_kprime * (access_nmos_w_nm / access_nmos_l_nm);
  }
  double sa_conductance() const {
    double n = senseamp_nmos_w_um / senseamp_nmos_l_um;
    double p = senseamp_pmos_w_um / senseamp_pmos_l_um;
    return sa_kprime * 0.5 * (n + p);
  }
};

// Maximum cell voltage reachable through the access channel during
// restoration: the channel cuts off when the gate-to-source overdrive
// vanishes, clamped at the array supply.
inline double saturation_voltage(const CircuitParams& p) {
  return std::min(p.vdd, (p.vpp - p.vth_access) / (1.0 + p.body_effect));
}

// Asymptotic shared voltage of the cell/bitline capacitor pair, used as the
// analytic oracle for the integrator with the sense amp disabled.
inline double charge_sharing_voltage(const CircuitParams& p, double v_cell_initial,
                                     double v_precharge) {
  return (p.bitline_capacitance_f * v_precharge + p.cell_capacitance_f * v_cell_initial) /
         (p.bitline_capacitance_f + p.cell_capacitance_f);
}

struct ActivationOptions {
  bool sense_amp_enabled = true;
  // Negative means "steady-state stored one", i.e. the saturation voltage.
  double v_cell_initial = -1.0;
  double v_precharge = -1.0;  // negative means vdd/2
  double waveform_stride_ps = 100.0;
  // Stop integrating once both latencies are resolved; disable when the full
  // waveform over the whole duration is wanted.
  bool stop_after_convergence = false;
};

struct ActivationResult {
  std::vector<double> time_ns;
  std::vector<double> v_bitline;
  std::vector<double> v_cell;
  double trcd_min_ns = 0.0;
  double tras_min_ns = 0.0;
  double v_saturation = 0.0;
  bool converged_trcd = false;
  bool converged_tras = false;
  bool converged() const { return converged_trcd && converged_tras; }
};

namespace detail {

// Square-law channel current between the cell and bitline nodes with the
// series cell/bitline resistances folded in via an effective-conductance
// combination. Positive value means current flows cell -> bitline.
inline double access_current(const CircuitParams& p, double v_cell, double v_bitline) {
  double hi = std::max(v_cell, v_bitline);
  double lo = std::min(v_cell, v_bitline);
  double vds = hi - lo;
  if (vds <= 0) return 0.0;
  double od = p.vpp - p.vth_access - (1.0 + p.body_effect) * lo;
  // Softplus overdrive: square-law well above threshold, exponentially
  // vanishing below it.
  double ss = p.subthreshold_v;
  double od_eff;
  if (od > 20.0 * ss) {
    od_eff = od;
  } else if (od < -20.0 * ss) {
    return 0.0;
  } else {
    od_eff = ss * std::log1p(std::exp(od / ss));
  }
  double k = p.access_k();
  double i = vds < od_eff ? k * (od_eff * vds - 0.5 * vds * vds) : 0.5 * k * od_eff * od_eff;
  if (i <= 0) return 0.0;
  double rs = p.cell_resistance_ohm + p.bitline_resistance_ohm;
  i = i / (1.0 + i * rs / vds);
  return v_cell >= v_bitline ? i : -i;
}

}  // namespace detail

// Integrates the activation transient: charge sharing through the access
// channel, then cross-coupled regeneration toward vdd once the bitline
// imbalance exceeds the sensing margin. Fixed-step explicit integration; the
// two node charges are updated from the same branch current so total charge
// is conserved exactly when the sense amp is off.
inline ActivationResult simulate_activation(const CircuitParams& p, double duration_ns,
                                            const ActivationOptions& opts = {}) {
  p.validate();
  if (duration_ns < 40.0) throw ProfileError("activation duration must be >= 40 ns");

  const double vsat = saturation_voltage(p);
  const double dt = p.time_step_ps * 1e-12;
  const double half_vdd = 0.5 * p.vdd;
  const double v_ref = half_vdd + p.sa_reference_offset_v;
  double v_c = opts.v_cell_initial < 0 ? vsat : opts.v_cell_initial;
  double v_b = opts.v_precharge < 0 ? half_vdd : opts.v_precharge;

  const double v_read = p.v_readable_fraction * p.vdd;
  const double c_c = p.cell_capacitance_f;
  const double c_b = p.bitline_capacitance_f;
  const double g_sa = p.sa_conductance();

  ActivationResult out;
  out.v_saturation = vsat;
  const double tras_target = p.restoration_completion_fraction * vsat;

  const long steps = static_cast<long>(duration_ns * 1000.0 / p.time_step_ps);
  const long stride = std::max<long>(1, static_cast<long>(opts.waveform_stride_ps / p.time_step_ps));

  bool sa_on = false;
  bool cell_dipped = v_c < tras_target;
  double prev_b = v_b, prev_c = v_c;

  out.time_ns.reserve(static_cast<size_t>(steps / stride) + 2);
  out.v_bitline.reserve(out.time_ns.capacity());
  out.v_cell.reserve(out.time_ns.capacity());

  for (long s = 0; s <= steps; ++s) {
    double t_ns = static_cast<double>(s) * p.time_step_ps * 1e-3;
    if (s % stride == 0) {
      out.time_ns.push_back(t_ns);
      out.v_bitline.push_back(v_b);
      out.v_cell.push_back(v_c);
    }

    if (!out.converged_trcd && v_b >= v_read) {
      double f = (v_b - prev_b) > 1e-15 ? (v_b - v_read) / (v_b - prev_b) : 0.0;
      out.trcd_min_ns = t_ns - f * p.time_step_ps * 1e-3;
      out.converged_trcd = true;
    }
    if (v_c < tras_target) cell_dipped = true;
    if (!out.converged_tras && cell_dipped && v_c >= tras_target) {
      double f = (v_c - prev_c) > 1e-15 ? (v_c - tras_target) / (v_c - prev_c) : 0.0;
      out.tras_min_ns = t_ns - f * p.time_step_ps * 1e-3;
      out.converged_tras = true;
    }
    if (s == steps) break;
    if (opts.stop_after_convergence && out.converged_trcd && out.converged_tras) break;

    prev_b = v_b;
    prev_c = v_c;

    double i_acc = detail::access_current(p, v_c, v_b);  // cell -> bitline
    double i_sa = 0.0;
    if (opts.sense_amp_enabled) {
      if (!sa_on && std::fabs(v_b - v_ref) >= p.sense_margin_v) sa_on = true;
      if (sa_on) {
        double delta = v_b - v_ref;
        double rail = delta >= 0 ? p.vdd : 0.0;
        double room = std::fabs(rail - v_b) / half_vdd;
        if (room < 0) room = 0;
        if (room > 1) room = 1;
        double mag = std::fabs(delta) / half_vdd;
        double drive = p.sa_drive_exponent == 1.0
                           ? mag
                           : std::pow(mag, p.sa_drive_exponent);
        if (p.sa_room_exponent != 1.0) room = std::pow(room, p.sa_room_exponent);
        i_sa = (delta >= 0 ? 1.0 : -1.0) * g_sa * half_vdd * drive * room;
      }
    }

    v_c += (-i_acc) * dt / c_c;
    v_b += (i_acc + i_sa) * dt / c_b;
    if (v_b > p.vdd) v_b = p.vdd;
    if (v_b < 0) v_b = 0;
    if (v_c < 0) v_c = 0;
  }

  if (!out.converged_trcd) out.trcd_min_ns = duration_ns;
  if (!out.converged_tras) out.tras_min_ns = duration_ns;
  return out;
}

struct MonteCarloConfig {
  double variation_fraction = 0.05;
  int runs_per_vpp = 10000;
  std::vector<double> vpp_grid;  // defaults to 1.5..2.5 step 0.1
  uint64_t seed = 1;
  double duration_ns = 200.0;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const {
    if (variation_fraction < 0 || variation_fraction > 0.2)
      throw ConfigError("variation_fraction must be within [0, 0.2]");
    if (runs_per_vpp < 1) throw ConfigError("runs_per_vpp must be >= 1");
    for (size_t i = 1; i < vpp_grid.size(); ++i)
      if (vpp_grid[i] <= vpp_grid[i - 1])
        throw ConfigError("vpp grid must be strictly increasing");
  }

  static std::vector<double> default_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i) g.push_back(1.5 + 0.1 * i);
    return g;
  }
};

struct Histogram {
  double lo = 0.0;
  double width = 0.0;
  std::vector<uint64_t> counts;

  void build(const std::vector<double>& xs, double bin_width) {
    if (xs.empty()) return;
    double mn = *std::min_element(xs.begin(), xs.end());
    double mx = *std::max_element(xs.begin(), xs.end());
    lo = std::floor(mn / bin_width) * bin_width;
    width = bin_width;
    size_t nbins = static_cast<size_t>((mx - lo) / bin_width) + 1;
    counts.assign(nbins, 0);
    for (double x : xs) {
      size_t b = static_cast<size_t>((x - lo) / bin_width);
      if (b >= counts.size()) b = counts.size() - 1;
      counts[b]++;
    }
  }
};

struct MonteCarloStat {
  double mean = 0, stddev = 0, min = 0, max = 0;

  void compute(const std::vector<double>& xs) {
    if (xs.empty()) return;
    double s = 0;
    for (double x : xs) s += x;
    mean = s / static_cast<double>(xs.size());
    double v = 0;
    for (double x : xs) v += (x - mean) * (x - mean);
    stddev = std::sqrt(v / static_cast<double>(xs.size()));
    min = *std::min_element(xs.begin(), xs.end());
    max = *std::max_element(xs.begin(), xs.end());
  }
};

struct MonteCarloPerVpp {
  double vpp = 0;
  MonteCarloStat trcd, tras, vsat;
  Histogram trcd_hist, tras_hist;
  double worst_trcd_ns = 0;
  int non_converged = 0;
  std::vector<double> trcd_samples;  // kept for paired-run checks and export
  std::vector<double> tras_samples;
};

// Least-squares fit of (vth_access, body_effect) from measured saturation
// anchors: sat = (vpp - vth) / (1 + g) is linear in vpp.
inline std::pair<double, double> fit_access_threshold(
    const std::vector<std::pair<double, double>>& vpp_vs_vsat) {
  if (vpp_vs_vsat.size() < 2)
    throw ConfigError("threshold fit needs at least two anchors");
  double n = static_cast<double>(vpp_vs_vsat.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : vpp_vs_vsat) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double a = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double b = (sy - a * sx) / n;
  double gamma = 1.0 / a - 1.0;
  double vth = -b / a;
  return {vth, gamma};
}

// Perturbation factors for one Monte-Carlo run, derived from (seed, run) only
// so the same run index is comparable across vpp grid points.
struct ComponentVariation {
  double c_cell = 1, r_cell = 1, c_bl = 1, r_bl = 1;
  double w_acc = 1, l_acc = 1, w_san = 1, w_sap = 1, vth = 1;

  static ComponentVariation draw(uint64_t seed, int run, double frac) {
    Rng rng(hash_combine(seed, 0x6d6f6e7465ULL + static_cast<uint64_t>(run)));
    auto u = [&] { return 1.0 + frac * (2.0 * rng.uniform01() - 1.0); };
    ComponentVariation v;
    v.c_cell = u();
    v.r_cell = u();
    v.c_bl = u();
    v.r_bl = u();
    v.w_acc = u();
    v.l_acc = u();
    v.w_san = u();
    v.w_sap = u();
    v.vth = u();
    return v;
  }

  CircuitParams apply(CircuitParams p) const {
    p.cell_capacitance_f *= c_cell;
    p.cell_resistance_ohm *= r_cell;
    p.bitline_capacitance_f *= c_bl;
    p.bitline_resistance_ohm *= r_bl;
    p.access_nmos_w_nm *= w_acc;
    p.access_nmos_l_nm *= l_acc;
    p.senseamp_nmos_w_um *= w_san;
    p.senseamp_pmos_w_um *= w_sap;
    p.vth_access *= vth;
    // Geometric mismatch of the latch pair appears as input-referred offset.
    p.sa_reference_offset_v = p.sa_imbalance_v * (w_san - w_sap);
    return p;
  }
};

// runs_per_vpp independent activations per grid point, each with all
// component parameters perturbed uniformly within the variation fraction.
// Deterministic under the seed regardless of thread count: every run derives
// its own perturbation from (seed, run index).
std::vector<MonteCarloPerVpp> monte_carlo(const CircuitParams& base,
                                          const MonteCarloConfig& config);

}  // namespace vpplab

#include "vpplab/circuit_mc.inl"
