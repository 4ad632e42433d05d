// Calibration scratchpad for the activation model: sweeps the fit knobs and
// reports the anchor statistics used to freeze the shipped constants.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "vpplab/circuit.hpp"

using namespace vpplab;

static void report(const CircuitParams& base, int runs, uint64_t seed, bool full_grid) {
  MonteCarloConfig cfg;
  cfg.runs_per_vpp = runs;
  cfg.seed = seed;
  cfg.vpp_grid = full_grid ? std::vector<double>{1.5, 1.6, 1.7, 1.8, 1.9, 2.0, 2.1, 2.2, 2.3, 2.4, 2.5}
                           : std::vector<double>{1.7, 1.8, 1.9, 2.0, 2.5};
  auto res = monte_carlo(base, cfg);
  std::printf("%6s %8s %8s %8s %8s %8s %8s %6s\n", "vpp", "mean", "std", "min", "max",
              "tras_mu", "tras_mx", "bad");
  for (auto& r : res) {
    std::printf("%6.2f %8.3f %8.3f %8.3f %8.3f %8.2f %8.2f %6d\n", r.vpp, r.trcd.mean,
                r.trcd.stddev, r.trcd.min, r.trcd.max, r.tras.mean, r.tras.max,
                r.non_converged);
  }
}

int main(int argc, char** argv) {
  CircuitParams p;
  p.vth_access = 0.5305;
  p.body_effect = 0.19;
  int runs = 2000;
  uint64_t seed = 1;
  bool full_grid = false;
  for (int i = 1; i + 1 < argc; i += 2) {
    const char* k = argv[i];
    double v = std::atof(argv[i + 1]);
    if (!std::strcmp(k, "--kprime")) p.access_kprime = v * 1e-6;
    else if (!std::strcmp(k, "--sa")) p.sa_kprime = v * 1e-6;
    else if (!std::strcmp(k, "--margin")) p.sense_margin_v = v;
    else if (!std::strcmp(k, "--vread")) p.v_readable_fraction = v;
    else if (!std::strcmp(k, "--runs")) runs = static_cast<int>(v);
    else if (!std::strcmp(k, "--seed")) seed = static_cast<uint64_t>(v);
    else if (!std::strcmp(k, "--vth")) p.vth_access = v;
    else if (!std::strcmp(k, "--gamma")) p.body_effect = v;
    else if (!std::strcmp(k, "--step")) p.time_step_ps = v;
    else if (!std::strcmp(k, "--imb")) p.sa_imbalance_v = v;
    else if (!std::strcmp(k, "--alpha")) p.sa_drive_exponent = v;
    else if (!std::strcmp(k, "--beta")) p.sa_room_exponent = v;
    else if (!std::strcmp(k, "--fullgrid")) full_grid = v != 0;
    else if (!std::strcmp(k, "--ss")) p.subthreshold_v = v;
  }
  std::printf("kprime=%.3g sa=%.3g margin=%.4f vread=%.3f vth=%.4f gamma=%.3f\n",
              p.access_kprime, p.sa_kprime, p.sense_margin_v, p.v_readable_fraction,
              p.vth_access, p.body_effect);

  // single nominal run detail
  for (double vpp : {2.5, 1.9, 1.8, 1.7}) {
    CircuitParams q = p;
    q.vpp = vpp;
    auto r = simulate_activation(q, 200.0);
    std::printf("vpp %.1f: vsat=%.4f trcd=%.3f tras=%.3f conv=%d\n", vpp, r.v_saturation,
                r.trcd_min_ns, r.tras_min_ns, r.converged());
  }
  report(p, runs, seed, full_grid);
  return 0;
}
