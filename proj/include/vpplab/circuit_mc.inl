#pragma once

#include <atomic>
#include <thread>

namespace vpplab {

inline std::vector<MonteCarloPerVpp> monte_carlo(const CircuitParams& base,
                                                 const MonteCarloConfig& config_in) {
  MonteCarloConfig config = config_in;
  if (config.vpp_grid.empty()) config.vpp_grid = MonteCarloConfig::default_grid();
  config.validate();
  base.validate();

  int nthreads = config.threads > 0
                     ? config.threads
                     : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  std::vector<MonteCarloPerVpp> out(config.vpp_grid.size());
  for (size_t gi = 0; gi < config.vpp_grid.size(); ++gi) {
    MonteCarloPerVpp& slot = out[gi];
    slot.vpp = config.vpp_grid[gi];
    slot.trcd_samples.assign(static_cast<size_t>(config.runs_per_vpp), 0.0);
    slot.tras_samples.assign(static_cast<size_t>(config.runs_per_vpp), 0.0);
    std::vector<double> vsat_samples(static_cast<size_t>(config.runs_per_vpp), 0.0);
    std::vector<uint8_t> bad(static_cast<size_t>(config.runs_per_vpp), 0);

    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        int run = next.fetch_add(1);
        if (run >= config.runs_per_vpp) break;
        ComponentVariation var =
            ComponentVariation::draw(config.seed, run, config.variation_fraction);
        CircuitParams p = var.apply(base);
        p.vpp = slot.vpp;
        ActivationOptions opts;
        opts.stop_after_convergence = true;
        ActivationResult r = simulate_activation(p, config.duration_ns, opts);
        slot.trcd_samples[static_cast<size_t>(run)] = r.trcd_min_ns;
        slot.tras_samples[static_cast<size_t>(run)] = r.tras_min_ns;
        vsat_samples[static_cast<size_t>(run)] = r.v_saturation;
        if (!r.converged()) bad[static_cast<size_t>(run)] = 1;
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (uint8_t b : bad) slot.non_converged += b;
    slot.trcd.compute(slot.trcd_samples);
    slot.tras.compute(slot.tras_samples);
    slot.vsat.compute(vsat_samples);
    slot.trcd_hist.build(slot.trcd_samples, 0.1);
    slot.tras_hist.build(slot.tras_samples, 0.25);
    slot.worst_trcd_ns = slot.trcd.max;
  }
  return out;
}

}  // namespace vpplab
