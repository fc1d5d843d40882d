// Minimal library walkthrough: prepare a lossy 3-probe experiment, print the
// port-D fringe, and compare the engine's minimum uncertainty with the
// Heisenberg and shot-noise limits.

#include <cstdio>
#include <numbers>

#include "fockmeter/fockmeter.hpp"

int main() {
  fockmeter::ExperimentConfig cfg;
  cfg.n = 3;
  cfg.gamma = std::numbers::pi / 2.0;  // zeta0 = 0
  cfg.transmissions = {0.95, 0.9, 0.85};

  const fockmeter::PhaseProfile profile(cfg);
  std::printf("phi      P_D\n");
  for (int j = 0; j <= 12; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / 12.0;
    std::printf("%6.4f  %.6f\n", phi, profile.detection_probability(fockmeter::OutputPort::D, phi));
  }

  const auto opt = fockmeter::min_phase_uncertainty(cfg);
  const double v = cfg.transmission_product();
  std::printf("\nvisibility        %.6f\n", v);
  std::printf("delta_phi_min     %.6f at phi = %.6f\n", opt.delta_phi_min, opt.phi_opt);
  std::printf("heisenberg limit  %.6f\n", 1.0 / cfg.n);
  std::printf("shot-noise limit  %.6f\n", 1.0 / std::sqrt(static_cast<double>(cfg.n)));
  std::printf("regime            %s\n",
              fockmeter::to_string(fockmeter::feasibility(cfg.n, v)));
  return 0;
}
