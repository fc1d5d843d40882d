#pragma once

// Mode layout of the interferometer and the experiment parameter block.
//
// Registry order is fixed to: p0, p0', p1 .. pn, loss1 .. lossn. One dedicated
// loss mode per probe index keeps which-probe-was-lost information, which is
// what generates the entanglement of the lossy state.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockmeter/fock.hpp"

namespace fockmeter {

namespace modes {

inline const std::string& p0() {
  static const std::string label = "p0";
  return label;
}

inline const std::string& p0_prime() {
  static const std::string label = "p0'";
  return label;
}

// Probe and loss labels are 1-based: probe(1) = "p1" .. probe(n) = "pn".
inline std::string probe(int l) { return "p" + std::to_string(l); }
inline std::string loss(int l) { return "loss" + std::to_string(l); }

}  // namespace modes

inline ModeRegistryPtr experiment_registry(int n) {
  if (n < 1) throw std::invalid_argument("probe count n must be >= 1");
  std::vector<std::string> labels;
  labels.reserve(2 * static_cast<std::size_t>(n) + 2);
  labels.push_back(modes::p0());
  labels.push_back(modes::p0_prime());
  for (int l = 1; l <= n; ++l) labels.push_back(modes::probe(l));
  for (int l = 1; l <= n; ++l) labels.push_back(modes::loss(l));
  return std::make_shared<const ModeRegistry>(std::move(labels));
}

// Every free parameter of the experiment: probe count n, constant source
// phase xi, p0/p0' path phase gamma, the probed phase phi, per-probe
// amplitude transmissions T_l, and the particle statistics.
struct ExperimentConfig {
  int n = 1;
  double xi = 0.0;
  double gamma = 0.0;
  double phi = 0.0;
  std::vector<double> transmissions;  // size n, each in [0, 1]
  ParticleStatistics statistics = ParticleStatistics::Boson;

  static ExperimentConfig lossless(int n, double xi = 0.0, double gamma = 0.0,
                                   double phi = 0.0,
                                   ParticleStatistics statistics = ParticleStatistics::Boson) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.xi = xi;
    cfg.gamma = gamma;
    cfg.phi = phi;
    cfg.transmissions.assign(static_cast<std::size_t>(n > 0 ? n : 0), 1.0);
    cfg.statistics = statistics;
    return cfg;
  }

  ExperimentConfig with_phi(double new_phi) const {
    ExperimentConfig cfg = *this;
    cfg.phi = new_phi;
    return cfg;
  }

  // Lumped fringe offset.
  double zeta0() const { return xi + gamma - std::numbers::pi / 2.0; }

  double transmission_product() const {
    double v = 1.0;
    for (double t : transmissions) v *= t;
    return v;
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("probe count n must be >= 1");
    if (transmissions.size() != static_cast<std::size_t>(n)) {
      throw std::invalid_argument("transmissions must have exactly n entries");
    }
    for (double t : transmissions) {
      if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("transmission outside [0, 1]");
      }
    }
  }
};

}  // namespace fockmeter
