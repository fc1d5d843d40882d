#pragma once

// Shared helpers for the suites: deterministic random states and configs.

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "fockmeter/config.hpp"
#include "fockmeter/fock.hpp"

namespace test_support {

using fockmeter::Amplitude;
using fockmeter::ExperimentConfig;
using fockmeter::FockVector;
using fockmeter::ModeRegistry;
using fockmeter::ModeRegistryPtr;
using fockmeter::OccupationBasisState;
using fockmeter::ParticleStatistics;

inline ModeRegistryPtr make_registry(std::vector<std::string> labels) {
  return std::make_shared<const ModeRegistry>(std::move(labels));
}

inline Amplitude random_amplitude(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  return {dist(rng), dist(rng)};
}

// A sparse random vector with a handful of terms; occupations stay well
// below the cap so short ladder chains cannot overflow.
inline FockVector random_state(std::mt19937& rng, const ModeRegistryPtr& registry,
                               ParticleStatistics stats) {
  std::uniform_int_distribution<int> term_count(1, 4);
  std::uniform_int_distribution<int> boson_occ(0, 3);
  std::uniform_int_distribution<int> fermion_occ(0, 1);
  FockVector::TermMap terms;
  const int k = term_count(rng);
  for (int t = 0; t < k; ++t) {
    std::vector<std::uint8_t> occ(registry->size());
    for (auto& o : occ) {
      o = static_cast<std::uint8_t>(stats == ParticleStatistics::Boson ? boson_occ(rng)
                                                                       : fermion_occ(rng));
    }
    terms[OccupationBasisState(std::move(occ))] = random_amplitude(rng);
  }
  return FockVector::from_terms(registry, stats, std::move(terms));
}

inline ParticleStatistics random_statistics(std::mt19937& rng) {
  return (rng() % 2 == 0) ? ParticleStatistics::Boson : ParticleStatistics::Fermion;
}

// Random lossy config: n in [1, n_max], transmissions in [t_min, 1].
inline ExperimentConfig random_config(std::mt19937& rng, int n_max, double t_min) {
  std::uniform_int_distribution<int> n_dist(1, n_max);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  std::uniform_real_distribution<double> t_dist(t_min, 1.0);
  ExperimentConfig cfg;
  cfg.n = n_dist(rng);
  cfg.xi = angle(rng);
  cfg.gamma = angle(rng);
  cfg.phi = angle(rng);
  cfg.transmissions.resize(static_cast<std::size_t>(cfg.n));
  for (auto& t : cfg.transmissions) t = t_dist(rng);
  cfg.statistics = random_statistics(rng);
  return cfg;
}

}  // namespace test_support
