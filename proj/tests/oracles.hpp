#pragma once

// Test-side oracles, deliberately independent of the Fock engine: amplitudes
// come from the hand-expanded branch structure of the lossy state, never from
// engine operator applications.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "fockmeter/config.hpp"

namespace test_oracles {

// Entropy of the {p0, p0'} cut by explicit partial-trace sum over the
// complementary basis states, with the 2x2 eigenproblem solved by hand.
inline double brute_force_sensing_entropy(const fockmeter::ExperimentConfig& cfg) {
  using Key = std::vector<int>;  // occupations of (probes..., losses...)
  struct KeptAmplitude {
    int p0prime;  // 0 -> |p0>, 1 -> |p0'>
    std::complex<double> amp;
  };
  std::map<Key, std::vector<KeptAmplitude>> buckets;

  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const std::size_t n = static_cast<std::size_t>(cfg.n);

  Key q_rest(2 * n, 0);
  for (std::size_t l = 0; l < n; ++l) q_rest[l] = 1;
  buckets[q_rest].push_back({0, {inv_sqrt2, 0.0}});

  const std::complex<double> branch_phase =
      std::polar(inv_sqrt2, cfg.xi - cfg.n * cfg.phi);
  for (std::size_t subset = 0; subset < (1u << n); ++subset) {
    Key rest(2 * n, 0);
    std::complex<double> amp = branch_phase;
    for (std::size_t l = 0; l < n; ++l) {
      const double t = cfg.transmissions[l];
      if (subset & (1u << l)) {
        rest[n + l] = 1;  // probe l lost
        amp *= std::sqrt(1.0 - t * t);
      } else {
        rest[l] = 1;
        amp *= t;
      }
    }
    if (std::abs(amp) > 0.0) buckets[rest].push_back({1, amp});
  }

  std::complex<double> rho[2][2] = {};
  for (const auto& [rest, entries] : buckets) {
    for (const auto& row : entries) {
      for (const auto& col : entries) {
        rho[row.p0prime][col.p0prime] += row.amp * std::conj(col.amp);
      }
    }
  }

  const double trace = rho[0][0].real() + rho[1][1].real();
  const double half_gap = 0.5 * (rho[0][0].real() - rho[1][1].real());
  const double radius = std::sqrt(half_gap * half_gap + std::norm(rho[0][1]));
  double entropy = 0.0;
  for (double lambda : {trace / 2.0 + radius, trace / 2.0 - radius}) {
    if (lambda > 1e-12) entropy -= lambda * std::log(lambda);
  }
  return entropy;
}

}  // namespace test_oracles
