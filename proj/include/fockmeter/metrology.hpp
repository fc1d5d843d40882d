#pragma once

// Phase-uncertainty evaluation by error propagation on the Fock engine,
// optimum search, Heisenberg/shot-noise comparisons, and the feasibility
// classification of the visibility thresholds.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockmeter/config.hpp"
#include "fockmeter/errors.hpp"
#include "fockmeter/experiment.hpp"

namespace fockmeter {

enum class UncertaintyMethod { FiniteDifference, ClosedForm };

struct UncertaintyReport {
  double phi = 0.0;
  double delta_phi = 0.0;
  double derivative = 0.0;   // d<n_diff>/d phi
  double delta_ndiff = 0.0;  // sqrt of the engine variance
  UncertaintyMethod method = UncertaintyMethod::FiniteDifference;
};

namespace detail {

// Central difference with one Richardson extrapolation step. h balances
// truncation against rounding for the ~1e-10 accuracy the checks need.
template <typename F>
double richardson_derivative(F&& f, double x, double h) {
  const double d_h = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d_h2 = (f(x + h / 2.0) - f(x - h / 2.0)) / h;
  return (4.0 * d_h2 - d_h) / 3.0;
}

inline constexpr double kDerivativeStep = 1e-5;
inline constexpr double kDerivativeFloor = 1e-12;

inline double delta_phi_at(const PhaseProfile& profile, double phi) {
  const double derivative = richardson_derivative(
      [&](double p) { return profile.mean_ndiff(p); }, phi, kDerivativeStep);
  if (std::abs(derivative) < kDerivativeFloor) {
    throw DivergentPhaseUncertainty("indeterminate at fringe extremum");
  }
  return std::sqrt(profile.var_ndiff(phi)) / std::abs(derivative);
}

}  // namespace detail

// Error propagation: delta_phi = delta_n_diff / |d<n_diff>/d phi|, the
// derivative taken by finite difference on the engine mean.
inline UncertaintyReport phase_uncertainty(const ExperimentConfig& cfg) {
  const PhaseProfile profile(cfg);
  UncertaintyReport report;
  report.phi = cfg.phi;
  report.method = UncertaintyMethod::FiniteDifference;
  report.derivative = detail::richardson_derivative(
      [&](double p) { return profile.mean_ndiff(p); }, cfg.phi, detail::kDerivativeStep);
  report.delta_ndiff = std::sqrt(profile.var_ndiff(cfg.phi));
  if (std::abs(report.derivative) < detail::kDerivativeFloor) {
    throw DivergentPhaseUncertainty("indeterminate at fringe extremum");
  }
  report.delta_phi = report.delta_ndiff / std::abs(report.derivative);
  return report;
}

struct OptimalPhase {
  double phi_opt = 0.0;
  double delta_phi_min = 0.0;
};

// Minimizes delta_phi over phi in [0, 2pi): coarse 720-point grid, then
// golden-section refinement to 1e-9. Ties break to the smallest phi. On a
// lossless config the uncertainty is phi-independent, so phi_opt is just the
// tie-break choice; on lossy configs the minimum is strict and sits at
// n phi - zeta0 = pi/2 (mod pi).
inline OptimalPhase min_phase_uncertainty(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.transmission_product() <= 0.0) {
    throw ZeroVisibilityError("no phase information (GHZ regime)");
  }
  const PhaseProfile profile(cfg);
  const auto objective = [&](double phi) {
    try {
      return detail::delta_phi_at(profile, phi);
    } catch (const DivergentPhaseUncertainty&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  constexpr int kGridPoints = 720;
  const double step = 2.0 * std::numbers::pi / kGridPoints;
  double best_val = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kGridPoints; ++j) {
    const double v = objective(j * step);
    if (v < best_val) best_val = v;
  }
  if (!std::isfinite(best_val)) {
    throw DivergentPhaseUncertainty("phase uncertainty diverges on the whole grid");
  }
  // Smallest phi among near-equal grid minima.
  int best_idx = 0;
  for (int j = 0; j < kGridPoints; ++j) {
    const double v = objective(j * step);
    if (v <= best_val * (1.0 + 1e-9)) {
      best_idx = j;
      break;
    }
  }

  auto [phi_opt, delta_min] = detail::golden_section_minimize(
      objective, (best_idx - 1) * step, (best_idx + 1) * step, 1e-9);

  // Near the optimum the objective is flat at the rounding-noise scale, so
  // golden section localizes the value but not the position. A parabolic fit
  // over a stencil wide enough for curvature to dominate noise pins phi_opt;
  // on a lossless (constant) objective the curvature test keeps the raw point.
  const double stencil = std::min(1e-3, std::numbers::pi / (8.0 * cfg.n));
  const double f_minus = objective(phi_opt - stencil);
  const double f_plus = objective(phi_opt + stencil);
  const double curvature = f_minus - 2.0 * delta_min + f_plus;
  if (std::isfinite(curvature) && curvature > 1e-9 * std::abs(delta_min)) {
    const double shift = 0.5 * stencil * (f_minus - f_plus) / curvature;
    if (std::abs(shift) < stencil) {
      const double polished = objective(phi_opt + shift);
      if (polished <= delta_min) delta_min = polished;
      phi_opt += shift;
    }
  }
  // Report phi in [0, 2pi); a result within refinement tolerance of the seam
  // is the phi = 0 optimum.
  phi_opt = std::fmod(phi_opt, 2.0 * std::numbers::pi);
  if (phi_opt < 0.0) phi_opt += 2.0 * std::numbers::pi;
  if (2.0 * std::numbers::pi - phi_opt < 1e-9) phi_opt = 0.0;
  return OptimalPhase{phi_opt, delta_min};
}

enum class FeasibilityClass { Heisenberg, SuperSensitive, SubSnlButFeasible, Infeasible };

inline const char* to_string(FeasibilityClass c) {
  switch (c) {
    case FeasibilityClass::Heisenberg: return "heisenberg";
    case FeasibilityClass::SuperSensitive: return "super_sensitive";
    case FeasibilityClass::SubSnlButFeasible: return "sub_snl_but_feasible";
    case FeasibilityClass::Infeasible: return "infeasible";
  }
  return "unknown";
}

// heisenberg iff V = 1; super-sensitive iff V > 1/sqrt(n) with n > 1;
// infeasible iff V <= 1/(2 n pi), where the 2pi phase window caps any
// realistic measurement; else feasible but short of the shot-noise limit.
inline FeasibilityClass feasibility(int n, double visibility) {
  if (n < 1) throw std::invalid_argument("probe count n must be >= 1");
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw std::invalid_argument("visibility outside [0, 1]");
  }
  if (visibility == 1.0) return FeasibilityClass::Heisenberg;
  if (visibility <= 1.0 / (2.0 * n * std::numbers::pi)) return FeasibilityClass::Infeasible;
  if (n > 1 && visibility > 1.0 / std::sqrt(static_cast<double>(n))) {
    return FeasibilityClass::SuperSensitive;
  }
  return FeasibilityClass::SubSnlButFeasible;
}

struct SensitivityRow {
  int n = 1;
  double visibility = 0.0;
  double phi_optimal = 0.0;
  double delta_phi_min = 0.0;
  double heisenberg_limit = 0.0;  // 1/n
  double shot_noise_limit = 0.0;  // 1/sqrt(n)
  bool feasible = false;
  bool degenerate = false;  // n = 1: neither super-resolution nor super-sensitivity
  FeasibilityClass regime = FeasibilityClass::Infeasible;
};

using SensitivitySweep = std::vector<SensitivityRow>;

// Rows for n = 1 .. n_max. The prototype's transmissions either broadcast
// (single entry) or supply at least n_max entries, of which row n uses the
// first n. Zero-visibility rows carry an infinite delta_phi_min sentinel.
inline SensitivitySweep sweep_uncertainty_vs_n(int n_max, const ExperimentConfig& prototype) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (prototype.transmissions.empty()) {
    throw std::invalid_argument("prototype transmissions must not be empty");
  }
  if (prototype.transmissions.size() != 1 &&
      prototype.transmissions.size() < static_cast<std::size_t>(n_max)) {
    throw std::invalid_argument("prototype transmissions must broadcast or cover n_max");
  }

  SensitivitySweep sweep;
  sweep.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    ExperimentConfig cfg = prototype;
    cfg.n = n;
    if (prototype.transmissions.size() == 1) {
      cfg.transmissions.assign(static_cast<std::size_t>(n), prototype.transmissions.front());
    } else {
      cfg.transmissions.assign(prototype.transmissions.begin(),
                               prototype.transmissions.begin() + n);
    }
    cfg.validate();

    SensitivityRow row;
    row.n = n;
    row.visibility = cfg.transmission_product();
    row.heisenberg_limit = 1.0 / n;
    row.shot_noise_limit = 1.0 / std::sqrt(static_cast<double>(n));
    row.feasible = row.visibility > 1.0 / (2.0 * n * std::numbers::pi);
    row.degenerate = (n == 1);
    row.regime = feasibility(n, row.visibility);
    if (row.visibility > 0.0) {
      const OptimalPhase opt = min_phase_uncertainty(cfg);
      row.phi_optimal = opt.phi_opt;
      row.delta_phi_min = opt.delta_phi_min;
    } else {
      row.phi_optimal = std::numeric_limits<double>::quiet_NaN();
      row.delta_phi_min = std::numeric_limits<double>::infinity();
    }
    sweep.push_back(row);
  }
  return sweep;
}

}  // namespace fockmeter
