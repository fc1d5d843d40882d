#pragma once

// Closed-form reference results, kept strictly separate from the Fock engine:
// this header must not include the engine and the engine must not include
// this header. The cross-checks in the test suites are only meaningful
// because the two routes share no code.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fockmeter/errors.hpp"
#include "fockmeter/ports.hpp"

namespace fockmeter::reference {

struct ClosedFormInputs {
  int n = 1;
  double phi = 0.0;
  double zeta0 = 0.0;
  std::vector<double> transmissions;  // size n, each in [0, 1]

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

inline double cf_visibility(const ClosedFormInputs& in) {
  in.validate();
  double v = 1.0;
  for (double t : in.transmissions) v *= t;
  return v;
}

inline double cf_detection(const ClosedFormInputs& in, OutputPort port) {
  const double v = cf_visibility(in);
  const double c = std::cos(in.n * in.phi - in.zeta0);
  return port == OutputPort::C ? 0.5 * (1.0 - v * c) : 0.5 * (1.0 + v * c);
}

inline double cf_ndiff_mean(const ClosedFormInputs& in) {
  return cf_visibility(in) * std::cos(in.n * in.phi - in.zeta0);
}

inline double cf_ndiff_var(const ClosedFormInputs& in) {
  const double vc = cf_ndiff_mean(in);
  return 1.0 - vc * vc;
}

// delta_phi(phi) = (1/n) sqrt[(1 - V^2 cos^2 t) / (V^2 sin^2 t)], t = n phi - zeta0.
// At V = 1 the quotient is removable and reduces to 1/n for every phi; at
// V < 1 the uncertainty diverges where sin t = 0.
inline double cf_delta_phi(const ClosedFormInputs& in) {
  const double v = cf_visibility(in);
  if (v <= 0.0) {
    throw ZeroVisibilityError("no phase information (GHZ regime)");
  }
  if (v >= 1.0) return 1.0 / in.n;
  const double t = in.n * in.phi - in.zeta0;
  const double s = std::sin(t);
  if (std::abs(s) < 1e-12) {
    throw DivergentPhaseUncertainty("phase uncertainty diverges at fringe extremum");
  }
  const double c = std::cos(t);
  return std::sqrt((1.0 - v * v * c * c) / (v * v * s * s)) / in.n;
}

inline double cf_delta_phi_min(const ClosedFormInputs& in) {
  const double v = cf_visibility(in);
  if (v <= 0.0) {
    throw ZeroVisibilityError("no phase information (GHZ regime)");
  }
  return 1.0 / (in.n * v);
}

}  // namespace fockmeter::reference
