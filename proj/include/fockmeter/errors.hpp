#pragma once

#include <stdexcept>
#include <string>

namespace fockmeter {

// The error-propagation quotient is indeterminate where the fringe derivative
// vanishes; callers that sweep over phi catch this and treat the point as a
// divergence rather than a large float.
struct DivergentPhaseUncertainty : std::domain_error {
  explicit DivergentPhaseUncertainty(const std::string& what) : std::domain_error(what) {}
};

// Zero visibility (GHZ regime): the fringe carries no phase information.
struct ZeroVisibilityError : std::domain_error {
  explicit ZeroVisibilityError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace fockmeter
