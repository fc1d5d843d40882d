#pragma once

// Sparse occupation-number state vectors with exact bosonic/fermionic ladder
// algebra. States are kept as an associative map from occupation tuples to
// complex amplitudes; the experiments built on top of this never hold more
// than a few hundred basis terms, so no dense Hilbert space is materialized.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fockmeter {

using Amplitude = std::complex<double>;

// Amplitudes below this magnitude are exact-arithmetic zeros contaminated by
// rounding and are dropped on construction.
inline constexpr double kAmplitudePruneTolerance = 1e-15;

// Guard against runaway operator chains.
inline constexpr int kDefaultMaxOccupation = 8;

enum class ParticleStatistics { Boson, Fermion };

inline const char* to_string(ParticleStatistics s) {
  return s == ParticleStatistics::Boson ? "boson" : "fermion";
}

// Canonical ordered set of mode labels. The order is immutable after
// construction; fermionic operator signs are defined relative to it.
class ModeRegistry {
 public:
  explicit ModeRegistry(std::vector<std::string> labels) : labels_(std::move(labels)) {
    index_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second) {
        throw std::invalid_argument("duplicate mode label '" + labels_[i] + "'");
      }
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }

  bool contains(const std::string& label) const { return index_.count(label) != 0; }

  std::size_t index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
      throw std::invalid_argument("unregistered mode label '" + label + "'");
    }
    return it->second;
  }

  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const ModeRegistry& a, const ModeRegistry& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

using ModeRegistryPtr = std::shared_ptr<const ModeRegistry>;

// One basis state: a particle count per registered mode.
class OccupationBasisState {
 public:
  explicit OccupationBasisState(std::size_t mode_count) : occ_(mode_count, 0) {}
  explicit OccupationBasisState(std::vector<std::uint8_t> occupations)
      : occ_(std::move(occupations)) {}

  std::size_t mode_count() const noexcept { return occ_.size(); }
  int occupation(std::size_t mode) const { return occ_.at(mode); }
  const std::vector<std::uint8_t>& occupations() const noexcept { return occ_; }

  int total_particles() const {
    int total = 0;
    for (auto k : occ_) total += k;
    return total;
  }

  OccupationBasisState with_occupation(std::size_t mode, int value) const {
    OccupationBasisState out = *this;
    out.occ_.at(mode) = static_cast<std::uint8_t>(value);
    return out;
  }

  // Parity of the occupied modes strictly before `mode` in registry order.
  // This is the fixed sign convention for all fermionic ladder operators.
  int fermion_sign_before(std::size_t mode) const {
    int count = 0;
    for (std::size_t i = 0; i < mode; ++i) count += occ_[i];
    return (count % 2 == 0) ? 1 : -1;
  }

  friend bool operator==(const OccupationBasisState& a, const OccupationBasisState& b) {
    return a.occ_ == b.occ_;
  }
  friend bool operator<(const OccupationBasisState& a, const OccupationBasisState& b) {
    return a.occ_ < b.occ_;
  }

 private:
  std::vector<std::uint8_t> occ_;
};

struct OccupationBasisStateHash {
  std::size_t operator()(const OccupationBasisState& s) const noexcept {
    std::size_t h = 1469598103934665603ull;  // FNV-1a
    for (auto k : s.occupations()) {
      h ^= static_cast<std::size_t>(k);
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Sparse superposition over occupation-number basis states, tagged with the
// particle statistics that generated it. Values are immutable once built;
// every operation returns a new vector.
class FockVector {
 public:
  using TermMap =
      std::unordered_map<OccupationBasisState, Amplitude, OccupationBasisStateHash>;

  FockVector(ModeRegistryPtr registry, ParticleStatistics statistics,
             int max_occupation = kDefaultMaxOccupation)
      : registry_(std::move(registry)), statistics_(statistics), max_occupation_(max_occupation) {
    if (!registry_) throw std::invalid_argument("null mode registry");
    if (max_occupation_ < 1 || max_occupation_ > 255) {
      throw std::invalid_argument("max_occupation must be in [1, 255]");
    }
  }

  // Validating constructor used by every operation that assembles new terms.
  static FockVector from_terms(ModeRegistryPtr registry, ParticleStatistics statistics,
                               TermMap terms, int max_occupation = kDefaultMaxOccupation) {
    FockVector out(std::move(registry), statistics, max_occupation);
    for (auto it = terms.begin(); it != terms.end();) {
      const auto& basis = it->first;
      if (basis.mode_count() != out.registry_->size()) {
        throw std::invalid_argument("basis state does not match registry size");
      }
      for (std::size_t m = 0; m < basis.mode_count(); ++m) {
        const int k = basis.occupation(m);
        if (k > max_occupation) {
          throw std::domain_error("occupation " + std::to_string(k) + " on mode '" +
                                  out.registry_->label(m) + "' exceeds cap " +
                                  std::to_string(max_occupation));
        }
        if (statistics == ParticleStatistics::Fermion && k > 1) {
          throw std::domain_error("fermionic occupation > 1 on mode '" +
                                  out.registry_->label(m) + "'");
        }
      }
      if (std::abs(it->second) < kAmplitudePruneTolerance) {
        it = terms.erase(it);
      } else {
        ++it;
      }
    }
    out.terms_ = std::move(terms);
    return out;
  }

  const ModeRegistryPtr& registry() const noexcept { return registry_; }
  ParticleStatistics statistics() const noexcept { return statistics_; }
  int max_occupation() const noexcept { return max_occupation_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Amplitude amplitude(const OccupationBasisState& basis) const {
    auto it = terms_.find(basis);
    return it == terms_.end() ? Amplitude{0.0, 0.0} : it->second;
  }

  // Deterministic (lexicographically sorted) view for emission and tests.
  std::vector<std::pair<OccupationBasisState, Amplitude>> sorted_terms() const {
    std::vector<std::pair<OccupationBasisState, Amplitude>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

 private:
  ModeRegistryPtr registry_;
  ParticleStatistics statistics_;
  int max_occupation_;
  TermMap terms_;
};

namespace detail {

inline void require_compatible(const FockVector& a, const FockVector& b) {
  if (a.statistics() != b.statistics()) {
    throw std::invalid_argument("particle statistics mismatch");
  }
  if (a.registry() != b.registry() && !(*a.registry() == *b.registry())) {
    throw std::invalid_argument("mode registry mismatch");
  }
}

inline void accumulate(FockVector::TermMap& map, const OccupationBasisState& basis,
                       Amplitude amp) {
  auto [it, inserted] = map.try_emplace(basis, amp);
  if (!inserted) {
    it->second += amp;
    if (std::abs(it->second) < kAmplitudePruneTolerance) map.erase(it);
  }
}

}  // namespace detail

inline FockVector vacuum(ModeRegistryPtr registry, ParticleStatistics statistics,
                         int max_occupation = kDefaultMaxOccupation) {
  if (!registry || registry->size() == 0) {
    throw std::invalid_argument("vacuum requires a nonempty mode registry");
  }
  FockVector::TermMap terms;
  terms.emplace(OccupationBasisState(registry->size()), Amplitude{1.0, 0.0});
  return FockVector::from_terms(std::move(registry), statistics, std::move(terms),
                                max_occupation);
}

// a†(mode). Boson: |..,k,..> -> sqrt(k+1)|..,k+1,..>. Fermion: occupied modes
// annihilate the term (nilpotency); otherwise the registry-order parity sign
// applies. The result may be unnormalized or zero.
inline FockVector apply_create(const FockVector& state, const std::string& mode) {
  const std::size_t idx = state.registry()->index(mode);
  FockVector::TermMap out;
  out.reserve(state.term_count());
  for (const auto& [basis, amp] : state.terms()) {
    const int k = basis.occupation(idx);
    if (state.statistics() == ParticleStatistics::Boson) {
      if (k + 1 > state.max_occupation()) {
        throw std::domain_error("occupation cap exceeded on mode '" + mode + "'");
      }
      detail::accumulate(out, basis.with_occupation(idx, k + 1),
                         amp * std::sqrt(static_cast<double>(k + 1)));
    } else {
      if (k == 1) continue;  // {a†}² = 0
      const double sign = basis.fermion_sign_before(idx);
      detail::accumulate(out, basis.with_occupation(idx, 1), amp * sign);
    }
  }
  return FockVector::from_terms(state.registry(), state.statistics(), std::move(out),
                                state.max_occupation());
}

// a(mode), the adjoint of apply_create under the same sign convention.
inline FockVector apply_annihilate(const FockVector& state, const std::string& mode) {
  const std::size_t idx = state.registry()->index(mode);
  FockVector::TermMap out;
  out.reserve(state.term_count());
  for (const auto& [basis, amp] : state.terms()) {
    const int k = basis.occupation(idx);
    if (k == 0) continue;
    if (state.statistics() == ParticleStatistics::Boson) {
      detail::accumulate(out, basis.with_occupation(idx, k - 1),
                         amp * std::sqrt(static_cast<double>(k)));
    } else {
      const double sign = basis.fermion_sign_before(idx);
      detail::accumulate(out, basis.with_occupation(idx, 0), amp * sign);
    }
  }
  return FockVector::from_terms(state.registry(), state.statistics(), std::move(out),
                                state.max_occupation());
}

inline FockVector add(const FockVector& a, const FockVector& b) {
  detail::require_compatible(a, b);
  FockVector::TermMap out(a.terms());
  for (const auto& [basis, amp] : b.terms()) detail::accumulate(out, basis, amp);
  return FockVector::from_terms(a.registry(), a.statistics(), std::move(out),
                                std::max(a.max_occupation(), b.max_occupation()));
}

inline FockVector scale(const FockVector& a, Amplitude c) {
  FockVector::TermMap out;
  out.reserve(a.term_count());
  for (const auto& [basis, amp] : a.terms()) detail::accumulate(out, basis, amp * c);
  return FockVector::from_terms(a.registry(), a.statistics(), std::move(out),
                                a.max_occupation());
}

// <a|b>, conjugate-linear in the first argument.
inline Amplitude inner_product(const FockVector& a, const FockVector& b) {
  detail::require_compatible(a, b);
  const FockVector& small = a.term_count() <= b.term_count() ? a : b;
  const FockVector& large = a.term_count() <= b.term_count() ? b : a;
  Amplitude sum{0.0, 0.0};
  for (const auto& [basis, amp] : small.terms()) {
    auto it = large.terms().find(basis);
    if (it == large.terms().end()) continue;
    const Amplitude& amp_a = (&small == &a) ? amp : it->second;
    const Amplitude& amp_b = (&small == &a) ? it->second : amp;
    sum += std::conj(amp_a) * amp_b;
  }
  return sum;
}

inline double norm(const FockVector& a) {
  double sq = 0.0;
  for (const auto& [basis, amp] : a.terms()) sq += std::norm(amp);
  return std::sqrt(sq);
}

inline FockVector normalize(const FockVector& a) {
  if (a.is_zero()) throw std::domain_error("cannot normalize the zero vector");
  return scale(a, Amplitude{1.0 / norm(a), 0.0});
}

// Creation operators applied right-to-left in the given order onto vacuum:
// product_state(r, s, {m0, m1}) = a†(m0) a†(m1) |vac>.
inline FockVector product_state(ModeRegistryPtr registry, ParticleStatistics statistics,
                                const std::vector<std::string>& modes,
                                int max_occupation = kDefaultMaxOccupation) {
  if (statistics == ParticleStatistics::Fermion) {
    std::vector<std::string> sorted(modes);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate mode in fermionic product state");
    }
  }
  FockVector state = vacuum(std::move(registry), statistics, max_occupation);
  for (auto it = modes.rbegin(); it != modes.rend(); ++it) {
    state = apply_create(state, *it);
  }
  return state;
}

}  // namespace fockmeter
