#pragma once

// Circuit primitives: phase shifter, path identity with optional loss, and
// the symmetric output beamsplitter field operators. Field operators are kept
// symbolic (coefficient x ladder-factor string); nothing here materializes a
// dense Hilbert space.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fockmeter/config.hpp"
#include "fockmeter/fock.hpp"
#include "fockmeter/ports.hpp"

namespace fockmeter {

enum class Ladder { Create, Annihilate };

struct LadderFactor {
  std::string mode;
  Ladder kind = Ladder::Annihilate;
};

// A linear combination of ordered ladder-operator products. Application to a
// FockVector applies each term's factors right-to-left; the adjoint reverses
// factor order, swaps create/annihilate, and conjugates coefficients.
class FieldOperator {
 public:
  struct Term {
    Amplitude coefficient;
    std::vector<LadderFactor> factors;
  };

  FieldOperator() = default;  // the zero operator

  static FieldOperator identity(Amplitude coefficient = {1.0, 0.0}) {
    FieldOperator op;
    op.terms_.push_back(Term{coefficient, {}});
    return op;
  }

  static FieldOperator ladder(Ladder kind, std::string mode,
                              Amplitude coefficient = {1.0, 0.0}) {
    FieldOperator op;
    op.terms_.push_back(Term{coefficient, {LadderFactor{std::move(mode), kind}}});
    return op;
  }

  // n̂ = a† a on one mode.
  static FieldOperator number(const std::string& mode) {
    return ladder(Ladder::Create, mode) * ladder(Ladder::Annihilate, mode);
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }

  FieldOperator adjoint() const {
    FieldOperator out;
    out.terms_.reserve(terms_.size());
    for (const auto& term : terms_) {
      Term adj;
      adj.coefficient = std::conj(term.coefficient);
      adj.factors.reserve(term.factors.size());
      for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
        adj.factors.push_back(LadderFactor{
            it->mode, it->kind == Ladder::Create ? Ladder::Annihilate : Ladder::Create});
      }
      out.terms_.push_back(std::move(adj));
    }
    return out;
  }

  FieldOperator& operator+=(const FieldOperator& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
  }

  FieldOperator& operator-=(const FieldOperator& other) {
    for (const auto& term : other.terms_) {
      terms_.push_back(Term{-term.coefficient, term.factors});
    }
    return *this;
  }

  friend FieldOperator operator+(FieldOperator a, const FieldOperator& b) { return a += b; }
  friend FieldOperator operator-(FieldOperator a, const FieldOperator& b) { return a -= b; }

  friend FieldOperator operator*(Amplitude c, FieldOperator op) {
    for (auto& term : op.terms_) term.coefficient *= c;
    return op;
  }

  // Operator product: (A B) v = A (B v), so B's factors sit to the right.
  friend FieldOperator operator*(const FieldOperator& a, const FieldOperator& b) {
    FieldOperator out;
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        Term prod;
        prod.coefficient = ta.coefficient * tb.coefficient;
        prod.factors.reserve(ta.factors.size() + tb.factors.size());
        prod.factors.insert(prod.factors.end(), ta.factors.begin(), ta.factors.end());
        prod.factors.insert(prod.factors.end(), tb.factors.begin(), tb.factors.end());
        out.terms_.push_back(std::move(prod));
      }
    }
    return out;
  }

 private:
  std::vector<Term> terms_;
};

// Linear application, factors right-to-left.
inline FockVector apply_field_operator(const FieldOperator& op, const FockVector& state) {
  FockVector result(state.registry(), state.statistics(), state.max_occupation());
  for (const auto& term : op.terms()) {
    FockVector v = scale(state, term.coefficient);
    for (auto it = term.factors.rbegin(); it != term.factors.rend() && !v.is_zero(); ++it) {
      v = it->kind == Ladder::Create ? apply_create(v, it->mode)
                                     : apply_annihilate(v, it->mode);
    }
    result = add(result, v);
  }
  return result;
}

// <state| op |state> for a normally-ordered product.
inline Amplitude expectation(const FieldOperator& op, const FockVector& state) {
  return inner_product(state, apply_field_operator(op, state));
}

// Each basis term gains e^{i phi k} where k is the occupation of `mode`.
inline FockVector phase_shift(const FockVector& state, const std::string& mode, double phi) {
  const std::size_t idx = state.registry()->index(mode);
  FockVector::TermMap out;
  out.reserve(state.term_count());
  for (const auto& [basis, amp] : state.terms()) {
    const double k = basis.occupation(idx);
    out.emplace(basis, amp * std::polar(1.0, phi * k));
  }
  return FockVector::from_terms(state.registry(), state.statistics(), std::move(out),
                                state.max_occupation());
}

// Per-probe amplitude transmissions of the loss beamsplitters, with the
// derived reflections R_l = sqrt(1 - T_l^2).
class AttenuatorSpec {
 public:
  explicit AttenuatorSpec(std::vector<double> transmissions)
      : transmissions_(std::move(transmissions)) {
    for (double t : transmissions_) {
      if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("transmission outside [0, 1]");
      }
    }
  }

  std::size_t probe_count() const noexcept { return transmissions_.size(); }
  const std::vector<double>& transmissions() const noexcept { return transmissions_; }

  // 1-based probe index, matching the mode labels.
  double transmission(std::size_t l) const { return transmissions_.at(l - 1); }
  double reflection(std::size_t l) const {
    const double t = transmission(l);
    return std::sqrt(1.0 - t * t);
  }

 private:
  std::vector<double> transmissions_;
};

// The state Q' alone produces after path identity and loss:
//   a†(p0') ∏_{l=1..n} e^{-i phi} [T_l a†(p_l) + R_l a†(loss_l)] |vac>.
// With all T_l = 1 this reduces to the lossless path identity,
// e^{-i n phi} |p0'> ∏ |p_l>.
inline FockVector emit_qprime_with_path_identity(const ModeRegistryPtr& registry,
                                                 ParticleStatistics statistics,
                                                 const ExperimentConfig& cfg) {
  cfg.validate();
  const AttenuatorSpec attenuator(cfg.transmissions);
  FockVector state = vacuum(registry, statistics);
  // Product applied right-to-left: the l = n factor acts on vacuum first.
  for (int l = cfg.n; l >= 1; --l) {
    const double t = attenuator.transmission(static_cast<std::size_t>(l));
    const double r = attenuator.reflection(static_cast<std::size_t>(l));
    FockVector next(registry, statistics, state.max_occupation());
    if (t > 0.0) next = add(next, scale(apply_create(state, modes::probe(l)), t));
    if (r > 0.0) next = add(next, scale(apply_create(state, modes::loss(l)), r));
    state = std::move(next);
  }
  state = apply_create(state, modes::p0_prime());
  return scale(state, std::polar(1.0, -cfg.phi * cfg.n));
}

// Output field operators of the lossless symmetric beamsplitter:
//   E+_C = (1/sqrt2) [ a(p0) + i e^{i gamma} a(p0') ]
//   E+_D = (1/sqrt2) [ i a(p0) + e^{i gamma} a(p0') ]
inline FieldOperator output_field_operator(OutputPort port, double gamma) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const Amplitude i{0.0, 1.0};
  const Amplitude eig = std::polar(1.0, gamma);
  Amplitude c0, c0p;
  if (port == OutputPort::C) {
    c0 = inv_sqrt2;
    c0p = i * eig * inv_sqrt2;
  } else {
    c0 = i * inv_sqrt2;
    c0p = eig * inv_sqrt2;
  }
  return FieldOperator::ladder(Ladder::Annihilate, modes::p0(), c0) +
         FieldOperator::ladder(Ladder::Annihilate, modes::p0_prime(), c0p);
}

}  // namespace fockmeter
