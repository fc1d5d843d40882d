#pragma once

// Mode-based partial trace and von Neumann entropy. Partitioning is
// second-quantized (by modes, not particle labels): rho_keep[(k, k')] sums
// amplitude(k ⊕ rest) * conj(amplitude(k' ⊕ rest)) over the complementary
// occupations. The reduced matrices here stay tiny, so a dense Hermitian
// eigendecomposition is used.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockmeter/fock.hpp"

namespace fockmeter {

struct DensityMatrix {
  std::vector<std::string> kept_modes;
  std::vector<OccupationBasisState> basis;  // occupations on kept modes, sorted
  Eigen::MatrixXcd entries;                 // Hermitian, trace 1
};

inline DensityMatrix reduced_density_matrix(const FockVector& state,
                                            const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("keep set must not be empty");
  const double nrm = norm(state);
  if (std::abs(nrm - 1.0) > 1e-9) {
    throw std::invalid_argument("state must be normalized for a partial trace");
  }

  const ModeRegistry& registry = *state.registry();
  std::vector<std::size_t> keep_idx;
  keep_idx.reserve(keep.size());
  for (const auto& label : keep) keep_idx.push_back(registry.index(label));
  std::vector<bool> kept(registry.size(), false);
  for (std::size_t i : keep_idx) {
    if (kept[i]) throw std::invalid_argument("duplicate mode in keep set");
    kept[i] = true;
  }

  // Bucket amplitudes by the traced-out occupations.
  using Key = std::vector<std::uint8_t>;
  std::map<Key, std::vector<std::pair<Key, Amplitude>>> buckets;
  std::map<Key, std::size_t> kept_basis_index;
  for (const auto& [basis, amp] : state.terms()) {
    Key kept_occ, rest_occ;
    kept_occ.reserve(keep_idx.size());
    for (std::size_t i : keep_idx) kept_occ.push_back(basis.occupations()[i]);
    rest_occ.reserve(registry.size() - keep_idx.size());
    for (std::size_t i = 0; i < registry.size(); ++i) {
      if (!kept[i]) rest_occ.push_back(basis.occupations()[i]);
    }
    buckets[std::move(rest_occ)].emplace_back(kept_occ, amp);
    kept_basis_index.emplace(std::move(kept_occ), 0);
  }

  std::size_t dim = 0;
  for (auto& [occ, idx] : kept_basis_index) idx = dim++;

  DensityMatrix rho;
  rho.kept_modes = keep;
  rho.basis.reserve(dim);
  for (const auto& [occ, idx] : kept_basis_index) rho.basis.emplace_back(occ);
  rho.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                       static_cast<Eigen::Index>(dim));
  for (const auto& [rest, entries] : buckets) {
    for (const auto& [occ_row, amp_row] : entries) {
      const auto row = static_cast<Eigen::Index>(kept_basis_index.at(occ_row));
      for (const auto& [occ_col, amp_col] : entries) {
        const auto col = static_cast<Eigen::Index>(kept_basis_index.at(occ_col));
        rho.entries(row, col) += amp_row * std::conj(amp_col);
      }
    }
  }
  return rho;
}

inline std::vector<double> density_eigenvalues(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition of reduced density matrix failed");
  }
  std::vector<double> eigenvalues(solver.eigenvalues().data(),
                                  solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return eigenvalues;
}

// Von Neumann entropy (nats) of the reduced state on `partition`.
// Eigenvalues below 1e-12 are clamped to zero.
inline double entanglement_entropy(const FockVector& state,
                                   const std::vector<std::string>& partition) {
  const DensityMatrix rho = reduced_density_matrix(state, partition);
  double entropy = 0.0;
  for (double lambda : density_eigenvalues(rho)) {
    if (lambda < -1e-10) {
      throw std::runtime_error("reduced density matrix has a negative eigenvalue");
    }
    if (lambda < 1e-12) continue;
    entropy -= lambda * std::log(lambda);
  }
  return entropy;
}

}  // namespace fockmeter
