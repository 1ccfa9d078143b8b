#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "elocc/spin_models.hpp"

namespace elocc {

struct EigenPair {
  double energy = 0.0;
  Eigen::VectorXd state;   ///< unit norm, largest-magnitude component positive
  int index = 0;           ///< rank from the bottom of the spectrum
  bool degenerate = false; ///< shares its level with another eigenvector
  int parity = 0;          ///< +1 / -1 for prod sigma^z sectors, 0 if unresolved
};

struct SolverOptions {
  std::size_t max_dim = std::size_t{1} << 16;
  double degeneracy_tol = 1e-10;   ///< relative energy gap
  bool split_parity = true;        ///< diagonalize parity sectors separately
};

/// The k lowest eigenpairs by dense diagonalization, ascending in energy.
///
/// When the operator conserves parity the two sectors are diagonalized
/// separately. Members of a degenerate level are then parity eigenstates,
/// listed odd sector first, so the returned ground vector is reproducible
/// even where the level is exactly degenerate.
std::vector<EigenPair> lowest_states(const SparseOperator& op, int k,
                                     const SolverOptions& options = {});

/// All eigenvalues, ascending.
Eigen::VectorXd full_spectrum(const SparseOperator& op, const SolverOptions& options = {});

/// Flips the sign so the largest-magnitude entry (lowest index on ties) is positive.
void canonicalize_sign(Eigen::VectorXd& v);

}  // namespace elocc
