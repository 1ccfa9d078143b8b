#pragma once

// Periodic spin-1/2 chain Hamiltonians stored as real Pauli strings.
//
// Sites are numbered 1..n. The computational basis is big-endian: site 1 is
// the most significant bit of the basis index, and bit value 0 is the
// sigma^z = +1 state.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace elocc {

/// Largest chain the builders accept.
inline constexpr int kMaxSites = 20;

enum class PauliAxis : std::uint8_t { X, Y, Z };

struct PauliFactor {
  int site;  ///< 1-based
  PauliAxis axis;
};

struct PauliTerm {
  double coefficient;
  std::vector<PauliFactor> factors;
};

/// Real symmetric operator on (C^2)^{otimes n} given as a sum of Pauli strings.
class SparseOperator {
 public:
  /// Validates sites and realness; throws InvalidArgument or SizeTooLarge.
  SparseOperator(int n_sites, std::vector<PauliTerm> terms, bool conserves_total_sz = false);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_sites_; }
  std::span<const PauliTerm> terms() const noexcept { return terms_; }

  /// out = H * in. Reentrant; `out` must not alias `in`.
  void apply(std::span<const double> in, std::span<double> out) const;

  /// Applies a single term, accumulating into `out`.
  void apply_term(std::size_t term, std::span<const double> in, std::span<double> out) const;

  Eigen::MatrixXd to_dense() const;

  /// Dense block restricted to the given basis states (in that order).
  Eigen::MatrixXd to_dense_block(std::span<const std::uint32_t> basis) const;

  /// Every term flips an even number of spins, so H commutes with the
  /// parity operator prod_i sigma^z_i.
  bool conserves_parity() const noexcept { return conserves_parity_; }

  /// H commutes with sum_i sigma^z_i (set by the builder that knows it).
  bool conserves_total_sz() const noexcept { return conserves_total_sz_; }

  /// Bit mask of the basis index for a 1-based site.
  std::uint32_t site_mask(int site) const noexcept {
    return std::uint32_t{1} << (n_sites_ - site);
  }

 private:
  struct Kernel {
    double coefficient;     // includes the i^{#Y} phase
    std::uint32_t flip;     // X and Y factors
    std::uint32_t sign;     // Y and Z factors: (-1)^{popcount(b & sign)}
  };

  int n_sites_;
  std::vector<PauliTerm> terms_;
  std::vector<Kernel> kernels_;
  bool conserves_parity_ = true;
  bool conserves_total_sz_ = false;
};

/// H = -sum_i (X_i X_{i+1} + g Z_i), periodic.
SparseOperator build_ising(int n, double g);

/// H = -sum_i [(1+gamma) X_i X_{i+1} + (1-gamma) Y_i Y_{i+1} + h Z_i], periodic.
SparseOperator build_xy(int n, double gamma, double h);

/// H = sum_i (X_i X_{i+1} + Y_i Y_{i+1} + delta Z_i Z_{i+1}), periodic.
SparseOperator build_xxz(int n, double delta);

}  // namespace elocc
