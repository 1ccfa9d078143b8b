#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "elocc/monotone.hpp"

namespace elocc {

/// Assignment of chain sites (1-based) to subsystem A; the rest form B.
class Bipartition {
 public:
  /// Throws InvalidArgument unless a_sites is a non-empty proper subset of 1..n.
  Bipartition(int n_sites, std::vector<int> a_sites);

  int n_sites() const noexcept { return n_sites_; }
  std::span<const int> a_sites() const noexcept { return a_sites_; }
  std::vector<int> b_sites() const;
  Bipartition complement() const;

  /// `half`, `comb` or `sites=1,3,5`.
  static Bipartition parse(std::string_view text, int n_sites);
  std::string to_string() const;

  bool operator==(const Bipartition&) const = default;

 private:
  int n_sites_;
  std::vector<int> a_sites_;
};

/// A = {1..n/2}; throws OddSize for odd n.
Bipartition half_chain(int n);

/// A = odd sites {1, 3, 5, ...}.
Bipartition comb(int n);

/// Amplitudes rearranged as a 2^|A| x 2^|B| matrix. Rows and columns follow
/// the big-endian order of the A and B sites respectively.
Eigen::MatrixXd reshape_for_cut(std::span<const double> state, const Bipartition& part);

/// Squared singular values of the reshaped state, truncated and normalized.
SchmidtVector schmidt_from_state(std::span<const double> state, const Bipartition& part,
                                 double trunc_tol = kDefaultTruncation);

inline SchmidtVector schmidt_from_state(const Eigen::VectorXd& state, const Bipartition& part,
                                        double trunc_tol = kDefaultTruncation) {
  return schmidt_from_state(std::span<const double>(state.data(), static_cast<std::size_t>(state.size())),
                            part, trunc_tol);
}

}  // namespace elocc
