#include "elocc/spin_models.hpp"

#include <bit>
#include <sstream>

#include "elocc/error.hpp"

namespace elocc {

namespace {

void check_size(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "a periodic chain needs at least 2 sites");
  if (n > kMaxSites) {
    std::ostringstream msg;
    msg << "chain of " << n << " sites exceeds the limit of " << kMaxSites;
    throw Error(ErrorCode::SizeTooLarge, msg.str());
  }
}

int next_site(int i, int n) { return i % n + 1; }

PauliTerm two_site(double coefficient, int i, int j, PauliAxis axis) {
  return {coefficient, {{i, axis}, {j, axis}}};
}

}  // namespace

SparseOperator::SparseOperator(int n_sites, std::vector<PauliTerm> terms, bool conserves_total_sz)
    : n_sites_(n_sites), terms_(std::move(terms)), conserves_total_sz_(conserves_total_sz) {
  if (n_sites < 1) throw Error(ErrorCode::InvalidArgument, "operator needs at least one site");
  if (n_sites > kMaxSites) throw Error(ErrorCode::SizeTooLarge, "too many sites");
  kernels_.reserve(terms_.size());
  for (const auto& term : terms_) {
    Kernel k{term.coefficient, 0u, 0u};
    std::uint32_t seen = 0;
    int n_y = 0;
    for (const auto& f : term.factors) {
      if (f.site < 1 || f.site > n_sites) {
        throw Error(ErrorCode::InvalidArgument, "Pauli factor site out of range");
      }
      const std::uint32_t m = site_mask(f.site);
      if (seen & m) throw Error(ErrorCode::InvalidArgument, "repeated site in Pauli term");
      seen |= m;
      switch (f.axis) {
        case PauliAxis::X: k.flip |= m; break;
        case PauliAxis::Y: k.flip |= m; k.sign |= m; ++n_y; break;
        case PauliAxis::Z: k.sign |= m; break;
      }
    }
    // Y|b> = i (-1)^b |~b>, so a string with n_y factors carries i^{n_y}.
    if (n_y % 2 != 0) {
      throw Error(ErrorCode::InvalidArgument, "Pauli term with an odd number of Y is not real");
    }
    if ((n_y / 2) % 2 != 0) k.coefficient = -k.coefficient;
    if (std::popcount(k.flip) % 2 != 0) conserves_parity_ = false;
    kernels_.push_back(k);
  }
}

void SparseOperator::apply_term(std::size_t term, std::span<const double> in,
                                std::span<double> out) const {
  if (in.size() != dim() || out.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match operator dimension");
  }
  const Kernel& k = kernels_.at(term);
  const std::uint32_t d = static_cast<std::uint32_t>(dim());
  for (std::uint32_t b = 0; b < d; ++b) {
    const double s = (std::popcount(b & k.sign) & 1) ? -k.coefficient : k.coefficient;
    out[b ^ k.flip] += s * in[b];
  }
}

void SparseOperator::apply(std::span<const double> in, std::span<double> out) const {
  if (out.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match operator dimension");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t t = 0; t < kernels_.size(); ++t) apply_term(t, in, out);
}

Eigen::MatrixXd SparseOperator::to_dense() const {
  const auto d = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (const Kernel& k : kernels_) {
    for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(d); ++b) {
      const double s = (std::popcount(b & k.sign) & 1) ? -k.coefficient : k.coefficient;
      m(b ^ k.flip, b) += s;
    }
  }
  return m;
}

Eigen::MatrixXd SparseOperator::to_dense_block(std::span<const std::uint32_t> basis) const {
  const auto d = static_cast<Eigen::Index>(basis.size());
  // Position of each full-space index inside the block, or -1.
  std::vector<std::int64_t> position(dim(), -1);
  for (Eigen::Index i = 0; i < d; ++i) position[basis[static_cast<std::size_t>(i)]] = i;

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (const Kernel& k : kernels_) {
    for (Eigen::Index col = 0; col < d; ++col) {
      const std::uint32_t b = basis[static_cast<std::size_t>(col)];
      const std::int64_t row = position[b ^ k.flip];
      if (row < 0) continue;
      const double s = (std::popcount(b & k.sign) & 1) ? -k.coefficient : k.coefficient;
      m(row, col) += s;
    }
  }
  return m;
}

SparseOperator build_ising(int n, double g) {
  check_size(n);
  std::vector<PauliTerm> terms;
  terms.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) terms.push_back(two_site(-1.0, i, next_site(i, n), PauliAxis::X));
  for (int i = 1; i <= n; ++i) terms.push_back({-g, {{i, PauliAxis::Z}}});
  return SparseOperator(n, std::move(terms));
}

SparseOperator build_xy(int n, double gamma, double h) {
  check_size(n);
  std::vector<PauliTerm> terms;
  terms.reserve(3 * static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const int j = next_site(i, n);
    terms.push_back(two_site(-(1.0 + gamma), i, j, PauliAxis::X));
    terms.push_back(two_site(-(1.0 - gamma), i, j, PauliAxis::Y));
    terms.push_back({-h, {{i, PauliAxis::Z}}});
  }
  return SparseOperator(n, std::move(terms));
}

SparseOperator build_xxz(int n, double delta) {
  check_size(n);
  std::vector<PauliTerm> terms;
  terms.reserve(3 * static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const int j = next_site(i, n);
    terms.push_back(two_site(1.0, i, j, PauliAxis::X));
    terms.push_back(two_site(1.0, i, j, PauliAxis::Y));
    terms.push_back(two_site(delta, i, j, PauliAxis::Z));
  }
  return SparseOperator(n, std::move(terms), /*conserves_total_sz=*/true);
}

}  // namespace elocc
