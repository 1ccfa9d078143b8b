#include "elocc/eigensolver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "elocc/error.hpp"

namespace elocc {

namespace {

constexpr double kSymmetryTol = 1e-14;

struct Sector {
  int parity;                         // +1, -1 or 0 for the whole space
  std::vector<std::uint32_t> basis;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
};

void check_budget(const SparseOperator& op, const SolverOptions& options) {
  if (op.dim() > options.max_dim) {
    std::ostringstream msg;
    msg << "dimension " << op.dim() << " exceeds the dense budget of " << options.max_dim;
    throw Error(ErrorCode::SizeTooLarge, msg.str());
  }
}

void check_symmetric(const Eigen::MatrixXd& m) {
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym >= kSymmetryTol) {
    std::ostringstream msg;
    msg << "operator is not symmetric (max |M - M^T| = " << asym << ")";
    throw Error(ErrorCode::NotSymmetric, msg.str());
  }
}

std::vector<Sector> make_sectors(const SparseOperator& op, const SolverOptions& options) {
  const auto d = static_cast<std::uint32_t>(op.dim());
  std::vector<Sector> sectors;
  if (options.split_parity && op.conserves_parity() && d > 1) {
    Sector odd{-1, {}, {}, {}};
    Sector even{+1, {}, {}, {}};
    for (std::uint32_t b = 0; b < d; ++b) {
      (std::popcount(b) % 2 ? odd : even).basis.push_back(b);
    }
    sectors.push_back(std::move(odd));
    sectors.push_back(std::move(even));
  } else {
    Sector all{0, std::vector<std::uint32_t>(d), {}, {}};
    std::iota(all.basis.begin(), all.basis.end(), 0u);
    sectors.push_back(std::move(all));
  }
  return sectors;
}

void diagonalize(const SparseOperator& op, Sector& s, bool vectors) {
  const Eigen::MatrixXd block = op.to_dense_block(s.basis);
  check_symmetric(block);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      block, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "dense eigensolver did not converge");
  }
  s.energies = solver.eigenvalues();
  if (vectors) s.vectors = solver.eigenvectors();
}

bool same_level(double a, double b, double tol) {
  return std::abs(a - b) < tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

void canonicalize_sign(Eigen::VectorXd& v) {
  if (v.size() == 0) return;
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= peak - 1e-12) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

std::vector<EigenPair> lowest_states(const SparseOperator& op, int k,
                                     const SolverOptions& options) {
  check_budget(op, options);
  if (k < 1 || static_cast<std::size_t>(k) > op.dim()) {
    throw Error(ErrorCode::InvalidArgument, "requested eigenpair count out of range");
  }
  auto sectors = make_sectors(op, options);
  for (auto& s : sectors) diagonalize(op, s, true);

  struct Level {
    double energy;
    int parity;
    std::size_t sector;
    Eigen::Index column;
  };
  std::vector<Level> levels;
  for (std::size_t si = 0; si < sectors.size(); ++si) {
    for (Eigen::Index c = 0; c < sectors[si].energies.size(); ++c) {
      levels.push_back({sectors[si].energies[c], sectors[si].parity, si, c});
    }
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const Level& a, const Level& b) { return a.energy < b.energy; });

  // Group near-equal energies; inside a group order by parity (odd first).
  std::vector<std::size_t> group(levels.size(), 0);
  for (std::size_t i = 1; i < levels.size(); ++i) {
    group[i] = same_level(levels[i - 1].energy, levels[i].energy, options.degeneracy_tol)
                   ? group[i - 1]
                   : group[i - 1] + 1;
  }
  std::vector<std::size_t> order(levels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (group[a] != group[b]) return group[a] < group[b];
    return levels[a].parity < levels[b].parity;
  });

  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) {
    const std::size_t li = order[static_cast<std::size_t>(r)];
    const Level& lv = levels[li];
    const Sector& s = sectors[lv.sector];
    EigenPair pair;
    pair.energy = lv.energy;
    pair.index = r;
    pair.parity = lv.parity;
    pair.degenerate = (li > 0 && group[li - 1] == group[li]) ||
                      (li + 1 < levels.size() && group[li + 1] == group[li]);
    pair.state = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(op.dim()));
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
      pair.state[s.basis[i]] = s.vectors(static_cast<Eigen::Index>(i), lv.column);
    }
    pair.state.normalize();
    canonicalize_sign(pair.state);
    out.push_back(std::move(pair));
  }
  return out;
}

Eigen::VectorXd full_spectrum(const SparseOperator& op, const SolverOptions& options) {
  check_budget(op, options);
  auto sectors = make_sectors(op, options);
  std::vector<double> all;
  all.reserve(op.dim());
  for (auto& s : sectors) {
    diagonalize(op, s, false);
    all.insert(all.end(), s.energies.data(), s.energies.data() + s.energies.size());
  }
  std::sort(all.begin(), all.end());
  return Eigen::Map<Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(all.size()));
}

}  // namespace elocc
