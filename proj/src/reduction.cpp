#include "elocc/reduction.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "elocc/error.hpp"

namespace elocc {

namespace {

constexpr double kNormTol = 1e-10;

// Packs the bits of `index` at the given masks, first mask most significant.
std::uint32_t gather(std::uint32_t index, std::span<const std::uint32_t> masks) {
  std::uint32_t out = 0;
  for (std::uint32_t m : masks) out = (out << 1) | ((index & m) ? 1u : 0u);
  return out;
}

std::vector<std::uint32_t> masks_for(std::span<const int> sites, int n) {
  std::vector<std::uint32_t> out;
  out.reserve(sites.size());
  for (int s : sites) out.push_back(std::uint32_t{1} << (n - s));
  return out;
}

}  // namespace

Bipartition::Bipartition(int n_sites, std::vector<int> a_sites)
    : n_sites_(n_sites), a_sites_(std::move(a_sites)) {
  if (n_sites < 2) throw Error(ErrorCode::InvalidArgument, "a bipartition needs at least 2 sites");
  std::sort(a_sites_.begin(), a_sites_.end());
  if (std::adjacent_find(a_sites_.begin(), a_sites_.end()) != a_sites_.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate site in subsystem A");
  }
  if (a_sites_.empty() || static_cast<int>(a_sites_.size()) >= n_sites) {
    throw Error(ErrorCode::InvalidArgument, "subsystem A must be a non-empty proper subset");
  }
  if (a_sites_.front() < 1 || a_sites_.back() > n_sites) {
    throw Error(ErrorCode::InvalidArgument, "site index out of range");
  }
}

std::vector<int> Bipartition::b_sites() const {
  std::vector<int> out;
  for (int s = 1; s <= n_sites_; ++s) {
    if (!std::binary_search(a_sites_.begin(), a_sites_.end(), s)) out.push_back(s);
  }
  return out;
}

Bipartition Bipartition::complement() const { return Bipartition(n_sites_, b_sites()); }

Bipartition Bipartition::parse(std::string_view text, int n_sites) {
  if (text == "half") return half_chain(n_sites);
  if (text == "comb") return comb(n_sites);
  if (text.starts_with("sites=")) {
    std::vector<int> sites;
    std::string_view rest = text.substr(6);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      int value = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (ec != std::errc{} || ptr != item.data() + item.size()) {
        throw Error(ErrorCode::ParseError, "bad site index '" + std::string(item) + "'");
      }
      sites.push_back(value);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return Bipartition(n_sites, std::move(sites));
  }
  throw Error(ErrorCode::ParseError,
              "unknown cut '" + std::string(text) + "' (expected half, comb or sites=i,j,...)");
}

std::string Bipartition::to_string() const {
  std::ostringstream out;
  out << "sites=";
  for (std::size_t i = 0; i < a_sites_.size(); ++i) out << (i ? "," : "") << a_sites_[i];
  return out.str();
}

Bipartition half_chain(int n) {
  if (n % 2 != 0) throw Error(ErrorCode::OddSize, "half-chain cut needs an even number of sites");
  std::vector<int> a(static_cast<std::size_t>(n / 2));
  for (int i = 0; i < n / 2; ++i) a[static_cast<std::size_t>(i)] = i + 1;
  return Bipartition(n, std::move(a));
}

Bipartition comb(int n) {
  std::vector<int> a;
  for (int s = 1; s <= n; s += 2) a.push_back(s);
  return Bipartition(n, std::move(a));
}

Eigen::MatrixXd reshape_for_cut(std::span<const double> state, const Bipartition& part) {
  const int n = part.n_sites();
  if (state.size() != (std::size_t{1} << n)) {
    std::ostringstream msg;
    msg << "state of length " << state.size() << " does not match " << n << " sites";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  const auto a_masks = masks_for(part.a_sites(), n);
  const auto b_sites = part.b_sites();
  const auto b_masks = masks_for(b_sites, n);
  Eigen::MatrixXd m(Eigen::Index{1} << a_masks.size(), Eigen::Index{1} << b_masks.size());
  for (std::uint32_t b = 0; b < state.size(); ++b) {
    m(gather(b, a_masks), gather(b, b_masks)) = state[b];
  }
  return m;
}

SchmidtVector schmidt_from_state(std::span<const double> state, const Bipartition& part,
                                 double trunc_tol) {
  const Eigen::MatrixXd m = reshape_for_cut(state, part);
  const double norm = m.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "state norm " << norm << " differs from 1";
    throw Error(ErrorCode::NotNormalized, msg.str());
  }
  // Singular values are invariant under transposition; decompose the wide form.
  const Eigen::MatrixXd wide = m.rows() <= m.cols() ? m : Eigen::MatrixXd(m.transpose());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(wide);
  const Eigen::VectorXd sigma = svd.singularValues();
  std::vector<double> lambda(static_cast<std::size_t>(sigma.size()));
  for (Eigen::Index i = 0; i < sigma.size(); ++i) lambda[static_cast<std::size_t>(i)] = sigma[i] * sigma[i];
  return normalize_descending(lambda, trunc_tol);
}

}  // namespace elocc
