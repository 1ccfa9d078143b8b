#include "elocc/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

#include "elocc/error.hpp"

namespace elocc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AllTruncated: return "AllTruncated";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::OddSize: return "OddSize";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NoTransition: return "NoTransition";
    case ErrorCode::MultipleTransitions: return "MultipleTransitions";
    case ErrorCode::DegenerateGround: return "DegenerateGround";
    case ErrorCode::BadSplit: return "BadSplit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::AtoB: return "AtoB";
    case Direction::BtoA: return "BtoA";
    case Direction::Equivalent: return "Equivalent";
    case Direction::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

SchmidtVector::SchmidtVector() : coeffs_{1.0} {}

SchmidtVector SchmidtVector::from_sorted(std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::AllTruncated, "empty Schmidt spectrum");
  std::sort(coeffs.begin(), coeffs.end(), std::greater<>());
  return SchmidtVector(std::move(coeffs));
}

bool SchmidtVector::approx_equal(const SchmidtVector& other, double tol) const {
  const std::size_t d = std::max(rank(), other.rank());
  for (std::size_t k = 0; k < d; ++k) {
    const double a = k < rank() ? coeffs_[k] : 0.0;
    const double b = k < other.rank() ? other.coeffs_[k] : 0.0;
    if (std::abs(a - b) > tol) return false;
  }
  return true;
}

SchmidtVector normalize_descending(std::span<const double> raw, double trunc_tol) {
  if (!(trunc_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "truncation tolerance must be non-negative");
  }
  std::vector<double> kept;
  kept.reserve(raw.size());
  for (double x : raw) {
    if (x < -trunc_tol || std::isnan(x)) {
      std::ostringstream msg;
      msg << "negative Schmidt coefficient " << x;
      throw Error(ErrorCode::NegativeInput, msg.str());
    }
    if (x >= trunc_tol && x > 0.0) kept.push_back(x);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::AllTruncated, "no Schmidt coefficient survives truncation");
  }
  std::sort(kept.begin(), kept.end(), std::greater<>());
  // Summing smallest-first keeps the tail from being swallowed by rounding.
  const double total = std::accumulate(kept.rbegin(), kept.rend(), 0.0);
  for (double& x : kept) x /= total;
  return SchmidtVector::from_sorted(std::move(kept));
}

bool locc_convertible(const SchmidtVector& from, const SchmidtVector& to) {
  const std::size_t d = std::max(from.rank(), to.rank());
  double tail_from = 0.0;
  double tail_to = 0.0;
  for (std::size_t k = d; k-- > 0;) {
    tail_from += k < from.rank() ? from[k] : 0.0;
    tail_to += k < to.rank() ? to[k] : 0.0;
    if (tail_from < tail_to - kMajorizationTolerance) return false;
  }
  return true;
}

double renyi_entropy(const SchmidtVector& p, double alpha) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidArgument, "Renyi order must be >= 0");
  const auto c = p.coeffs();
  if (alpha == 0.0) return std::log2(static_cast<double>(c.size()));
  if (std::isinf(alpha)) return -std::log2(c.front());
  if (std::abs(alpha - 1.0) < 1e-6) {
    double s = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s -= *it * std::log2(*it);
    return s;
  }
  // log2 sum lambda^a = a log2 lambda_1 + log2 sum (lambda/lambda_1)^a
  const double top = c.front();
  double sum = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) sum += std::pow(*it / top, alpha);
  return (alpha * std::log2(top) + std::log2(sum)) / (1.0 - alpha);
}

SchmidtVector tensor_product(const SchmidtVector& p, const SchmidtVector& c) {
  std::vector<double> out;
  out.reserve(p.rank() * c.rank());
  for (double a : p.coeffs()) {
    for (double b : c.coeffs()) out.push_back(a * b);
  }
  return SchmidtVector::from_sorted(std::move(out));
}

void AlphaGrid::validate() const {
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min) || std::isinf(alpha_max)) {
    throw Error(ErrorCode::InvalidArgument, "alpha grid needs 0 < alpha_min < alpha_max < inf");
  }
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "alpha grid needs at least 2 points");
  if (!(refine_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "refine_tol must be > 0");
}

std::vector<double> AlphaGrid::samples() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(points));
  const double lo = std::log(alpha_min);
  const double span = std::log(alpha_max) - lo;
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = std::exp(lo + span * i / (points - 1));
  }
  out.front() = alpha_min;
  out.back() = alpha_max;
  return out;
}

namespace {

double renyi_gap(const SchmidtVector& p, const SchmidtVector& q, double alpha) {
  return renyi_entropy(p, alpha) - renyi_entropy(q, alpha);
}

struct SignedSample {
  double alpha;
  double gap;
};

}  // namespace

std::vector<double> find_interceptions(const SchmidtVector& p, const SchmidtVector& q,
                                       const AlphaGrid& grid) {
  std::vector<double> crossings;
  std::optional<SignedSample> last;
  for (double alpha : grid.samples()) {
    const double gap = renyi_gap(p, q, alpha);
    if (std::abs(gap) <= kRenyiSignificance) continue;
    if (last && std::signbit(gap) != std::signbit(last->gap)) {
      double lo = last->alpha;
      double hi = alpha;
      const bool lo_negative = std::signbit(last->gap);
      while (hi - lo > grid.refine_tol) {
        const double mid = 0.5 * (lo + hi);
        const double g = renyi_gap(p, q, mid);
        if (g != 0.0 && std::signbit(g) == lo_negative) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      crossings.push_back(0.5 * (lo + hi));
    }
    last = SignedSample{alpha, gap};
  }
  return crossings;
}

ConversionVerdict elocc_verdict(const SchmidtVector& p, const SchmidtVector& q,
                                const AlphaGrid& grid) {
  if (p.approx_equal(q)) return {Direction::Equivalent, {}};
  auto crossings = find_interceptions(p, q, grid);
  if (!crossings.empty()) return {Direction::Incomparable, std::move(crossings)};
  // Without a significant sign change every significant gap shares one sign.
  for (double alpha : grid.samples()) {
    const double gap = renyi_gap(p, q, alpha);
    if (gap < -kRenyiSignificance) return {Direction::BtoA, {}};
  }
  return {Direction::AtoB, {}};
}

bool verify_catalyst(const SchmidtVector& p, const SchmidtVector& q, const SchmidtVector& c) {
  return locc_convertible(tensor_product(p, c), tensor_product(q, c));
}

}  // namespace elocc
