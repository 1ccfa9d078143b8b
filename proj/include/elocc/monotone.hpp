#pragma once

// Schmidt-spectrum algebra: majorization, Renyi entropies, catalysis and the
// LOCC / entanglement-assisted LOCC conversion criteria.

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace elocc {

/// Coefficients below this value are treated as numerical noise when a raw
/// spectrum is turned into a SchmidtVector.
inline constexpr double kDefaultTruncation = 1e-10;

/// Tolerance used when comparing tail sums in the majorization test.
inline constexpr double kMajorizationTolerance = 1e-12;

/// Renyi differences at or below this magnitude carry no sign information.
inline constexpr double kRenyiSignificance = 1e-9;

/// Sentinel for the min-entropy limit of renyi_entropy().
inline constexpr double kAlphaInfinity = std::numeric_limits<double>::infinity();

/// Squared Schmidt coefficients of a bipartite pure state, strictly positive,
/// sorted in descending order and summing to one.
class SchmidtVector {
 public:
  /// The trivial (product-state) spectrum {1}.
  SchmidtVector();

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t rank() const noexcept { return coeffs_.size(); }
  double operator[](std::size_t k) const { return coeffs_[k]; }
  double largest() const noexcept { return coeffs_.front(); }

  /// Element-wise comparison after zero padding to the common length.
  bool approx_equal(const SchmidtVector& other, double tol = 1e-10) const;

  /// Wraps coefficients already known to satisfy the invariants. Only the
  /// ordering is re-established; no truncation or renormalization happens.
  static SchmidtVector from_sorted(std::vector<double> coeffs);

 private:
  explicit SchmidtVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  std::vector<double> coeffs_;
};

/// Drops entries below trunc_tol, renormalizes to unit sum and sorts
/// descending. Throws AllTruncated or NegativeInput.
SchmidtVector normalize_descending(std::span<const double> raw,
                                   double trunc_tol = kDefaultTruncation);

/// Nielsen's criterion: true iff every tail sum of `from` is at least the
/// matching tail sum of `to`, i.e. `from` converts to `to` by LOCC.
bool locc_convertible(const SchmidtVector& from, const SchmidtVector& to);

/// Renyi entropy in bits. alpha = 0 gives log2(rank), alpha near 1 the von
/// Neumann entropy and kAlphaInfinity the min-entropy -log2(lambda_1).
double renyi_entropy(const SchmidtVector& p, double alpha);

/// Spectrum of the product state |p>|c>.
SchmidtVector tensor_product(const SchmidtVector& p, const SchmidtVector& c);

/// Window of Renyi orders scanned for curve crossings.
struct AlphaGrid {
  double alpha_min = 0.1;
  double alpha_max = 50.0;
  int points = 500;
  double refine_tol = 1e-6;

  /// Throws InvalidArgument when the invariants do not hold.
  void validate() const;

  /// Log-spaced sample points, ascending, endpoints included.
  std::vector<double> samples() const;
};

/// Crossings of S_alpha(p) - S_alpha(q) inside the grid window, ascending.
std::vector<double> find_interceptions(const SchmidtVector& p, const SchmidtVector& q,
                                       const AlphaGrid& grid = {});

enum class Direction { AtoB, BtoA, Equivalent, Incomparable };

std::string_view to_string(Direction d) noexcept;

struct ConversionVerdict {
  Direction direction = Direction::Equivalent;
  std::vector<double> crossings;  ///< non-empty iff Incomparable
};

/// Entanglement-assisted convertibility from the Renyi dominance criterion.
ConversionVerdict elocc_verdict(const SchmidtVector& p, const SchmidtVector& q,
                                const AlphaGrid& grid = {});

/// True iff |p>|c> converts to |q>|c> by plain LOCC.
bool verify_catalyst(const SchmidtVector& p, const SchmidtVector& q, const SchmidtVector& c);

}  // namespace elocc
