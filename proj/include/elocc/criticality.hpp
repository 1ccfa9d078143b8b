#pragma once

// Parameter sweeps over ground states, interception tables and the phase
// boundary estimates built on top of them.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elocc/model_spec.hpp"
#include "elocc/monotone.hpp"
#include "elocc/reduction.hpp"

namespace elocc {

struct ExecutionOptions {
  int workers = 1;  ///< concurrent sweep points / table rows
};

/// Inclusive arithmetic progression from..to. Values are snapped to 1e-12 so
/// that e.g. 0.94 + 3 * 0.01 prints and compares as 0.97.
struct ParamRange {
  double from = 0.0;
  double to = 0.0;
  double step = 0.1;

  std::vector<double> values() const;
};

/// Rounds to the 1e-12 lattice used for all parameter values.
double snap_parameter(double value);

struct SweepPoint {
  double value = 0.0;
  double ground_energy = 0.0;
  SchmidtVector ground;
  bool ground_degenerate = false;
  std::optional<double> excited_energy;
  std::optional<SchmidtVector> excited;
};

struct SweepRequest {
  ModelSpec model;            ///< the swept parameter may be left unset
  std::string parameter;      ///< name of the swept coupling
  int n_sites = 10;
  std::optional<Bipartition> cut;  ///< defaults to the half chain
  bool with_excited = false;
  double trunc_tol = kDefaultTruncation;

  Bipartition resolved_cut() const;
};

struct SweepResult {
  ModelSpec model;
  std::string parameter;
  int n_sites = 0;
  Bipartition cut{2, {1}};
  std::vector<SweepPoint> points;  ///< strictly increasing values
};

/// Ground state (and optionally first excited state) spectra on a grid.
SweepResult sweep(const SweepRequest& request, const ParamRange& range,
                  const ExecutionOptions& exec = {});

/// Same as sweep() for an explicit, strictly increasing value list.
SweepResult sweep_values(const SweepRequest& request, std::span<const double> values,
                         const ExecutionOptions& exec = {});

/// Square, symmetric table of Renyi-curve crossings between sweep points.
class InterceptionTable {
 public:
  explicit InterceptionTable(std::vector<double> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const double> labels() const noexcept { return labels_; }

  /// All crossings between points i and j, ascending.
  const std::vector<double>& crossings(std::size_t i, std::size_t j) const;
  /// Smallest crossing, or nullopt for "no interception".
  std::optional<double> cell(std::size_t i, std::size_t j) const;
  bool intercepts(std::size_t i, std::size_t j) const { return !crossings(i, j).empty(); }

  /// Sets cell (i, j) and its mirror (j, i).
  void set(std::size_t i, std::size_t j, std::vector<double> crossings);

  /// Index of the label closest to `value`.
  std::size_t index_of(double value) const;

 private:
  std::vector<double> labels_;
  std::vector<std::vector<double>> cells_;
};

InterceptionTable interception_table(const SweepResult& sweep, const AlphaGrid& grid = {},
                                     const ExecutionOptions& exec = {});

InterceptionTable interception_table(std::span<const double> labels,
                                     std::span<const SchmidtVector> spectra,
                                     const AlphaGrid& grid = {},
                                     const ExecutionOptions& exec = {});

/// Display rounding used when reproducing published tables: the first
/// multiple of 0.1 at or above the crossing.
double round_up_tenth(double alpha);

enum class Pattern { CaseI, CaseII, Mixed };

std::string_view to_string(Pattern p) noexcept;

struct BlockCount {
  std::size_t cells = 0;
  std::size_t crossings = 0;
};

struct PatternReport {
  Pattern pattern = Pattern::Mixed;
  BlockCount first;   ///< labels [0, split), diagonal excluded
  BlockCount second;  ///< labels [split, n), diagonal excluded
  BlockCount off;     ///< first x second
  /// For CaseI: true when the all-crossing phase is the first group.
  bool crossing_phase_first = true;
  /// Share of cells that contradict the reported pattern (0 for Mixed).
  double nonconforming_fraction = 0.0;
};

/// Matches the table against the two interception patterns. The diagonal
/// blocks decide the case; each may hold up to `tolerance` (as a fraction of
/// its cells) of nonconforming cells. The cross block only needs a crossing.
/// Throws BadSplit when either group is empty.
PatternReport classify_pattern(const InterceptionTable& table, std::size_t split,
                               double tolerance = 0.1);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  double step = 0.0;  ///< grid resolution the bracket was certified at

  double midpoint() const { return 0.5 * (lower + upper); }
};

/// Interception status of each consecutive pair of `values`:
/// result[i] is true when the states at values[i] and values[i+1] intercept.
using PairStatusFn = std::function<std::vector<bool>(std::span<const double> values)>;

struct BracketTrace {
  Bracket bracket;
  std::vector<Bracket> levels;  ///< one bracket per refinement step, coarse first
};

/// Refines the point where the consecutive-pair status flips. Steps are
/// target_step * 10^k, starting from the largest that gives at least ten
/// intervals over [from, to], with grid points on multiples of the step.
/// Throws NoTransition / MultipleTransitions on the coarse scan.
BracketTrace locate_transition(double from, double to, double target_step,
                               const PairStatusFn& status);

struct BoundaryRequest {
  SweepRequest sweep;
  double from = 0.0;
  double to = 0.0;
  double target_step = 1e-3;
  AlphaGrid grid;
};

BracketTrace locate_boundary(const BoundaryRequest& request, const ExecutionOptions& exec = {});

/// Boundary read off a finished table. CaseI uses the consecutive-pair
/// status change; CaseII the innermost crossing pair that straddles the
/// split. Throws NoTransition if the table carries no such evidence.
Bracket table_boundary(const InterceptionTable& table, std::size_t split, Pattern pattern);

struct ScalingPoint {
  int n_sites = 0;
  double critical = 0.0;
};

/// g_c(N) = a exp(-N / b) + c
struct ScalingFit {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double rms_residual = 0.0;
  bool degenerate = false;  ///< all g_c equal; b is not identifiable

  double operator()(double n) const;
};

/// Least squares over (a, b, c): a and c are linear given b, and b is found
/// by a log-grid scan over [0.1, 20] polished with golden-section search.
ScalingFit scaling_fit(std::span<const ScalingPoint> points);

struct ExcitedComparison {
  ConversionVerdict verdict;  ///< first excited (A) versus ground (B)
  double ground_energy = 0.0;
  double excited_energy = 0.0;
  SchmidtVector ground;
  SchmidtVector excited;
  /// Min-entropy difference S_inf(excited) - S_inf(ground).
  double large_alpha_gap = 0.0;
};

/// Compares the first excited state with the ground state of a fully
/// specified model. Throws DegenerateGround if the ground level is degenerate.
ExcitedComparison gs_vs_excited(const ModelSpec& model, int n_sites, const Bipartition& cut,
                                const AlphaGrid& grid = {},
                                double trunc_tol = kDefaultTruncation);

}  // namespace elocc
