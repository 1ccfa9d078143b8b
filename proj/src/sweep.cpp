#include <cmath>
#include <sstream>

#include "elocc/criticality.hpp"
#include "elocc/eigensolver.hpp"
#include "elocc/error.hpp"
#include "parallel.hpp"

namespace elocc {

double snap_parameter(double value) {
  return std::nearbyint(value * 1e12) / 1e12;
}

std::vector<double> ParamRange::values() const {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "parameter step must be > 0");
  if (!(to >= from)) throw Error(ErrorCode::InvalidArgument, "parameter range needs from <= to");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = snap_parameter(from + static_cast<double>(k) * step);
  return out;
}

Bipartition SweepRequest::resolved_cut() const {
  if (!cut) return half_chain(n_sites);
  if (cut->n_sites() != n_sites) {
    throw Error(ErrorCode::DimensionMismatch, "cut and chain length disagree");
  }
  return *cut;
}

SweepResult sweep_values(const SweepRequest& request, std::span<const double> values,
                         const ExecutionOptions& exec) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one value");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "sweep values must be strictly increasing");
    }
  }
  // Validate the model once up front so a bad spec fails before any work.
  (void)request.model.with(request.parameter, values.front()).build(request.n_sites);

  SweepResult result{request.model, request.parameter, request.n_sites, request.resolved_cut(), {}};
  result.points.resize(values.size());
  const int k = request.with_excited ? 2 : 1;
  detail::parallel_for(values.size(), exec.workers, [&](std::size_t i) {
    const auto op = request.model.with(request.parameter, values[i]).build(request.n_sites);
    const auto pairs = lowest_states(op, k);
    SweepPoint& pt = result.points[i];
    pt.value = values[i];
    pt.ground_energy = pairs[0].energy;
    pt.ground_degenerate = pairs[0].degenerate;
    pt.ground = schmidt_from_state(pairs[0].state, result.cut, request.trunc_tol);
    if (request.with_excited) {
      pt.excited_energy = pairs[1].energy;
      pt.excited = schmidt_from_state(pairs[1].state, result.cut, request.trunc_tol);
    }
  });
  return result;
}

SweepResult sweep(const SweepRequest& request, const ParamRange& range,
                  const ExecutionOptions& exec) {
  const auto values = range.values();
  return sweep_values(request, values, exec);
}

}  // namespace elocc

namespace elocc {

ExcitedComparison gs_vs_excited(const ModelSpec& model, int n_sites, const Bipartition& cut,
                                const AlphaGrid& grid, double trunc_tol) {
  if (cut.n_sites() != n_sites) throw Error(ErrorCode::DimensionMismatch, "cut and chain length disagree");
  const auto pairs = lowest_states(model.build(n_sites), 2);
  if (pairs[0].degenerate) {
    throw Error(ErrorCode::DegenerateGround,
                "ground level of " + model.to_string() + " is degenerate; no unique excited state");
  }
  ExcitedComparison out;
  out.ground_energy = pairs[0].energy;
  out.excited_energy = pairs[1].energy;
  out.ground = schmidt_from_state(pairs[0].state, cut, trunc_tol);
  out.excited = schmidt_from_state(pairs[1].state, cut, trunc_tol);
  out.verdict = elocc_verdict(out.excited, out.ground, grid);
  out.large_alpha_gap =
      renyi_entropy(out.excited, kAlphaInfinity) - renyi_entropy(out.ground, kAlphaInfinity);
  return out;
}

}  // namespace elocc
