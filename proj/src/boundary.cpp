#include <cmath>
#include <map>
#include <sstream>

#include "elocc/criticality.hpp"
#include "elocc/error.hpp"

namespace elocc {

namespace {

std::vector<double> aligned_grid(double lo, double hi, double step) {
  const auto first = static_cast<long long>(std::ceil(lo / step - 1e-9));
  const auto last = static_cast<long long>(std::floor(hi / step + 1e-9));
  std::vector<double> out;
  for (long long k = first; k <= last; ++k) out.push_back(snap_parameter(static_cast<double>(k) * step));
  return out;
}

std::vector<std::size_t> status_changes(const std::vector<bool>& status) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k + 1 < status.size(); ++k) {
    if (status[k] != status[k + 1]) out.push_back(k);
  }
  return out;
}

std::string describe(const std::vector<double>& values, const std::vector<std::size_t>& changes) {
  std::ostringstream msg;
  for (std::size_t i = 0; i < changes.size(); ++i) {
    msg << (i ? ", " : "") << values[changes[i] + 1];
  }
  return msg.str();
}

}  // namespace

BracketTrace locate_transition(double from, double to, double target_step,
                               const PairStatusFn& status) {
  if (!(target_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "target step must be > 0");
  if (!(to > from)) throw Error(ErrorCode::InvalidArgument, "search interval needs from < to");

  double step = target_step;
  while ((to - from) / (step * 10.0) >= 10.0 - 1e-9) step *= 10.0;

  BracketTrace trace;
  double lo = from;
  double hi = to;
  bool coarse = true;
  for (;;) {
    const auto values = aligned_grid(lo, hi, step);
    if (values.size() < 3) {
      throw Error(ErrorCode::InvalidArgument, "search interval too narrow for the step");
    }
    const auto s = status(values);
    if (s.size() + 1 != values.size()) {
      throw Error(ErrorCode::InvalidArgument, "status function returned the wrong length");
    }
    const auto changes = status_changes(s);
    if (changes.empty()) {
      std::ostringstream msg;
      msg << "interception status of consecutive points never changes in [" << lo << ", " << hi
          << "] at step " << step;
      throw Error(ErrorCode::NoTransition, msg.str());
    }
    if (changes.size() > 1 && coarse) {
      throw Error(ErrorCode::MultipleTransitions,
                  "interception status changes at several points: " + describe(values, changes));
    }
    // Pair k = (v_k, v_{k+1}) and pair k+1 = (v_{k+1}, v_{k+2}) disagree, so the
    // ambiguous point v_{k+1} is enclosed with one grid step on either side.
    const std::size_t k = changes.front();
    Bracket b{values[k], values[k + 2], step};
    trace.levels.push_back(b);
    trace.bracket = b;
    if (step <= target_step * (1.0 + 1e-9)) break;
    lo = b.lower;
    hi = b.upper;
    step /= 10.0;
    coarse = false;
  }
  return trace;
}

BracketTrace locate_boundary(const BoundaryRequest& request, const ExecutionOptions& exec) {
  request.grid.validate();
  std::map<long long, SchmidtVector> cache;
  auto key = [](double v) { return std::llround(v * 1e12); };

  PairStatusFn status = [&](std::span<const double> values) {
    std::vector<double> missing;
    for (double v : values) {
      if (!cache.contains(key(v))) missing.push_back(v);
    }
    if (!missing.empty()) {
      SweepRequest req = request.sweep;
      req.with_excited = false;
      const auto result = sweep_values(req, missing, exec);
      for (const auto& pt : result.points) cache.emplace(key(pt.value), pt.ground);
    }
    std::vector<bool> out;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const auto& p = cache.at(key(values[i]));
      const auto& q = cache.at(key(values[i + 1]));
      out.push_back(!find_interceptions(p, q, request.grid).empty());
    }
    return out;
  };
  return locate_transition(request.from, request.to, request.target_step, status);
}

Bracket table_boundary(const InterceptionTable& table, std::size_t split, Pattern pattern) {
  const std::size_t n = table.size();
  if (split == 0 || split >= n) throw Error(ErrorCode::BadSplit, "split must leave both groups non-empty");
  const auto labels = table.labels();
  const double step = n > 1 ? labels[1] - labels[0] : 0.0;

  if (pattern == Pattern::CaseII) {
    // Innermost crossing pair that straddles the split.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = 0; i < split; ++i) {
      for (std::size_t j = split; j < n; ++j) {
        if (!table.intercepts(i, j)) continue;
        if (!best || j - i < best->second - best->first ||
            (j - i == best->second - best->first && i > best->first)) {
          best = std::pair{i, j};
        }
      }
    }
    if (!best) throw Error(ErrorCode::NoTransition, "no crossing straddles the split");
    return {labels[best->first], labels[best->second], step};
  }

  std::vector<bool> status;
  for (std::size_t i = 0; i + 1 < n; ++i) status.push_back(table.intercepts(i, i + 1));
  const auto changes = status_changes(status);
  if (changes.empty()) throw Error(ErrorCode::NoTransition, "consecutive-pair status never changes");
  // The change nearest the split is the one the split refers to.
  std::size_t k = changes.front();
  for (std::size_t c : changes) {
    const auto dist = [&](std::size_t x) { return std::abs(static_cast<long long>(x + 1) - static_cast<long long>(split)); };
    if (dist(c) < dist(k)) k = c;
  }
  return {labels[k], labels[k + 2], step};
}

}  // namespace elocc
