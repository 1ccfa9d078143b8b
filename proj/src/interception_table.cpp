#include <algorithm>
#include <cmath>

#include "elocc/criticality.hpp"
#include "elocc/error.hpp"
#include "parallel.hpp"

namespace elocc {

InterceptionTable::InterceptionTable(std::vector<double> labels)
    : labels_(std::move(labels)), cells_(labels_.size() * labels_.size()) {}

const std::vector<double>& InterceptionTable::crossings(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw Error(ErrorCode::InvalidArgument, "table index out of range");
  return cells_[i * size() + j];
}

std::optional<double> InterceptionTable::cell(std::size_t i, std::size_t j) const {
  const auto& c = crossings(i, j);
  if (c.empty()) return std::nullopt;
  return c.front();
}

void InterceptionTable::set(std::size_t i, std::size_t j, std::vector<double> crossings) {
  if (i >= size() || j >= size()) throw Error(ErrorCode::InvalidArgument, "table index out of range");
  if (i == j && !crossings.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a state cannot intercept itself");
  }
  std::sort(crossings.begin(), crossings.end());
  cells_[j * size() + i] = crossings;
  cells_[i * size() + j] = std::move(crossings);
}

std::size_t InterceptionTable::index_of(double value) const {
  if (labels_.empty()) throw Error(ErrorCode::InvalidArgument, "empty table");
  std::size_t best = 0;
  for (std::size_t i = 1; i < labels_.size(); ++i) {
    if (std::abs(labels_[i] - value) < std::abs(labels_[best] - value)) best = i;
  }
  return best;
}

InterceptionTable interception_table(std::span<const double> labels,
                                     std::span<const SchmidtVector> spectra,
                                     const AlphaGrid& grid, const ExecutionOptions& exec) {
  if (labels.empty() || labels.size() != spectra.size()) {
    throw Error(ErrorCode::InvalidArgument, "table needs one spectrum per label");
  }
  grid.validate();
  InterceptionTable table({labels.begin(), labels.end()});
  const std::size_t n = labels.size();
  // Each row owns the cells right of the diagonal; rows write disjoint cells.
  detail::parallel_for(n, exec.workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      table.set(i, j, find_interceptions(spectra[i], spectra[j], grid));
    }
  });
  return table;
}

InterceptionTable interception_table(const SweepResult& sweep, const AlphaGrid& grid,
                                     const ExecutionOptions& exec) {
  std::vector<double> labels;
  std::vector<SchmidtVector> spectra;
  for (const auto& pt : sweep.points) {
    labels.push_back(pt.value);
    spectra.push_back(pt.ground);
  }
  return interception_table(labels, spectra, grid, exec);
}

double round_up_tenth(double alpha) {
  return std::ceil(alpha * 10.0 - 1e-9) / 10.0;
}

std::string_view to_string(Pattern p) noexcept {
  switch (p) {
    case Pattern::CaseI: return "CaseI";
    case Pattern::CaseII: return "CaseII";
    case Pattern::Mixed: return "Mixed";
  }
  return "Unknown";
}

namespace {

bool mostly_crossing(const BlockCount& b, double tol) {
  return static_cast<double>(b.cells - b.crossings) <= tol * static_cast<double>(b.cells);
}

bool mostly_clear(const BlockCount& b, double tol) {
  return static_cast<double>(b.crossings) <= tol * static_cast<double>(b.cells);
}

}  // namespace

PatternReport classify_pattern(const InterceptionTable& table, std::size_t split, double tolerance) {
  if (split == 0 || split >= table.size()) {
    throw Error(ErrorCode::BadSplit, "split must leave both label groups non-empty");
  }
  PatternReport r;
  const std::size_t n = table.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      BlockCount& block = j < split ? r.first : (i >= split ? r.second : r.off);
      ++block.cells;
      if (table.intercepts(i, j)) ++block.crossings;
    }
  }
  const double total = static_cast<double>(r.first.cells + r.second.cells + r.off.cells);

  auto case_i = [&](const BlockCount& crossing_phase, const BlockCount& clear_phase) {
    return crossing_phase.cells > 0 && mostly_crossing(crossing_phase, tolerance) &&
           mostly_clear(clear_phase, tolerance) && r.off.crossings > 0;
  };
  auto case_i_misfits = [&](const BlockCount& crossing_phase, const BlockCount& clear_phase) {
    return static_cast<double>((crossing_phase.cells - crossing_phase.crossings) + clear_phase.crossings) /
           total;
  };

  if (case_i(r.first, r.second)) {
    r.pattern = Pattern::CaseI;
    r.crossing_phase_first = true;
    r.nonconforming_fraction = case_i_misfits(r.first, r.second);
  } else if (case_i(r.second, r.first)) {
    r.pattern = Pattern::CaseI;
    r.crossing_phase_first = false;
    r.nonconforming_fraction = case_i_misfits(r.second, r.first);
  } else if (mostly_clear(r.first, tolerance) && mostly_clear(r.second, tolerance) &&
             r.off.crossings > 0) {
    r.pattern = Pattern::CaseII;
    r.nonconforming_fraction = static_cast<double>(r.first.crossings + r.second.crossings) / total;
  }
  return r;
}

}  // namespace elocc
