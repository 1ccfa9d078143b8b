#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Dense>

#include "elocc/criticality.hpp"
#include "elocc/error.hpp"

namespace elocc {

namespace {

constexpr double kDecayMin = 0.1;
constexpr double kDecayMax = 20.0;
constexpr int kDecayGrid = 400;

struct LinearPart {
  double a;
  double c;
  double rss;
};

// Best a, c for a fixed decay length b.
LinearPart solve_linear(std::span<const ScalingPoint> pts, double b) {
  const auto m = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    design(i, 0) = std::exp(-pts[static_cast<std::size_t>(i)].n_sites / b);
    design(i, 1) = 1.0;
    y[i] = pts[static_cast<std::size_t>(i)].critical;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
  const double rss = (design * coef - y).squaredNorm();
  return {coef[0], coef[1], rss};
}

}  // namespace

double ScalingFit::operator()(double n) const { return a * std::exp(-n / b) + c; }

ScalingFit scaling_fit(std::span<const ScalingPoint> points) {
  if (points.size() < 3) throw Error(ErrorCode::InvalidArgument, "scaling fit needs at least 3 points");
  std::set<int> sizes;
  for (const auto& p : points) {
    if (!sizes.insert(p.n_sites).second) {
      throw Error(ErrorCode::InvalidArgument, "scaling fit needs distinct chain lengths");
    }
  }

  const double mean = std::accumulate(points.begin(), points.end(), 0.0,
                                      [](double s, const ScalingPoint& p) { return s + p.critical; }) /
                      static_cast<double>(points.size());
  const bool flat = std::all_of(points.begin(), points.end(), [&](const ScalingPoint& p) {
    return std::abs(p.critical - mean) <= 1e-14 * std::max(1.0, std::abs(mean));
  });
  if (flat) return ScalingFit{0.0, 1.0, mean, 0.0, true};

  std::vector<double> grid(kDecayGrid);
  for (int i = 0; i < kDecayGrid; ++i) {
    grid[static_cast<std::size_t>(i)] =
        kDecayMin * std::pow(kDecayMax / kDecayMin, static_cast<double>(i) / (kDecayGrid - 1));
  }
  std::size_t best = 0;
  double best_rss = solve_linear(points, grid[0]).rss;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double rss = solve_linear(points, grid[i]).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best = i;
    }
  }

  // Golden-section polish between the neighbouring grid points.
  double lo = grid[best == 0 ? 0 : best - 1];
  double hi = grid[std::min(best + 1, grid.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = solve_linear(points, x1).rss;
  double f2 = solve_linear(points, x2).rss;
  while (hi - lo > 1e-13 * hi) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = solve_linear(points, x1).rss;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = solve_linear(points, x2).rss;
    }
  }
  const double b = 0.5 * (lo + hi);
  const LinearPart lin = solve_linear(points, b);
  return ScalingFit{lin.a, b, lin.c, std::sqrt(lin.rss / static_cast<double>(points.size())), false};
}

}  // namespace elocc
