#include <doctest.h>

#include <cmath>

#include "elocc/criticality.hpp"
#include "elocc/error.hpp"

using namespace elocc;

namespace {

// Consecutive pairs intercept while both values sit below `edge`.
PairStatusFn planted(double edge, int* calls = nullptr) {
  return [=](std::span<const double> values) {
    if (calls) ++*calls;
    std::vector<bool> out;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) out.push_back(values[i + 1] <= edge);
    return out;
  };
}

InterceptionTable synthetic(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& crosses) {
  std::vector<double> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(snap_parameter(0.1 * static_cast<double>(i)));
  InterceptionTable t(labels);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      t.set(i, j, crosses(i, j) ? std::vector<double>{1.0} : std::vector<double>{});
    }
  }
  return t;
}

}  // namespace

TEST_SUITE("criticality") {

TEST_CASE("parameter ranges are inclusive and snapped") {
  const auto v = ParamRange{0.94, 1.04, 0.01}.values();
  REQUIRE(v.size() == 11);
  CHECK(v[3] == 0.97);
  CHECK(v.back() == 1.04);
  CHECK(ParamRange{0.5, 0.5, 0.1}.values() == std::vector<double>{0.5});
  CHECK(ParamRange{0.4, 1.6, 0.1}.values().size() == 13);
  CHECK_THROWS_AS(ParamRange({1.0, 0.5, 0.1}).values(), Error);
  CHECK_THROWS_AS(ParamRange({0.0, 1.0, 0.0}).values(), Error);
}

TEST_CASE("sweep records ground and excited spectra") {
  SweepRequest req{ModelSpec::parse("ising"), "g", 6, std::nullopt};
  req.with_excited = true;
  const auto s = sweep(req, {0.5, 1.5, 0.5});
  REQUIRE(s.points.size() == 3);
  CHECK(s.cut == half_chain(6));
  for (const auto& p : s.points) {
    REQUIRE(p.excited_energy.has_value());
    CHECK(*p.excited_energy >= p.ground_energy);
  }
  CHECK(s.points[2].ground.largest() > s.points[0].ground.largest());

  SweepRequest bad = req;
  bad.parameter = "delta";
  CHECK_THROWS_AS(sweep(bad, {0.5, 1.5, 0.5}), Error);
  const std::vector<double> unordered = {0.7, 0.6};
  CHECK_THROWS_AS(sweep_values(req, unordered), Error);
}

TEST_CASE("sweep results do not depend on the worker count") {
  SweepRequest req{ModelSpec::parse("xy:gamma=0.5"), "h", 8, comb(8)};
  const auto one = sweep(req, {0.2, 1.2, 0.2});
  const auto three = sweep(req, {0.2, 1.2, 0.2}, ExecutionOptions{3});
  REQUIRE(one.points.size() == three.points.size());
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    CHECK(one.points[i].ground_energy == three.points[i].ground_energy);
    CHECK(one.points[i].ground.approx_equal(three.points[i].ground, 0.0));
  }
  const auto t1 = interception_table(one);
  const auto t3 = interception_table(three, AlphaGrid{}, ExecutionOptions{3});
  for (std::size_t i = 0; i < t1.size(); ++i) {
    for (std::size_t j = 0; j < t1.size(); ++j) CHECK(t1.crossings(i, j) == t3.crossings(i, j));
  }
}

TEST_CASE("tables are symmetric with an empty diagonal") {
  SweepRequest req{ModelSpec::parse("ising"), "g", 8, std::nullopt};
  auto t = interception_table(sweep(req, {0.6, 1.2, 0.1}));
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK_FALSE(t.intercepts(i, i));
    for (std::size_t j = 0; j < t.size(); ++j) CHECK(t.crossings(i, j) == t.crossings(j, i));
  }
  CHECK(t.index_of(0.91) == 3);
  CHECK_THROWS_AS(t.set(1, 1, {0.5}), Error);
  CHECK_THROWS_AS(t.crossings(0, 99), Error);

  SweepRequest one{ModelSpec::parse("ising"), "g", 4, std::nullopt};
  const auto single = interception_table(sweep(one, {0.5, 0.5, 0.1}));
  CHECK(single.size() == 1);
  CHECK_FALSE(single.cell(0, 0).has_value());
}

TEST_CASE("round_up_tenth") {
  CHECK(round_up_tenth(0.51) == doctest::Approx(0.6));
  CHECK(round_up_tenth(0.6) == doctest::Approx(0.6));
  CHECK(round_up_tenth(0.6000000000001) == doctest::Approx(0.6));
  CHECK(round_up_tenth(5.31) == doctest::Approx(5.4));
}

TEST_CASE("classify_pattern on planted tables") {
  // Crossings inside the first group and across, none inside the second.
  const auto case_i = synthetic(8, [](std::size_t i, std::size_t) { return i < 4; });
  const auto r1 = classify_pattern(case_i, 4);
  CHECK(r1.pattern == Pattern::CaseI);
  CHECK(r1.crossing_phase_first);
  CHECK(r1.nonconforming_fraction == 0.0);

  const auto mirrored = synthetic(8, [](std::size_t, std::size_t j) { return j >= 4; });
  const auto r2 = classify_pattern(mirrored, 4);
  CHECK(r2.pattern == Pattern::CaseI);
  CHECK_FALSE(r2.crossing_phase_first);

  const auto case_ii = synthetic(8, [](std::size_t i, std::size_t j) { return i < 4 && j >= 4 && i + j == 7; });
  CHECK(classify_pattern(case_ii, 4).pattern == Pattern::CaseII);

  const auto empty = synthetic(2, [](std::size_t, std::size_t) { return false; });
  CHECK(classify_pattern(empty, 1).pattern == Pattern::Mixed);

  CHECK_THROWS_AS(classify_pattern(case_i, 0), Error);
  CHECK_THROWS_AS(classify_pattern(case_i, 8), Error);
}

TEST_CASE("classify_pattern tolerates a few stray cells") {
  // One N among the 15 cells of the crossing phase.
  const auto t = synthetic(12, [](std::size_t i, std::size_t j) { return i < 6 && !(i == 0 && j == 1); });
  const auto r = classify_pattern(t, 6);
  CHECK(r.pattern == Pattern::CaseI);
  CHECK(r.nonconforming_fraction == doctest::Approx(1.0 / 66.0));
  CHECK(classify_pattern(t, 6, 0.0).pattern == Pattern::Mixed);

  // A partly clear cross block still counts.
  const auto tri = synthetic(8, [](std::size_t i, std::size_t j) { return i < 4 && i + j < 9; });
  CHECK(classify_pattern(tri, 4).pattern == Pattern::CaseI);
}

TEST_CASE("table_boundary") {
  const auto case_i = synthetic(8, [](std::size_t, std::size_t j) { return j <= 4; });
  const Bracket b = table_boundary(case_i, 4, Pattern::CaseI);
  CHECK(b.lower == doctest::Approx(0.3));
  CHECK(b.upper == doctest::Approx(0.5));

  const auto case_ii = synthetic(8, [](std::size_t i, std::size_t j) { return i + j == 7 && i < 4; });
  const Bracket c = table_boundary(case_ii, 4, Pattern::CaseII);
  CHECK(c.lower == doctest::Approx(0.3));
  CHECK(c.upper == doctest::Approx(0.4));

  const auto none = synthetic(4, [](std::size_t, std::size_t) { return false; });
  CHECK_THROWS_AS(table_boundary(none, 2, Pattern::CaseII), Error);
  CHECK_THROWS_AS(table_boundary(none, 2, Pattern::CaseI), Error);
}

TEST_CASE("locate_transition brackets a planted edge") {
  for (double edge : {0.4567, 0.45, 0.123456}) {
    int calls = 0;
    const auto trace = locate_transition(0.0, 1.0, 1e-4, planted(edge, &calls));
    const Bracket& b = trace.bracket;
    CHECK(b.lower < edge);
    CHECK(b.upper > edge);
    CHECK(b.upper - b.lower <= 2e-4 + 1e-12);
    CHECK(b.step == doctest::Approx(1e-4));
    CHECK(trace.levels.size() == 4);
    CHECK(calls == 4);
    for (std::size_t k = 1; k < trace.levels.size(); ++k) {
      CHECK(trace.levels[k].lower >= trace.levels[k - 1].lower - 1e-12);
      CHECK(trace.levels[k].upper <= trace.levels[k - 1].upper + 1e-12);
    }
  }
}

TEST_CASE("locate_transition failures") {
  const PairStatusFn constant = [](std::span<const double> v) { return std::vector<bool>(v.size() - 1, true); };
  try {
    locate_transition(0.0, 1.0, 1e-3, constant);
    FAIL("expected NoTransition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoTransition);
  }
  const PairStatusFn twice = [](std::span<const double> v) {
    std::vector<bool> out;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) out.push_back(v[i + 1] < 0.3 || v[i + 1] > 0.7);
    return out;
  };
  try {
    locate_transition(0.0, 1.0, 1e-3, twice);
    FAIL("expected MultipleTransitions");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MultipleTransitions);
  }
  CHECK_THROWS_AS(locate_transition(1.0, 0.0, 1e-3, constant), Error);
  CHECK_THROWS_AS(locate_transition(0.0, 1.0, 0.0, constant), Error);
}

TEST_CASE("locate_boundary on a small Ising chain") {
  BoundaryRequest req{SweepRequest{ModelSpec::parse("ising"), "g", 6, std::nullopt}, 0.8, 1.1, 1e-3, AlphaGrid{}};
  const auto trace = locate_boundary(req);
  const Bracket& b = trace.bracket;
  CHECK(b.upper - b.lower == doctest::Approx(2e-3));
  // The status really differs across the bracket at the certified step.
  const std::vector<double> pts = {b.lower, b.midpoint(), b.upper};
  const auto s = sweep_values(req.sweep, pts);
  const bool left = !find_interceptions(s.points[0].ground, s.points[1].ground).empty();
  const bool right = !find_interceptions(s.points[1].ground, s.points[2].ground).empty();
  CHECK(left != right);
}

TEST_CASE("scaling_fit recovers planted models") {
  auto planted_points = [](double a, double b, double c, std::vector<int> sizes) {
    std::vector<ScalingPoint> pts;
    for (int n : sizes) pts.push_back({n, a * std::exp(-n / b) + c});
    return pts;
  };
  const auto p1 = planted_points(-9.149, 1.2522, 0.9940, {4, 6, 8, 10});
  const auto f1 = scaling_fit(p1);
  CHECK(f1.a == doctest::Approx(-9.149).epsilon(1e-6));
  CHECK(f1.b == doctest::Approx(1.2522).epsilon(1e-6));
  CHECK(f1.c == doctest::Approx(0.9940).epsilon(1e-6));
  CHECK(f1.rms_residual < 1e-10);
  CHECK_FALSE(f1.degenerate);

  const auto f2 = scaling_fit(planted_points(1.0, 2.0, 0.0, {2, 3, 4, 5, 6, 7, 8, 9, 10}));
  CHECK(std::abs(f2.a - 1.0) < 1e-6);
  CHECK(std::abs(f2.b - 2.0) < 1e-6);
  CHECK(std::abs(f2.c) < 1e-6);
  CHECK(f2(4.0) == doctest::Approx(std::exp(-2.0)));

  const auto f3 = scaling_fit(planted_points(0.0, 1.0, 0.99, {4, 6, 8}));
  CHECK(f3.degenerate);
  CHECK(f3.a == 0.0);
  CHECK(f3.c == doctest::Approx(0.99));

  const std::vector<ScalingPoint> two = {{4, 0.9}, {6, 0.95}};
  CHECK_THROWS_AS(scaling_fit(two), Error);
  const std::vector<ScalingPoint> dup = {{4, 0.9}, {4, 0.95}, {6, 0.97}};
  CHECK_THROWS_AS(scaling_fit(dup), Error);
}

TEST_CASE("gs_vs_excited") {
  const auto model = ModelSpec::parse("ising:g=1.5");
  const auto cmp = gs_vs_excited(model, 10, half_chain(10));
  CHECK(cmp.excited_energy > cmp.ground_energy);
  CHECK(cmp.verdict.direction == Direction::AtoB);
  CHECK(cmp.large_alpha_gap > 0.0);
  try {
    gs_vs_excited(ModelSpec::parse("xy:gamma=sqrt(3)/2,h=1"), 10, half_chain(10));
    FAIL("expected DegenerateGround");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateGround);
  }
}

}  // TEST_SUITE

TEST_SUITE("criticality") {

TEST_CASE("Ising table splits into the two case-one phases") {
  SweepRequest req{ModelSpec::parse("ising"), "g", 10, std::nullopt};
  const auto t = interception_table(sweep(req, {0.5, 1.5, 0.1}));
  const auto r = classify_pattern(t, t.index_of(1.0));
  CHECK(r.pattern == Pattern::CaseI);
  CHECK(r.crossing_phase_first);
}

}  // TEST_SUITE
