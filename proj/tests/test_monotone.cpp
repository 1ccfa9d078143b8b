#include <doctest.h>

#include <cmath>
#include <sstream>

#include "elocc/error.hpp"
#include "elocc/monotone.hpp"
#include "elocc/schmidt_io.hpp"

using namespace elocc;

namespace {

SchmidtVector sv(std::vector<double> v) { return normalize_descending(v, 1e-12); }

void require_coeffs(const SchmidtVector& v, std::vector<double> expected, double tol = 1e-15) {
  REQUIRE(v.rank() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(v[i] == doctest::Approx(expected[i]).epsilon(tol));
}

}  // namespace

TEST_SUITE("monotone") {

TEST_CASE("normalize_descending sorts, renormalizes and drops noise") {
  require_coeffs(sv({0.1, 0.4, 0.1, 0.4}), {0.4, 0.4, 0.1, 0.1});
  require_coeffs(sv({2.0, 2.0}), {0.5, 0.5});
  require_coeffs(sv({0.5, 0.5, 1e-15}), {0.5, 0.5});
}

TEST_CASE("normalize_descending rejects bad input") {
  CHECK_THROWS_AS(sv({0.5, -0.1}), Error);
  try {
    sv({1e-14, 0.0});
    FAIL("expected AllTruncated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllTruncated);
  }
  try {
    sv({0.3, std::nan("")});
    FAIL("expected NegativeInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeInput);
  }
  // Negative round-off below the truncation threshold is just noise.
  require_coeffs(sv({1.0, -1e-16}), {1.0});
}

TEST_CASE("default vector is the product spectrum") {
  SchmidtVector v;
  CHECK(v.rank() == 1);
  CHECK(v.largest() == 1.0);
}

TEST_CASE("locc_convertible follows the tail sums") {
  const auto p = sv({0.4, 0.4, 0.1, 0.1});
  const auto q = sv({0.5, 0.25, 0.25});
  CHECK_FALSE(locc_convertible(p, q));
  CHECK_FALSE(locc_convertible(q, p));
  CHECK(locc_convertible(sv({0.5, 0.5}), sv({0.8, 0.2})));
  CHECK(locc_convertible(sv({0.5, 0.5}), SchmidtVector{}));
  CHECK_FALSE(locc_convertible(SchmidtVector{}, sv({0.5, 0.5})));
  CHECK(locc_convertible(sv({0.7, 0.3}), sv({0.7, 0.3})));
}

TEST_CASE("renyi_entropy closed forms") {
  const auto flat = sv({0.25, 0.25, 0.25, 0.25});
  for (double a : {0.0, 0.3, 1.0, 2.0, 17.0, kAlphaInfinity}) {
    CHECK(renyi_entropy(flat, a) == doctest::Approx(2.0).epsilon(1e-14));
  }
  CHECK(renyi_entropy(sv({0.5, 0.5}), 1.0) == doctest::Approx(1.0));
  CHECK(renyi_entropy(sv({0.5, 0.3, 0.2}), kAlphaInfinity) == doctest::Approx(1.0));
  CHECK(renyi_entropy(sv({0.5, 0.3, 0.2}), 0.0) == doctest::Approx(std::log2(3.0)));
  CHECK(renyi_entropy(sv({0.5, 0.3, 0.2}), 2.0) == doctest::Approx(-std::log2(0.25 + 0.09 + 0.04)));
  CHECK(renyi_entropy(SchmidtVector{}, 3.0) == 0.0);
  CHECK_THROWS_AS(renyi_entropy(flat, -0.5), Error);
}

TEST_CASE("renyi_entropy is stable at large alpha") {
  const auto p = sv({0.6, 0.3, 0.1});
  const double s = renyi_entropy(p, 5000.0);
  CHECK(std::isfinite(s));
  CHECK(s == doctest::Approx(-std::log2(0.6)).epsilon(1e-3));
}

TEST_CASE("tensor_product reproduces the catalysed spectra") {
  const auto c = sv({0.6, 0.4});
  require_coeffs(tensor_product(sv({0.4, 0.4, 0.1, 0.1}), c),
                 {0.24, 0.24, 0.16, 0.16, 0.06, 0.06, 0.04, 0.04}, 1e-12);
  require_coeffs(tensor_product(sv({0.5, 0.25, 0.25, 0.0}), c), {0.30, 0.20, 0.15, 0.15, 0.10, 0.10}, 1e-12);
  const auto p = sv({0.7, 0.2, 0.1});
  CHECK(tensor_product(p, SchmidtVector{}).approx_equal(p));
}

TEST_CASE("verify_catalyst") {
  const auto p = sv({0.4, 0.4, 0.1, 0.1});
  const auto q = sv({0.5, 0.25, 0.25});
  CHECK(verify_catalyst(p, q, sv({0.6, 0.4})));
  CHECK_FALSE(verify_catalyst(p, q, SchmidtVector{}));
  CHECK(verify_catalyst(q, q, sv({0.9, 0.1})));
}

TEST_CASE("find_interceptions") {
  const auto p = sv({0.5, 0.5});
  CHECK(find_interceptions(p, p).empty());
  CHECK(find_interceptions(p, sv({0.9, 0.1})).empty());

  // Both curves are explicit here, so the crossing can be checked directly.
  const auto a = sv({0.6, 0.1, 0.1, 0.1, 0.1});
  const auto b = sv({0.5, 0.5});
  const auto x = find_interceptions(a, b);
  REQUIRE(x.size() == 1);
  CHECK(std::abs(renyi_entropy(a, x[0]) - renyi_entropy(b, x[0])) < 1e-6);
  CHECK(find_interceptions(b, a) == x);
}

TEST_CASE("AlphaGrid validation and samples") {
  AlphaGrid g;
  const auto s = g.samples();
  CHECK(s.size() == 500);
  CHECK(s.front() == doctest::Approx(0.1));
  CHECK(s.back() == doctest::Approx(50.0));
  CHECK_THROWS_AS((AlphaGrid{0.0, 1.0, 10, 1e-6}.validate()), Error);
  CHECK_THROWS_AS((AlphaGrid{2.0, 1.0, 10, 1e-6}.validate()), Error);
  CHECK_THROWS_AS((AlphaGrid{0.1, 1.0, 1, 1e-6}.validate()), Error);
  CHECK_THROWS_AS((AlphaGrid{0.1, 1.0, 10, 0.0}.validate()), Error);
}

TEST_CASE("elocc_verdict") {
  const auto p = sv({0.4, 0.4, 0.1, 0.1});
  const auto q = sv({0.5, 0.25, 0.25});
  // Majorization fails both ways, yet the Renyi curves never cross.
  CHECK(elocc_verdict(p, q).direction == Direction::AtoB);
  const auto v = elocc_verdict(sv({0.6, 0.1, 0.1, 0.1, 0.1}), sv({0.5, 0.5}));
  CHECK(v.direction == Direction::Incomparable);
  CHECK_FALSE(v.crossings.empty());

  CHECK(elocc_verdict(sv({0.25, 0.25, 0.25, 0.25}), sv({0.5, 0.5})).direction == Direction::AtoB);
  CHECK(elocc_verdict(sv({0.5, 0.5}), sv({0.25, 0.25, 0.25, 0.25})).direction == Direction::BtoA);
  const auto same = elocc_verdict(q, q);
  CHECK(same.direction == Direction::Equivalent);
  CHECK(same.crossings.empty());
  CHECK(to_string(Direction::AtoB) == "AtoB");
}

TEST_CASE("approx_equal pads with zeros") {
  CHECK(sv({0.5, 0.5}).approx_equal(SchmidtVector::from_sorted({0.5, 0.5})));
  CHECK_FALSE(sv({0.5, 0.5}).approx_equal(sv({0.6, 0.4})));
  CHECK_THROWS_AS(SchmidtVector::from_sorted({}), Error);
}

TEST_CASE("Schmidt CSV round trip") {
  std::istringstream in("lambda\n# comment\n0.25\n\n0.5\n0.25\n");
  const auto v = read_schmidt_csv(in);
  require_coeffs(v, {0.5, 0.25, 0.25});
  std::istringstream again(format_schmidt_csv(v));
  CHECK(read_schmidt_csv(again).approx_equal(v, 1e-15));

  std::istringstream bad_header("p\n0.5\n");
  CHECK_THROWS_AS(read_schmidt_csv(bad_header), Error);
  std::istringstream bad_value("lambda\n0.5x\n");
  try {
    read_schmidt_csv(bad_value);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
  CHECK_THROWS_AS(read_schmidt_csv(std::filesystem::path("/nonexistent/x.csv")), Error);
}

}  // TEST_SUITE
