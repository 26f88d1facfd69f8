#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "nfriesz/errors.hpp"
#include "nfriesz/fields.hpp"

using namespace nfriesz;

TEST_CASE("kronecker symbol") {
  CHECK(kronecker_symbol(1, 7) == 1);
  CHECK(kronecker_symbol(-4, 3) == -1);
  CHECK(kronecker_symbol(-4, 2) == 0);
  CHECK(kronecker_symbol(-4, 5) == 1);
  CHECK(kronecker_symbol(5, 11) == 1);
  CHECK(kronecker_symbol(5, 2) == -1);
  CHECK(kronecker_symbol(8, 7) == 1);
  CHECK(kronecker_symbol(-3, 2) == -1);
  CHECK_THROWS_AS(kronecker_symbol(3, 5), PreconditionError);
}

TEST_CASE("kronecker symbol is completely multiplicative in n") {
  for (std::int64_t D : {-4, -3, 5, 8, -7, 12, -20}) {
    for (std::int64_t a = 1; a < 40; ++a) {
      for (std::int64_t b = 1; b < 40; ++b) {
        CHECK(kronecker_symbol(D, a * b) == kronecker_symbol(D, a) * kronecker_symbol(D, b));
      }
    }
  }
}

TEST_CASE("fundamental discriminants") {
  CHECK(fundamental_discriminant(-1) == -4);
  CHECK(fundamental_discriminant(-3) == -3);
  CHECK(fundamental_discriminant(5) == 5);
  CHECK(fundamental_discriminant(2) == 8);
  CHECK(fundamental_discriminant(3) == 12);
}

TEST_CASE("field shape constants") {
  const FieldDescriptor q = FieldDescriptor::rational();
  CHECK(q.rho() == 1);
  CHECK(q.unitRank() == 0);
  CHECK(q.aConst() == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-15));
  const FieldDescriptor qi = FieldDescriptor::gaussian();
  CHECK(qi.rho() == 2);
  CHECK(qi.aConst() == doctest::Approx(1.0 / M_PI).epsilon(1e-15));
  CHECK(FieldDescriptor::golden().rho() == 2);
  CHECK(FieldDescriptor::golden().unitRank() == 1);
}

TEST_CASE("ideal counts") {
  const CoefficientSeries q = ideal_count_series(FieldDescriptor::rational(), 5);
  for (int n = 1; n <= 5; ++n) CHECK(q.at(n) == 1);

  const CoefficientSeries qi = ideal_count_series(FieldDescriptor::gaussian(), 10);
  const std::int64_t want[] = {1, 1, 0, 1, 2, 0, 0, 1, 1, 2};
  for (int n = 1; n <= 10; ++n) CHECK(qi.at(n) == want[n - 1]);

  CHECK(ideal_count_series(FieldDescriptor::golden(), 11).at(11) == 2);
  CHECK(ideal_count_series(FieldDescriptor::golden(), 11).at(2) == 0);
  CHECK(ideal_count_series(FieldDescriptor::golden(), 11).at(5) == 1);
}

TEST_CASE("lattice oracle") {
  CHECK(gaussian_norm_count_oracle(1) == 1);
  CHECK(gaussian_norm_count_oracle(5) == 2);
  CHECK(gaussian_norm_count_oracle(3) == 0);
  CHECK(gaussian_norm_count_oracle(25) == 3);
  const CoefficientSeries a = ideal_count_series(FieldDescriptor::gaussian(), 10000);
  std::int64_t mismatches = 0;
  for (std::int64_t n = 1; n <= 10000; ++n) mismatches += a.at(n) != gaussian_norm_count_oracle(n);
  CHECK(mismatches == 0);
}

TEST_CASE("ideal counts are multiplicative") {
  for (const FieldDescriptor& f : {FieldDescriptor::gaussian(), FieldDescriptor::eisenstein(), FieldDescriptor::golden()}) {
    const CoefficientSeries a = ideal_count_series(f, 3000);
    for (std::int64_t m = 1; m <= 50; ++m) {
      for (std::int64_t n = 1; n <= 50; ++n) {
        if (std::gcd(m, n) == 1) CHECK(a.at(m * n) == a.at(m) * a.at(n));
      }
    }
  }
}

TEST_CASE("divisor sigma") {
  const CoefficientSeries q = ideal_count_series(FieldDescriptor::rational(), 12);
  CHECK(divisor_sigma(q, 0.0, 12).at(6) == Complex(4.0));
  CHECK(std::abs(divisor_sigma(q, 1.0, 12).at(6) - 12.0) < 1e-13);
  CHECK(std::abs(divisor_sigma(q, 2.0, 12).at(12) - 210.0) < 1e-12);
  const CoefficientSeries qi = ideal_count_series(FieldDescriptor::gaussian(), 10);
  CHECK(divisor_sigma(qi, 0.0, 10).at(5) == Complex(4.0));
  CHECK_THROWS_AS(divisor_sigma(qi, 0.0, 11), PreconditionError);
}

TEST_CASE("sigma symmetry") {
  const CoefficientSeries q = ideal_count_series(FieldDescriptor::rational(), 1000);
  CHECK(sigma_symmetry_residual(q, 0.0, 100) == 0.0);
  CHECK(sigma_symmetry_residual(q, 0.3, 1000) <= 1e-12);
  const CoefficientSeries qi = ideal_count_series(FieldDescriptor::gaussian(), 1000);
  CHECK(sigma_symmetry_residual(qi, {0.25, 0.1}, 1000) <= 1e-12);
  CHECK(sigma_symmetry_residual(qi, {-1.5, 3.0}, 1000) <= 1e-12);
}

TEST_CASE("descriptor parsing") {
  std::istringstream in(
      "# Gaussian field\n"
      "label = Q(i)\n"
      "r1 = 0\n"
      "r2: 1\n"
      "disc = -4   # trailing comment\n"
      "h = 1\nregulator = 1\nomega = 4\n");
  const FieldDescriptor f = parse_field_descriptor(in);
  CHECK(f.label == "Q(i)");
  CHECK(f.r2 == 1);
  CHECK(f.disc == -4);
  CHECK(f.kind == FieldDescriptor::Kind::quadratic);
  const CoefficientSeries a = ideal_count_series(f, 10);
  CHECK(a.at(5) == 2);

  std::istringstream table(
      "label = t\nr1 = 0\nr2 = 1\ndisc = -4\nh = 1\nregulator = 1\nomega = 4\n"
      "split.2 = 1\nsplit.3 = 2\nsplit.5 = 1,1\nsplit.7 = 2\n");
  const FieldDescriptor t = parse_field_descriptor(table);
  CHECK(t.kind == FieldDescriptor::Kind::table);
  const CoefficientSeries b = ideal_count_series(t, 10);
  const CoefficientSeries ref = ideal_count_series(FieldDescriptor::gaussian(), 10);
  for (int n = 1; n <= 10; ++n) CHECK(b.at(n) == ref.at(n));
  CHECK_THROWS_AS(ideal_count_series(t, 20), PreconditionError);

  std::istringstream bad("r1 = 1\nr2 = 0\ndisc = x1\n");
  CHECK_THROWS_AS(parse_field_descriptor(bad), PreconditionError);
  std::istringstream unknown("r1 = 1\nr2 = 0\ndisc = 1\ncolour = red\n");
  CHECK_THROWS_AS(parse_field_descriptor(unknown), PreconditionError);
  CHECK_THROWS_AS(load_field_descriptor("/nonexistent/field"), PreconditionError);
}

TEST_CASE("validation rejects inconsistent descriptors") {
  FieldDescriptor f = FieldDescriptor::gaussian();
  f.rootsOfUnity = 0;
  CHECK_THROWS_AS(validate(f), PreconditionError);
  f = FieldDescriptor::gaussian();
  f.r1 = 2;
  CHECK_THROWS_AS(validate(f), PreconditionError);
  CHECK_THROWS_AS(FieldDescriptor::quadratic(4, 1, 1.0, 2), PreconditionError);
}
