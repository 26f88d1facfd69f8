#include <doctest.h>

#include <cmath>

#include "nfriesz/errors.hpp"
#include "nfriesz/fields.hpp"
#include "nfriesz/zetas.hpp"

using namespace nfriesz;

namespace {

bool close(Complex got, Complex want, double tol) { return std::abs(got - want) <= tol * std::max(1.0, std::abs(want)); }

const double kZeta2 = M_PI * M_PI / 6;

}  // namespace

TEST_CASE("Hurwitz zeta") {
  CHECK(close(hurwitz_zeta(2.0, 1.0).value, kZeta2, 1e-15));
  CHECK(std::abs(hurwitz_zeta(0.0, 0.5).value) < 1e-15);
  CHECK(close(hurwitz_zeta({0.4, 2.0}, 1.0 / 3).value, {-0.88563047469605146267, 0.722384648511433594}, 1e-14));
  CHECK(close(hurwitz_zeta({2.5, -7.0}, 0.75).value, {-1.0272237374590298462, -1.9790143747507476486}, 1e-14));
  CHECK(close(hurwitz_zeta(-0.7, 0.2).value, 0.035219995280449521392, 1e-14));
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 0.5), PoleError);
  CHECK_THROWS_AS(hurwitz_zeta(2.0, 1.5), PreconditionError);
}

TEST_CASE("regularised Hurwitz zeta is finite at s = 1") {
  // zeta(s, 1) - 1/(s-1) -> Euler's constant
  CHECK(hurwitz_zeta_regular(1.0, 1.0).value.real() == doctest::Approx(0.57721566490153286061).epsilon(1e-14));
  const Complex s(1.3, 0.2);
  CHECK(close(hurwitz_zeta_regular(s, 0.4).value + 1.0 / (s - 1.0), hurwitz_zeta(s, 0.4).value, 1e-14));
}

TEST_CASE("Riemann zeta") {
  CHECK(riemann_zeta(0.0).value.real() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(riemann_zeta(2.0).value.real() == doctest::Approx(kZeta2).epsilon(1e-15));
  CHECK(riemann_zeta(-1.0).value.real() == doctest::Approx(-1.0 / 12).epsilon(5e-13));
  CHECK(std::abs(riemann_zeta(-4.0).value) < 1e-15);
  CHECK(riemann_zeta(1.3).value.real() == doctest::Approx(3.9319492118095437366).epsilon(1e-14));
  CHECK(close(riemann_zeta({0.3, 5.0}).value, {0.67564899811602329843, 0.25414478655467744161}, 1e-14));
  CHECK(close(riemann_zeta({-0.5, 3.0}).value, {0.35291387981928725272, 0.012124954416036982049}, 5e-13));
  CHECK(close(riemann_zeta({-7.5, 2.0}).value, {0.040036789995694321616, 0.01157836610916335271}, 1e-13));
  CHECK(close(riemann_zeta({-7.5, -2.0}).value, {0.040036789995694321616, -0.01157836610916335271}, 1e-13));
  CHECK(close(riemann_zeta({3.0, 150.0}).value, {0.88803791335075516603, -0.0085000422439818845052}, 1e-13));
  CHECK(std::abs(riemann_zeta({0.5, 14.134725141734693790}).value) < 1e-12);
}

TEST_CASE("Dirichlet L-functions") {
  CHECK(dirichlet_l(1.0, -4).value.real() == doctest::Approx(M_PI / 4).epsilon(1e-14));
  CHECK(dirichlet_l(1.0, -3).value.real() == doctest::Approx(M_PI / (3 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(dirichlet_l(1.0, 8).value.real() == doctest::Approx(std::log(1 + std::sqrt(2.0)) / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(dirichlet_l(0.0, 5).value) < 1e-14);
  CHECK(close(dirichlet_l(2.0, 1).value, kZeta2, 1e-15));
  CHECK(close(dirichlet_l({0.5, 3.0}, -4).value, {1.4685105834601206943, 0.19169891968453042018}, 1e-14));
  CHECK(close(dirichlet_l({2.0, 1.0}, 5).value, {0.77012314688621385712, 0.19200387698559823959}, 1e-14));
  CHECK(close(dirichlet_l({-0.5, 3.0}, -4).value, {2.1001140543506613173, 0.8751565169444211067}, 5e-13));
  CHECK(close(dirichlet_l({0.3, 5.0}, 5).value, {2.0109375972326902125, -1.4443056188516011152}, 1e-14));
  CHECK(close(dirichlet_l({-3.5, 2.0}, 5).value, {-2.439706131226548775, -26.435771836399501904}, 1e-13));
  CHECK(close(dirichlet_l({-2.5, 1.0}, -4).value, {-1.384725634225909052, -0.078678522082323810}, 1e-13));
}

TEST_CASE("Dedekind zeta") {
  const FieldDescriptor q = FieldDescriptor::rational();
  const FieldDescriptor qi = FieldDescriptor::gaussian();
  const FieldDescriptor q5 = FieldDescriptor::golden();
  CHECK(close(dedekind_zeta(q, 2.0).value, kZeta2, 1e-15));
  CHECK(std::abs(dedekind_zeta(q5, 0.0).value) < 1e-14);
  CHECK(dedekind_zeta(qi, 0.0).value.real() == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(close(dedekind_zeta(q5, 2.0).value, 1.16167119561863854976, 1e-14));
  CHECK(close(dedekind_zeta(qi, {0.5, 3.0}).value, {0.79745381591358138687, -0.013735320661846248629}, 1e-13));
  CHECK(close(dedekind_zeta(qi, {0.5, 14.0}).value, {0.17290947671237301197, -0.12883976064266855430}, 1e-13));
  CHECK(close(dedekind_zeta(q5, {-1.5, 2.0}).value, {-0.29450668567354885583, 0.28105321887312348553}, 1e-13));
  CHECK(close(dedekind_zeta(qi, {-2.5, 1.0}).value, {-0.032559913790528239387, -0.0038057266135797514111}, 1e-13));
  CHECK_THROWS_AS(dedekind_zeta(qi, 1.0005), PoleError);
}

TEST_CASE("Dedekind zeta agrees with its Dirichlet series") {
  const FieldDescriptor qi = FieldDescriptor::gaussian();
  const std::int64_t N = 100000;
  const CoefficientSeries a = ideal_count_series(qi, N);
  CompensatedSum<double> sum;
  for (std::int64_t n = N; n >= 1; --n) sum.add(static_cast<double>(a.at(n)) / (double(n) * double(n)));
  // sum_{n > N} a(n)/n^2 is about rho_K / N, and below 2 rho_K / N
  const double want = dedekind_zeta(qi, 2.0).value.real();
  const double gap = want - sum.value();
  CHECK(gap > 0.0);
  CHECK(gap < 2 * (M_PI / 4) / N);
  CHECK(want == doctest::Approx(kZeta2 * 0.91596559417721901505).epsilon(1e-14));
}

TEST_CASE("table-backed fields use the Euler product") {
  FieldDescriptor t = FieldDescriptor::gaussian();
  t.kind = FieldDescriptor::Kind::table;
  t.splitting.clear();
  for (std::int64_t p = 2; p < 2000; ++p) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (!prime) continue;
    if (p == 2) {
      t.splitting[p] = {1};
    } else if (p % 4 == 1) {
      t.splitting[p] = {1, 1};
    } else {
      t.splitting[p] = {2};
    }
  }
  const ZetaEvaluation e = dedekind_zeta(t, 3.0);
  const Complex want = dedekind_zeta(FieldDescriptor::gaussian(), 3.0).value;
  CHECK(std::abs(e.value - want) <= e.errBound + 1e-15);
  CHECK(std::abs(e.value - want) < 1e-6);
  CHECK_THROWS_AS(dedekind_zeta(t, 0.5), PreconditionError);
}

TEST_CASE("class number residues") {
  CHECK(dedekind_residue(FieldDescriptor::rational()) == 1.0);
  CHECK(dedekind_residue(FieldDescriptor::gaussian()) == doctest::Approx(M_PI / 4).epsilon(1e-15));
  CHECK(dedekind_residue(FieldDescriptor::golden()) ==
        doctest::Approx(2 * std::log((1 + std::sqrt(5.0)) / 2) / std::sqrt(5.0)).epsilon(1e-15));
  for (const FieldDescriptor& f : {FieldDescriptor::rational(), FieldDescriptor::gaussian(), FieldDescriptor::golden(),
                                   FieldDescriptor::eisenstein()}) {
    CAPTURE(f.label);
    const Extrapolation e = residue_by_extrapolation(f);
    CHECK(std::abs(e.value - dedekind_residue(f)) <= 1e-6);
    CHECK(std::abs(dedekind_zeta_pole_free(f, 1.0).value - dedekind_residue(f)) < 1e-13);
  }
}

TEST_CASE("Laurent constants") {
  CHECK(dedekind_laurent_constant(FieldDescriptor::rational()).value == doctest::Approx(0.57721566490153286).epsilon(1e-9));
  // L(1) gamma + L'(1) for chi_{-4}
  CHECK(dedekind_laurent_constant(FieldDescriptor::gaussian()).value == doctest::Approx(0.64624543976971077109).epsilon(1e-9));
}

TEST_CASE("functional equation on a grid") {
  for (const FieldDescriptor& f : {FieldDescriptor::rational(), FieldDescriptor::gaussian(), FieldDescriptor::golden(),
                                   FieldDescriptor::eisenstein()}) {
    int points = 0;
    for (double re : {-1.5, -0.5, 0.3, 0.5, 0.8}) {
      for (double im : {0.7, 3.0, -9.0, 25.0}) {
        CAPTURE(f.label);
        CAPTURE(re);
        CAPTURE(im);
        CHECK(functional_equation_residual(f, {re, im}) <= 1e-9);
        ++points;
      }
    }
    CHECK(points == 20);
  }
}
