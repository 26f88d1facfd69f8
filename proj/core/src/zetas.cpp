#include "nfriesz/zetas.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nfriesz/errors.hpp"
#include "nfriesz/special.hpp"

namespace nfriesz {
namespace {

// B_{2j} / (2j)!, j = 1..13
constexpr std::array<double, 13> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.2044840173323941e23,
    8553103.0 / 6.0 / 4.0329146112660565e26,
};

constexpr double kRoundoff = 4.0 * 2.220446049250313e-16;

ZetaEvaluation combine_product(const ZetaEvaluation& a, const ZetaEvaluation& b) {
  ZetaEvaluation out;
  out.s = a.s;
  out.value = a.value * b.value;
  out.errBound = std::abs(a.value) * b.errBound + std::abs(b.value) * a.errBound + a.errBound * b.errBound;
  return out;
}

bool is_integer(Complex s) { return s.imag() == 0.0 && s.real() == std::floor(s.real()); }

// log of sin(pi s / 2) for Im s >= 0, written to avoid overflow at large Im s.
Complex log_sin_half_pi(Complex s) {
  const Complex i(0.0, 1.0);
  return -i * (kPi / 2) * s - std::log(Complex(0.0, -2.0)) + std::log(1.0 - std::exp(i * kPi * s));
}

ZetaEvaluation riemann_reflected(Complex s) {
  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s), Re s < -1
  if (s.imag() < 0.0) {
    ZetaEvaluation v = riemann_reflected(std::conj(s));
    v.s = s;
    v.value = std::conj(v.value);
    return v;
  }
  ZetaEvaluation out;
  out.s = s;
  if (is_integer(s) && std::fmod(s.real(), 2.0) == 0.0) return out;  // trivial zero
  const ZetaEvaluation mirror = hurwitz_zeta(1.0 - s, 1.0);
  const Complex logf = s * std::log(2.0) + (s - 1.0) * std::log(kPi) + log_sin_half_pi(s) + log_gamma(1.0 - s);
  const Complex factor = std::exp(logf);
  out.value = factor * mirror.value;
  out.errBound = std::abs(factor) * mirror.errBound + kRoundoff * 8.0 * std::abs(out.value);
  return out;
}

int parity(std::int64_t D) { return D < 0 ? 1 : 0; }

ZetaEvaluation dirichlet_l_series(Complex s, std::int64_t D) {
  const std::int64_t q = D < 0 ? -D : D;
  CompensatedSum<Complex> sum;
  double err = 0.0;
  for (std::int64_t a = 1; a <= q; ++a) {
    const int chi = kronecker_symbol(D, a);
    if (chi == 0) continue;
    const ZetaEvaluation h = hurwitz_zeta_regular(s, static_cast<double>(a) / static_cast<double>(q));
    sum.add(static_cast<double>(chi) * h.value);
    err += h.errBound;
  }
  const Complex scale = std::exp(-s * std::log(static_cast<double>(q)));
  ZetaEvaluation out;
  out.s = s;
  out.value = scale * sum.value();
  out.errBound = std::abs(scale) * err + kRoundoff * std::abs(out.value);
  return out;
}

ZetaEvaluation dirichlet_l_reflected(Complex s, std::int64_t D) {
  // L(s) = (q/pi)^{1/2 - s} Gamma((1-s+a)/2) / Gamma((s+a)/2) L(1-s)
  const std::int64_t q = D < 0 ? -D : D;
  const double a = parity(D);
  ZetaEvaluation out;
  out.s = s;
  const Complex half = (s + a) / 2.0;
  if (is_integer(half) && half.real() <= 0.0) return out;  // trivial zero
  const ZetaEvaluation mirror = dirichlet_l_series(1.0 - s, D);
  const Complex logf = (0.5 - s) * std::log(static_cast<double>(q) / kPi) + log_gamma((1.0 - s + a) / 2.0) -
                       log_gamma(half);
  const Complex factor = std::exp(logf);
  out.value = factor * mirror.value;
  out.errBound = std::abs(factor) * mirror.errBound + kRoundoff * 8.0 * std::abs(out.value);
  return out;
}

void require_supported(const FieldDescriptor& field, const char* who) {
  if (field.kind == FieldDescriptor::Kind::table) {
    throw PreconditionError(std::string(who) + ": analytic continuation is not available for table-backed fields");
  }
}

ZetaEvaluation table_euler_product(const FieldDescriptor& field, Complex s) {
  if (!(s.real() > 1.0)) {
    throw PreconditionError("dedekind_zeta: table-backed fields only support Re s > 1");
  }
  // Largest P such that the table lists every prime up to P.
  std::int64_t P = 1;
  CompensatedSum<Complex> logsum;
  for (std::int64_t n = 2;; ++n) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (!prime) continue;
    const auto it = field.splitting.find(n);
    if (it == field.splitting.end()) break;
    for (int f : it->second) {
      const Complex z = std::exp(-s * static_cast<double>(f) * std::log(static_cast<double>(n)));
      logsum.add(-std::log(1.0 - z));
    }
    P = n;
  }
  if (P < 2) throw PreconditionError("dedekind_zeta: splitting table does not start at p = 2");
  const double sigma = s.real();
  // sum over p > P of rho * p^-sigma / (1 - p^-sigma), bounded by an integral
  const double tail = field.rho() * (std::pow(static_cast<double>(P), 1.0 - sigma) / (sigma - 1.0)) /
                      (1.0 - std::pow(2.0, -sigma));
  ZetaEvaluation out;
  out.s = s;
  out.value = std::exp(logsum.value());
  out.errBound = std::abs(out.value) * std::expm1(tail);
  return out;
}

}  // namespace

ZetaEvaluation hurwitz_zeta_regular(Complex s, double a, EulerMaclaurinParams params) {
  if (!(a > 0.0 && a <= 1.0)) throw PreconditionError("hurwitz_zeta: need 0 < a <= 1");
  const int depth = std::min(std::max(params.depth, 1), 12);
  const int M = params.cutoff > 0 ? params.cutoff
                                  : std::max(20, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
  if (s.real() + 2 * depth + 1 <= 0.0) {
    throw PreconditionError("hurwitz_zeta: Re s too negative for the Euler-Maclaurin remainder bound");
  }
  CompensatedSum<Complex> sum;
  double magnitude = 0.0;
  for (int n = 0; n < M; ++n) {
    const Complex term = std::exp(-s * std::log(n + a));
    sum.add(term);
    magnitude += std::abs(term);
  }
  const double N = M + a;
  const double L = std::log(N);
  const Complex nms = std::exp(-s * L);
  // (N^{1-s} - 1)/(s - 1) = -L (e^w - 1)/w, w = (1 - s) L
  const Complex w = (1.0 - s) * L;
  const Complex ratio = std::abs(w) < 1e-8 ? 1.0 + w / 2.0 : expm1(w) / w;
  sum.add(-L * ratio);
  sum.add(0.5 * nms);
  magnitude += std::abs(L * ratio) + std::abs(nms);
  Complex poch = s;
  Complex power = nms / N;
  Complex next = 0.0;
  for (int j = 1; j <= depth + 1; ++j) {
    const Complex term = kBernoulliOverFactorial[static_cast<std::size_t>(j - 1)] * poch * power;
    if (j <= depth) {
      sum.add(term);
      magnitude += std::abs(term);
    } else {
      next = term;
    }
    poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    power /= N * N;
  }
  const double sigma = s.real();
  ZetaEvaluation out;
  out.s = s;
  out.value = sum.value();
  out.errBound = std::abs(next) * std::abs(s + (2.0 * depth + 1.0)) / (sigma + 2.0 * depth + 1.0) +
                 kRoundoff * magnitude;
  return out;
}

ZetaEvaluation hurwitz_zeta(Complex s, double a, EulerMaclaurinParams params) {
  if (s == Complex(1.0, 0.0)) throw PoleError("hurwitz_zeta: pole at s = 1");
  ZetaEvaluation out = hurwitz_zeta_regular(s, a, params);
  const Complex pole = 1.0 / (s - 1.0);
  out.value += pole;
  out.errBound += kRoundoff * std::abs(pole);
  return out;
}

ZetaEvaluation riemann_zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) throw PoleError("riemann_zeta: pole at s = 1");
  if (s.real() < -1.0) return riemann_reflected(s);
  return hurwitz_zeta(s, 1.0);
}

ZetaEvaluation dirichlet_l(Complex s, std::int64_t D) {
  if (D == 1) return riemann_zeta(s);
  (void)kronecker_symbol(D, 1);  // validates D mod 4
  if (s.real() < -1.0) return dirichlet_l_reflected(s, D);
  return dirichlet_l_series(s, D);
}

ZetaEvaluation dedekind_zeta(const FieldDescriptor& field, Complex s) {
  if (std::abs(s - 1.0) < 1e-3) {
    throw PoleError("dedekind_zeta: |s - 1| < 1e-3 is refused; use dedekind_residue and the Laurent helper");
  }
  switch (field.kind) {
    case FieldDescriptor::Kind::rational:
      return riemann_zeta(s);
    case FieldDescriptor::Kind::quadratic:
      return combine_product(riemann_zeta(s), dirichlet_l(s, field.disc));
    case FieldDescriptor::Kind::table:
      return table_euler_product(field, s);
  }
  return {};
}

ZetaEvaluation dedekind_zeta_pole_free(const FieldDescriptor& field, Complex s) {
  require_supported(field, "dedekind_zeta_pole_free");
  if (std::abs(s - 1.0) > 0.5) {
    ZetaEvaluation z = dedekind_zeta(field, s);
    z.value *= (s - 1.0);
    z.errBound *= std::abs(s - 1.0);
    return z;
  }
  // (s-1) zeta(s) = (s-1) [zeta(s) - 1/(s-1)] + 1
  ZetaEvaluation reg = hurwitz_zeta_regular(s, 1.0);
  reg.value = (s - 1.0) * reg.value + 1.0;
  reg.errBound = std::abs(s - 1.0) * reg.errBound + kRoundoff;
  if (field.kind == FieldDescriptor::Kind::rational) return reg;
  return combine_product(reg, dirichlet_l(s, field.disc));
}

double dedekind_residue(const FieldDescriptor& field) {
  const double r = field.unitRank();
  return std::pow(2.0, r + 1.0) * std::pow(kPi, field.r2) * field.regulator * field.classNumber /
         (field.rootsOfUnity * std::sqrt(std::abs(static_cast<double>(field.disc))));
}

Extrapolation residue_by_extrapolation(const FieldDescriptor& field) {
  const std::array<double, 3> eps = {1e-3, 1e-4, 1e-5};
  std::array<double, 3> f{};
  for (std::size_t i = 0; i < 3; ++i) f[i] = dedekind_zeta_pole_free(field, 1.0 + eps[i]).value.real();
  const double r1a = (10.0 * f[1] - f[0]) / 9.0;
  const double r1b = (10.0 * f[2] - f[1]) / 9.0;
  const double r2 = (100.0 * r1b - r1a) / 99.0;
  return {r2, std::abs(r2 - r1b)};
}

Extrapolation dedekind_laurent_constant(const FieldDescriptor& field) {
  auto sym = [&](double e) {
    const double up = dedekind_zeta_pole_free(field, 1.0 + e).value.real();
    const double down = dedekind_zeta_pole_free(field, 1.0 - e).value.real();
    return (up - down) / (2.0 * e);
  };
  const double coarse = sym(0.02);
  const double fine = sym(0.01);
  const double extrap = (4.0 * fine - coarse) / 3.0;
  return {extrap, std::abs(extrap - fine)};
}

double functional_equation_residual(const FieldDescriptor& field, Complex s) {
  require_supported(field, "functional_equation_residual");
  const ZetaEvaluation left = dedekind_zeta(field, s);
  const ZetaEvaluation right = dedekind_zeta(field, 1.0 - s);
  const Complex factor = std::exp((1.0 - 2.0 * s) * std::log(field.aConst()) + log_g_factor(s, field.r1, field.r2));
  return std::abs(left.value - factor * right.value) / (1.0 + std::abs(left.value));
}

}  // namespace nfriesz
