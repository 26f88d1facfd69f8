#include "nfriesz/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nfriesz/errors.hpp"

namespace nfriesz {
namespace {

// B_{2m} / (2m (2m-1)), m = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,         1.0 / 1260.0,       -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0,    1.0 / 156.0,        -3617.0 / 122400.0,
    43867.0 / 244188.0, -174611.0 / 125400.0,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kLogPi = 1.14472988584940017414;

Complex stirling(Complex z) {
  const Complex zi = 1.0 / z;
  const Complex zi2 = zi * zi;
  Complex corr = 0.0;
  Complex p = zi;
  for (double c : kStirling) {
    const Complex term = c * p;
    corr += term;
    if (std::abs(term) < 1e-18 * std::abs(corr)) break;
    p *= zi2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + corr;
}

// Re z >= 0, z != 0.
Complex log_gamma_right(Complex z) {
  Complex shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

double sin_pi(double v) {
  double r = std::fmod(v, 2.0);
  if (r < 0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  return std::sin(kPi * r);
}

double cos_pi(double v) { return sin_pi(v + 0.5); }

Complex log_gamma(Complex z) {
  if (!is_finite(z)) throw PreconditionError("log_gamma: non-finite argument");
  if (is_nonpositive_integer(z)) {
    throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
  }
  if (z.real() >= 0.0) return log_gamma_right(z);
  if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
  // Reflection. For Im z >= 0 the branch of log sin(pi z) below keeps the
  // result continuous with the principal branch of the upper half-plane.
  const Complex i(0.0, 1.0);
  const Complex e = std::exp(2.0 * kPi * i * z);
  const Complex log_sin = -i * kPi * z + std::log(0.5) + i * (kPi / 2) + std::log(1.0 - e);
  return kLogPi - log_sin - log_gamma_right(1.0 - z);
}

double log_gamma(double x) { return log_gamma(Complex(x, 0.0)).real(); }

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 0.0 && x < 170.0) return 1.0 / std::tgamma(x);
  const double mag = std::exp(-log_gamma(x));
  const bool negative = x < 0.0 && (static_cast<long long>(std::floor(x)) % 2 != 0);
  return negative ? -mag : mag;
}

Complex log_g_factor(Complex s, int r1, int r2) {
  Complex v = 0.0;
  if (r1 != 0) v += static_cast<double>(r1) * (log_gamma((1.0 - s) / 2.0) - log_gamma(s / 2.0));
  if (r2 != 0) v += static_cast<double>(r2) * (log_gamma(1.0 - s) - log_gamma(s));
  return v;
}

Complex g_factor(Complex s, int r1, int r2) { return std::exp(log_g_factor(s, r1, r2)); }

AsymptoticConstants asymptotic_constants(int r1, int r2, double k, Complex alpha) {
  if (r1 < 0 || r2 < 0 || r1 + 2 * r2 == 0) {
    throw PreconditionError("asymptotic_constants: need r1, r2 >= 0 and degree >= 1");
  }
  AsymptoticConstants c;
  c.r1 = r1;
  c.r2 = r2;
  c.rho = r1 + 2 * r2;
  c.unitRank = r1 + r2 - 1;
  c.k = k;
  c.alpha = alpha;
  const double rho = c.rho;
  const double log_half = std::log(0.5);
  const double log_rho = std::log(rho);
  c.mu = -(rho / 2.0) * alpha - static_cast<double>(c.unitRank) - 0.5;
  c.lambda = rho * (1.0 + alpha) + c.mu + 1.0 + k;
  c.nuAux = r1 * log_half - rho;
  c.theta = 2.0 * rho + 2.0 * c.nuAux - 2.0 * rho * log_rho;
  c.thetaStatement = 2.0 * r1 * log_half - 2.0 * rho * log_rho;
  c.bConst = -static_cast<double>(r1) * (alpha + 1.0) * log_half - (c.mu - c.lambda) * log_rho;
  const Complex shrink = std::exp(-c.theta / (2.0 * rho));
  c.aStar = -std::exp(c.bConst) * std::pow(shrink, -k - rho * (1.0 + alpha)) / rho;
  c.besselOrder = k + rho - 2.0 * c.unitRank - 1.0;
  const double re_a = alpha.real();
  c.lemmaThresholdStated = std::max(rho * std::abs(1.0 - re_a) - 0.5, r1 - 1.5);
  c.lemmaThresholdTheorem = std::max(rho * (1.0 + std::abs(re_a)) - 0.5, r1 - 1.5);
  return c;
}

}  // namespace nfriesz
