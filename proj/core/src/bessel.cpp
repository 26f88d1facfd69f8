// Bessel functions of real order and positive real argument.
//
// x >= max(20, nu^2): Hankel asymptotic expansion.
// otherwise: Temme's series (x < 2) or Steed's continued fraction (x >= 2),
// combined with downward recurrence from Lentz's CF1, as in the classic
// Numerical Recipes formulation. Negative orders go through reflection.

#include <array>
#include <cfloat>
#include <cmath>
#include <limits>

#include "nfriesz/errors.hpp"
#include "nfriesz/special.hpp"

namespace nfriesz {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = DBL_MIN / kEps;
constexpr int kMaxIt = 100000;
constexpr double kXMin = 2.0;

// Taylor coefficients of 1/Gamma(z) = sum c_k z^k, k = 1..26.
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
};

struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

// |mu| <= 1/2. gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = average,
// gampl = 1/G(1+mu), gammi = 1/G(1-mu).
TemmeGammas temme_gammas(double mu) {
  double even = 0.0, odd = 0.0;
  for (int k = 26; k >= 1; --k) {
    const double c = kRecipGamma[k - 1];
    if (k % 2 == 0) {
      even = even * mu * mu + c;
    } else {
      odd = odd * mu * mu + c;
    }
  }
  // even = sum_{k even} c_k mu^{k-2}, odd = sum_{k odd} c_k mu^{k-1}
  TemmeGammas g{};
  g.gam1 = -even;
  g.gam2 = odd;
  g.gampl = odd + mu * even;  // sum c_k mu^{k-1}
  g.gammi = odd - mu * even;
  return g;
}

struct JY {
  double j, y;
};

JY hankel_jy(double nu, double x) {
  const double m = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    term *= (m - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic: stop at the smallest term
    last = mag;
    // a_k enters P for even k, Q for odd k, with sign (-1)^{floor(k/2)}
    const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 0) {
      p += signed_term;
    } else {
      q += signed_term;
    }
    if (mag < kEps * 1e-2) break;
  }
  // w = x - nu pi/2 - pi/4; split so the large x is reduced on its own.
  const double cx = std::cos(x), sx = std::sin(x);
  const double phase = nu / 2.0 + 0.25;
  const double cp = cos_pi(phase), sp = sin_pi(phase);
  const double cw = cx * cp + sx * sp;
  const double sw = sx * cp - cx * sp;
  const double amp = std::sqrt(2.0 / (kPi * x));
  return {amp * (p * cw - q * sw), amp * (p * sw + q * cw)};
}

JY steed_jy(double xnu, double x) {
  const int nl = (x < kXMin ? static_cast<int>(xnu + 0.5) : std::max(0, static_cast<int>(xnu - x + 1.5)));
  const double xmu = xnu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / kPi;
  int isign = 1;
  double h = xnu * xi;
  if (h < kFpMin) h = kFpMin;
  double b = xi2 * xnu, d = 0.0, c = h;
  int i = 0;
  for (; i < kMaxIt; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = b - 1.0 / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = c * d;
    h = del * h;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) <= kEps) break;
  }
  if (i >= kMaxIt) throw NonconvergenceError("bessel: continued fraction CF1 did not converge");
  double rjl = isign * kFpMin;
  double rjpl = h * rjl;
  const double rjl1 = rjl;
  double fact = xnu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    const double rjtemp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * rjtemp - rjl;
    rjl = rjtemp;
  }
  if (rjl == 0.0) rjl = kEps;
  const double f = rjpl / rjl;
  double rjmu, rymu, ry1;
  if (x < kXMin) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * xmu;
    const double fct = (std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu));
    d = -std::log(x2);
    double e = xmu * d;
    const double fact2 = (std::abs(e) < kEps ? 1.0 : std::sinh(e) / e);
    const TemmeGammas g = temme_gammas(xmu);
    double ff = 2.0 / kPi * fct * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    e = std::exp(e);
    double p = e / (g.gampl * kPi);
    double q = 1.0 / (e * kPi * g.gammi);
    const double pimu2 = 0.5 * pimu;
    const double fact3 = (std::abs(pimu2) < kEps ? 1.0 : std::sin(pimu2) / pimu2);
    const double r = kPi * pimu2 * fact3 * fact3;
    c = 1.0;
    d = -x2 * x2;
    double sum = ff + r * q;
    double sum1 = p;
    for (i = 1; i < kMaxIt; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
      c *= (d / i);
      p /= (i - xmu);
      q /= (i + xmu);
      const double del = c * (ff + r * q);
      sum += del;
      const double del1 = c * p - i * del;
      sum1 += del1;
      if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
    }
    if (i >= kMaxIt) throw NonconvergenceError("bessel: Temme series did not converge");
    rymu = -sum;
    ry1 = -sum1 * xi2;
    const double rymup = xmu * xi * rymu - ry1;
    rjmu = w / (rymup - f * rymu);
  } else {
    double a = 0.25 - xmu2;
    double p = -0.5 * xi;
    double q = 1.0;
    const double br = 2.0 * x;
    double bi = 2.0;
    double fct = a * xi / (p * p + q * q);
    double cr = br + q * fct;
    double ci = bi + p * fct;
    double den = br * br + bi * bi;
    double dr = br / den;
    double di = -bi / den;
    double dlr = cr * dr - ci * di;
    double dli = cr * di + ci * dr;
    double temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for (i = 1; i < kMaxIt; ++i) {
      a += 2 * i;
      bi += 2.0;
      dr = a * dr + br;
      di = a * di + bi;
      if (std::abs(dr) + std::abs(di) < kFpMin) dr = kFpMin;
      fct = a / (cr * cr + ci * ci);
      cr = br + cr * fct;
      ci = bi - ci * fct;
      if (std::abs(cr) + std::abs(ci) < kFpMin) cr = kFpMin;
      den = dr * dr + di * di;
      dr /= den;
      di /= -den;
      dlr = cr * dr - ci * di;
      dli = cr * di + ci * dr;
      temp = p * dlr - q * dli;
      q = p * dli + q * dlr;
      p = temp;
      if (std::abs(dlr - 1.0) + std::abs(dli) <= kEps) break;
    }
    if (i >= kMaxIt) throw NonconvergenceError("bessel: continued fraction CF2 did not converge");
    const double gam = (p - f) / q;
    rjmu = std::sqrt(w / ((p - f) * gam + q));
    rjmu = std::copysign(rjmu, rjl);
    rymu = rjmu * gam;
    const double rymup = rymu * (p + q / gam);
    ry1 = xmu * xi * rymu - rymup;
  }
  const double scale = rjmu / rjl;
  const double jo = rjl1 * scale;
  for (int k = 1; k <= nl; ++k) {
    const double rytemp = (xmu + k) * xi2 * ry1 - rymu;
    rymu = ry1;
    ry1 = rytemp;
  }
  return {jo, rymu};
}

JY bessel_jy_nonneg(double nu, double x) {
  if (x >= std::max(20.0, nu * nu)) return hankel_jy(nu, x);
  return steed_jy(nu, x);
}

double bessel_k_nonneg(double xnu, double x) {
  const int nl = static_cast<int>(xnu + 0.5);
  const double xmu = xnu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  double rkmu, rk1;
  if (x < kXMin) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * xmu;
    const double fct = (std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu));
    double d = -std::log(x2);
    double e = xmu * d;
    const double fact2 = (std::abs(e) < kEps ? 1.0 : std::sinh(e) / e);
    const TemmeGammas g = temme_gammas(xmu);
    double ff = fct * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i < kMaxIt; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
      c *= (d / i);
      p /= (i - xmu);
      q /= (i + xmu);
      const double del = c * ff;
      sum += del;
      const double del1 = c * (p - i * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i >= kMaxIt) throw NonconvergenceError("bessel_k: Temme series did not converge");
    rkmu = sum;
    rk1 = sum1 * xi2;
  } else {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - xmu2;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 1;
    for (; i < kMaxIt; ++i) {
      a -= 2 * i;
      c = -a * c / (i + 1.0);
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    if (i >= kMaxIt) throw NonconvergenceError("bessel_k: continued fraction did not converge");
    h = a1 * h;
    rkmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
    rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
  }
  for (int i = 1; i <= nl; ++i) {
    const double rktemp = (xmu + i) * xi2 * rk1 + rkmu;
    rkmu = rk1;
    rk1 = rktemp;
  }
  return rkmu;
}

void check_args(double nu, double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) throw PreconditionError(std::string(who) + ": need x > 0");
  if (!(std::abs(nu) <= 50.0)) throw PreconditionError(std::string(who) + ": order outside |nu| <= 50");
}

}  // namespace

double bessel_j(double nu, double x) {
  check_args(nu, x, "bessel_j");
  if (nu >= 0.0) return bessel_jy_nonneg(nu, x).j;
  const JY v = bessel_jy_nonneg(-nu, x);
  return cos_pi(nu) * v.j + sin_pi(nu) * v.y;
}

double bessel_y(double nu, double x) {
  check_args(nu, x, "bessel_y");
  if (nu >= 0.0) return bessel_jy_nonneg(nu, x).y;
  const JY v = bessel_jy_nonneg(-nu, x);
  return -sin_pi(nu) * v.j + cos_pi(nu) * v.y;
}

double bessel_k(double nu, double x) {
  check_args(nu, x, "bessel_k");
  return bessel_k_nonneg(std::abs(nu), x);
}

double i_kernel(double nu, double z) { return -bessel_y(nu, z) - (2.0 / kPi) * bessel_k(nu, z); }

double bessel_j_series(double nu, double x) {
  if (nu < 0.0) throw PreconditionError("bessel_j_series: nu >= 0 required");
  const double q = -0.25 * x * x;
  double term = std::pow(0.5 * x, nu) * rgamma(nu + 1.0);
  double sum = term;
  for (int m = 1; m < 500; ++m) {
    term *= q / (m * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace nfriesz
