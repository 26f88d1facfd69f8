#include "nfriesz/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "nfriesz/contour.hpp"
#include "nfriesz/errors.hpp"

namespace nfriesz {
namespace {

constexpr double kBendWidth = 2.0;

struct Shape {
  int r1, r2, rho, r;
};

Shape shape_of(const FieldDescriptor& f) { return {f.r1, f.r2, f.rho(), f.unitRank()}; }

void check_query(const KernelQuery& q) {
  if (!(q.x > 0.0) || !std::isfinite(q.x)) throw PreconditionError("kernel: x must be positive and finite");
  if (!std::isfinite(q.nu) || std::abs(q.nu) > 50.0) throw PreconditionError("kernel: need |nu| <= 50");
  if (!is_finite(q.alpha)) throw PreconditionError("kernel: alpha must be finite");
  if (!(q.tol > 0.0)) throw PreconditionError("kernel: tol must be positive");
}

// log F(s), F = Gamma(1-s) G(1-s) G(1-s+a) / Gamma(2+k-s), with repeated
// gamma factors merged.
Complex log_f(Complex s, const Shape& sh, double k, Complex a) {
  Complex v = 0.0;
  if (sh.r2 != 1) v += static_cast<double>(1 - sh.r2) * log_gamma(1.0 - s);
  if (sh.r1 != 0) {
    const double r1 = sh.r1;
    v += r1 * (log_gamma(s / 2.0) - log_gamma((1.0 - s) / 2.0) + log_gamma((s - a) / 2.0) -
               log_gamma((1.0 + a - s) / 2.0));
  }
  if (sh.r2 != 0) {
    const double r2 = sh.r2;
    v += r2 * (log_gamma(s) + log_gamma(s - a) - log_gamma(1.0 + a - s));
  }
  return v - log_gamma(2.0 + k - s);
}

// log H(s) = log Gamma(rho s + mu) - log Gamma(lambda - rho s) + Theta s + B
Complex log_h(Complex s, const AsymptoticConstants& ac) {
  const double rho = ac.rho;
  return log_gamma(rho * s + ac.mu) - log_gamma(ac.lambda - rho * s) + ac.theta * s + ac.bConst;
}

double kernel_y(const Shape& sh, double x) { return x * x / std::pow(4.0, sh.rho); }

// 2^{k(rho-1)} y^{(1+k)/2}
double kernel_prefactor(const Shape& sh, double k, double y) {
  return std::exp(k * (sh.rho - 1) * std::log(2.0) + 0.5 * (1.0 + k) * std::log(y));
}

double default_bend(const AsymptoticConstants& ac, double logy, Complex a) {
  const double tstar = std::exp((logy - ac.theta) / (2.0 * ac.rho)) / ac.rho;
  return std::max({tstar + 3.0 * kBendWidth, std::abs(a.imag()) + 5.0 * kBendWidth, 10.0});
}

ContourOptions options_for(double logy, double bend, int rho, double absTol, Complex a) {
  ContourOptions o;
  o.absTol = absTol;
  o.relTol = 1e-13;
  o.h0 = std::min(0.5, 2.0 / (std::abs(logy) + 2.0 * rho * std::log(2.0 + bend) + 1.0));
  o.conjugateSymmetric = a.imag() == 0.0;
  return o;
}

BentContour make_contour(double c, double bend) {
  BentContour k;
  k.c = c;
  k.bendHeight = bend;
  k.bendWidth = kBendWidth;
  return k;
}

double bend_height(const KernelQuery& q, const AsymptoticConstants& ac, double logy) {
  if (std::isnan(q.truncationT)) return default_bend(ac, logy, q.alpha);
  if (!(q.truncationT >= std::abs(q.alpha.imag()) + 2.0 * kBendWidth)) {
    throw PreconditionError("kernel: truncationT must exceed |Im alpha| + " + std::to_string(2.0 * kBendWidth));
  }
  return q.truncationT;
}

// Closed-form inverse Mellin transform of H: (e^B / rho) X'^{-(k + rho(1+a))} J_ord(2X').
Complex main_term_normalized(const AsymptoticConstants& ac, double logy) {
  const double logxp = (logy - ac.theta) / (2.0 * ac.rho);
  const Complex expo = ac.k + static_cast<double>(ac.rho) * (1.0 + ac.alpha);
  const Complex factor = std::exp(ac.bConst - std::log(static_cast<double>(ac.rho)) - expo * logxp);
  return factor * bessel_j(ac.besselOrder, 2.0 * std::exp(logxp));
}

// Abscissa for the remainder F - H (and for quadrature of H alone).
double correction_abscissa(const KernelQuery& q, const Shape& sh, const AsymptoticConstants& ac,
                           const ContourWindow& w) {
  const double rho = sh.rho;
  const double base = std::isnan(q.contourC) ? w.upper - 1.0 / (8.0 * rho) : q.contourC;
  double c = base + 1.0 / (2.0 * rho);
  const double hpole = (-ac.mu.real()) / rho;  // rightmost pole of Gamma(rho s + mu)
  const double low = std::max({q.alpha.real(), 0.0, hpole}) + 0.1;
  const double high = w.rightPole - 0.25;
  c = std::min(c, high);
  c = std::max(c, low);
  if (c > high) throw PreconditionError("kernel_decomposed: no admissible abscissa for the remainder integral");
  return c;
}

}  // namespace

std::string to_string(KernelRoute route) {
  switch (route) {
    case KernelRoute::direct:
      return "direct";
    case KernelRoute::decomposed:
      return "decomposed";
    case KernelRoute::closedFormQ:
      return "closedFormQ";
    case KernelRoute::asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

ContourWindow contour_window(int r1, int r2, double k, Complex alpha) {
  const double rho = r1 + 2 * r2;
  const double ra = alpha.real();
  ContourWindow w;
  w.lower = std::max(1.0, ra);
  w.upper = (k + 1.0 + rho * (1.0 + ra)) / (2.0 * rho);
  w.absoluteUpper = (k - 0.25 + rho * (1.0 + ra)) / (2.0 * rho);
  w.rightPole = std::numeric_limits<double>::infinity();
  if (r2 == 0) {
    // Gamma(1-s)/Gamma((1-s)/2) has poles at s = 2, 4, ...; zeros of
    // 1/Gamma(2+k-s) cancel those at s >= 2 + k when k is an integer.
    const bool integerK = k == std::floor(k);
    for (int m = 2; m < 200; m += 2) {
      if (integerK && m >= 2.0 + k) break;
      w.rightPole = m;
      break;
    }
  }
  double c = 0.5 * (w.lower + w.upper);
  c = std::min(c, w.absoluteUpper);
  if (std::isfinite(w.rightPole)) c = std::min(c, w.rightPole - 0.25);
  w.defaultC = c;
  w.directAdmissible = c > w.lower && c < w.upper;
  return w;
}

KernelValue kernel_direct(const KernelQuery& q) {
  check_query(q);
  const Shape sh = shape_of(q.shape);
  const double k = q.nu - 1.0;
  const ContourWindow w = contour_window(sh.r1, sh.r2, k, q.alpha);
  double c = w.defaultC;
  if (!std::isnan(q.contourC)) {
    c = q.contourC;
    const double expo = 2.0 * sh.rho * c - (k + 1.0) - sh.rho * (1.0 + q.alpha.real());
    if (!(c > w.lower && c < w.upper && expo < -1.0 && c < w.rightPole)) {
      throw PreconditionError("kernel_direct: contourC = " + std::to_string(c) +
                              " is outside the admissible window; use kernel_decomposed");
    }
  } else if (!w.directAdmissible) {
    throw PreconditionError(
        "kernel_direct: the defining integral is not absolutely convergent for these parameters "
        "(window (" + std::to_string(w.lower) + ", " + std::to_string(std::min(w.upper, w.absoluteUpper)) +
        ")); use kernel_decomposed");
  }
  const AsymptoticConstants ac = asymptotic_constants(sh.r1, sh.r2, k, q.alpha);
  const double y = kernel_y(sh, q.x);
  const double logy = std::log(y);
  const double pref = kernel_prefactor(sh, k, y);
  const double bend = bend_height(q, ac, logy);
  const ContourOptions opt = options_for(logy, bend, sh.rho, q.tol / 4.0 / pref, q.alpha);
  auto f = [&](Complex s) { return std::exp(log_f(s, sh, k, q.alpha) - s * logy); };
  const ContourResult r = integrate_contour(f, make_contour(c, bend), opt);
  KernelValue out;
  out.value = pref * r.value;
  out.errBound = pref * r.errBound;
  out.route = KernelRoute::direct;
  out.contourC = c;
  out.truncationT = bend;
  out.evaluations = r.evaluations;
  return out;
}

KernelValue kernel_decomposed(const KernelQuery& q) {
  check_query(q);
  const Shape sh = shape_of(q.shape);
  const double k = q.nu - 1.0;
  const AsymptoticConstants ac = asymptotic_constants(sh.r1, sh.r2, k, q.alpha);
  if (!(k > ac.lemmaThresholdStated)) {
    throw PreconditionError("kernel_decomposed: need k > max{rho|1 - Re a| - 1/2, r1 - 3/2} = " +
                            std::to_string(ac.lemmaThresholdStated));
  }
  const ContourWindow w = contour_window(sh.r1, sh.r2, k, q.alpha);
  const double c = correction_abscissa(q, sh, ac, w);
  const double y = kernel_y(sh, q.x);
  const double logy = std::log(y);
  const double pref = kernel_prefactor(sh, k, y);
  const double bend = bend_height(q, ac, logy);
  const Complex main = main_term_normalized(ac, logy);
  const ContourOptions opt = options_for(logy, bend, sh.rho, q.tol / 4.0 / pref, q.alpha);
  auto f = [&](Complex s) {
    const Complex lh = log_h(s, ac);
    Complex d = log_f(s, sh, k, q.alpha) - lh;
    d = Complex(d.real(), std::remainder(d.imag(), 2.0 * kPi));
    return std::exp(lh - s * logy) * expm1(d);
  };
  const ContourResult r = integrate_contour(f, make_contour(c, bend), opt);
  KernelValue out;
  out.value = pref * (main + r.value);
  out.errBound = pref * (r.errBound + 16.0 * 2.220446049250313e-16 * std::abs(main));
  out.route = KernelRoute::decomposed;
  out.contourC = c;
  out.truncationT = bend;
  out.evaluations = r.evaluations;
  return out;
}

KernelValue kernel_main_term(const KernelQuery& q) {
  check_query(q);
  const Shape sh = shape_of(q.shape);
  const double k = q.nu - 1.0;
  const AsymptoticConstants ac = asymptotic_constants(sh.r1, sh.r2, k, q.alpha);
  const double y = kernel_y(sh, q.x);
  const double logy = std::log(y);
  const double pref = kernel_prefactor(sh, k, y);
  KernelValue out;
  out.value = pref * main_term_normalized(ac, logy);
  const double corrExpo = (-k - sh.rho * (1.0 + q.alpha.real()) - 1.5) / (2.0 * sh.rho);
  out.errBound = pref * std::abs(std::exp(ac.bConst)) / sh.rho * std::exp(corrExpo * (logy - ac.theta));
  out.route = KernelRoute::asymptotic;
  return out;
}

KernelValue kernel_main_term_quadrature(const KernelQuery& q) {
  check_query(q);
  const Shape sh = shape_of(q.shape);
  const double k = q.nu - 1.0;
  const AsymptoticConstants ac = asymptotic_constants(sh.r1, sh.r2, k, q.alpha);
  const ContourWindow w = contour_window(sh.r1, sh.r2, k, q.alpha);
  const double c = correction_abscissa(q, sh, ac, w);
  const double y = kernel_y(sh, q.x);
  const double logy = std::log(y);
  const double pref = kernel_prefactor(sh, k, y);
  const double bend = bend_height(q, ac, logy);
  const ContourOptions opt = options_for(logy, bend, sh.rho, q.tol / 4.0 / pref, q.alpha);
  auto f = [&](Complex s) { return std::exp(log_h(s, ac) - s * logy); };
  const ContourResult r = integrate_contour(f, make_contour(c, bend), opt);
  KernelValue out;
  out.value = pref * r.value;
  out.errBound = pref * r.errBound;
  out.route = KernelRoute::asymptotic;
  out.contourC = c;
  out.truncationT = bend;
  out.evaluations = r.evaluations;
  return out;
}

Complex kernel_rational_closed_form(double nu, Complex alpha, double z) {
  if (!(z > 0.0)) throw PreconditionError("kernel_rational_closed_form: z must be positive");
  if (alpha.imag() != 0.0) throw PreconditionError("kernel_rational_closed_form: alpha must be real");
  const double n = std::round(nu);
  if (std::abs(nu - n) > 1e-12 || n < 1.0) {
    throw PreconditionError("kernel_rational_closed_form: nu must be a positive integer");
  }
  const int v = static_cast<int>(n);
  const double a = alpha.real();
  const double X = z / 2.0;
  const double ca = cos_pi(a / 2.0), sa = sin_pi(a / 2.0);
  const double order = v - a;
  const double sign = (v % 2 == 0) ? 1.0 : -1.0;
  double osc = -ca * bessel_y(order, z) + sa * bessel_j(order, z) + sign * (2.0 / kPi) * ca * bessel_k(order, z);
  osc *= std::pow(X, -a);
  double poly = 0.0;
  for (int m = 2; m <= v; m += 2) poly += std::tgamma(m - a) / std::tgamma(v - m + 1.0) * std::pow(X, v - 2.0 * m);
  return std::pow(2.0, 1.0 + a - v) * (osc - (2.0 / kPi) * ca * poly);
}

KernelValue kernel_auto(const KernelQuery& q) {
  check_query(q);
  const Shape sh = shape_of(q.shape);
  const bool integerNu = std::abs(q.nu - std::round(q.nu)) <= 1e-12 && q.nu >= 1.0;
  if (sh.r1 == 1 && sh.r2 == 0 && integerNu && q.alpha.imag() == 0.0) {
    KernelValue out;
    out.value = kernel_rational_closed_form(q.nu, q.alpha, 2.0 * q.x);
    out.errBound = 1e-14 * (1.0 + std::abs(out.value));
    out.route = KernelRoute::closedFormQ;
    return out;
  }
  const double k = q.nu - 1.0;
  const ContourWindow w = contour_window(sh.r1, sh.r2, k, q.alpha);
  if (w.directAdmissible || !std::isnan(q.contourC)) return kernel_direct(q);
  const AsymptoticConstants ac = asymptotic_constants(sh.r1, sh.r2, k, q.alpha);
  if (k > ac.lemmaThresholdStated) return kernel_decomposed(q);
  throw NonconvergenceError("kernel: no convergent evaluation route for nu = " + std::to_string(q.nu));
}

double recurrence_residual(double nu, Complex alpha, double x, const FieldDescriptor& shape) {
  KernelQuery q;
  q.alpha = alpha;
  q.shape = shape;
  q.tol = 1e-13;
  auto g = [&](double t) {
    q.nu = nu;
    q.x = t;
    return std::pow(t, nu) * kernel_auto(q).value;
  };
  const double h = std::min(0.02, x / 8.0);
  auto central = [&](double step) { return (g(x + step) - g(x - step)) / (2.0 * step); };
  const Complex d1 = central(h), d2 = central(h / 2.0), d3 = central(h / 4.0);
  const Complex r1 = (4.0 * d2 - d1) / 3.0;
  const Complex r2 = (4.0 * d3 - d2) / 3.0;
  const Complex derivative = (16.0 * r2 - r1) / 15.0;
  q.nu = nu - 1.0;
  q.x = x;
  const Complex target = std::pow(x, nu) * kernel_auto(q).value;
  return std::abs(derivative - target) / (1.0 + std::abs(target));
}

}  // namespace nfriesz
