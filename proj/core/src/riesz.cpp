#include "nfriesz/riesz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "nfriesz/errors.hpp"
#include "nfriesz/kernel.hpp"
#include "nfriesz/special.hpp"
#include "nfriesz/zetas.hpp"

namespace nfriesz {
namespace {

constexpr double kIntegerSnap = 1e-9;

Complex cpow(double x, Complex e) { return std::exp(e * std::log(x)); }

void require_continuable(const FieldDescriptor& field, const char* who) {
  if (field.kind == FieldDescriptor::Kind::table) {
    throw PreconditionError(std::string(who) + ": needs zeta_K beyond Re s > 1, unavailable for table-backed fields");
  }
}

void refuse_near_poles(Complex alpha) {
  for (int m = 0; m <= std::max(1, static_cast<int>(std::ceil(alpha.real())) + 1); ++m) {
    if (std::abs(alpha - static_cast<double>(m)) < 1e-3) {
      throw PoleError("residue_terms: alpha within 1e-3 of " + std::to_string(m) +
                      (m == 0 ? "; use residue_terms_limit" : " (pole of a residue factor)"));
    }
  }
}

Complex zeta_k(const FieldDescriptor& f, Complex s) { return dedekind_zeta(f, s).value; }

// zeta_K(1 + e) via the pole-free product, valid for small |e|.
Complex zeta_k_near_one(const FieldDescriptor& f, Complex e) {
  return dedekind_zeta_pole_free(f, 1.0 + e).value / e;
}

// Index after which the phase 2 (y_n e^{-Theta})^{1/(2 rho)} starts a new
// period, searching downward from n.
std::int64_t period_aligned(std::int64_t n, double scale, double expo) {
  auto period = [&](std::int64_t m) {
    return std::floor(2.0 * std::exp(expo * std::log(scale * static_cast<double>(m))) / (2.0 * kPi));
  };
  for (std::int64_t m = n; m >= 2; --m) {
    if (period(m) > period(m - 1)) return m;
  }
  return n;
}

}  // namespace

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::absolute:
      return "absolute";
    case Regime::extended:
      return "extended";
    case Regime::outOfRange:
      return "outOfRange";
  }
  return "unknown";
}

std::string to_string(Summation method) { return method == Summation::cesaro ? "cesaro" : "partialSums"; }

Regime classify_regime(const FieldDescriptor& field, Complex alpha, double k) {
  const double base = field.rho() * (1.0 + std::abs(alpha.real()));
  if (k > base - 0.5) return Regime::absolute;
  if (k > base - 1.5) return Regime::extended;
  return Regime::outOfRange;
}

double predicted_error_exponent(const FieldDescriptor& field, Complex alpha, double k) {
  const double rho = field.rho();
  return ((2.0 * rho - 1.0) * k + rho * (1.0 - alpha.real()) - 0.5) / (2.0 * rho);
}

Complex riesz_lhs_from_sigma(const SigmaSeries& sig, double k, double x) {
  if (k < 0.0) throw PreconditionError("riesz_lhs: k must be nonnegative");
  if (x < 1.0) return 0.0;
  const double rx = std::round(x);
  const bool integral = std::abs(x - rx) < kIntegerSnap;
  const auto top = static_cast<std::int64_t>(integral ? rx : std::floor(x));
  if (top > sig.bound) throw PreconditionError("riesz_lhs: coefficient table too small for x");
  CompensatedSum<Complex> sum;
  for (std::int64_t n = 1; n <= top; ++n) {
    double w;
    if (integral && n == top) {
      w = (k == 0.0) ? 0.5 : 0.0;
    } else {
      w = (k == 0.0) ? 1.0 : std::pow(x - static_cast<double>(n), k);
    }
    if (w != 0.0) sum.add(w * sig.at(n));
  }
  return sum.value() * rgamma(k + 1.0);
}

Complex riesz_lhs(const FieldDescriptor& field, Complex alpha, double k, double x, const CoefficientSeries& coeffs) {
  (void)field;
  if (x < 1.0) return 0.0;
  const auto top = static_cast<std::int64_t>(std::floor(x + kIntegerSnap));
  if (top > coeffs.bound) throw PreconditionError("riesz_lhs: coefficient table too small for x");
  return riesz_lhs_from_sigma(divisor_sigma(coeffs, -alpha, top), k, x);
}

ResidueTerms residue_terms(const FieldDescriptor& field, Complex alpha, double k, double x) {
  require_continuable(field, "residue_terms");
  refuse_near_poles(alpha);
  return ResidueModel(field, alpha, k).at(x);
}

ResidueTerms residue_terms_limit(const FieldDescriptor& field, double k, double x) {
  require_continuable(field, "residue_terms_limit");
  return ResidueModel(field, 0.0, k).at(x);
}

ResidueModel::ResidueModel(const FieldDescriptor& field, Complex alpha, double k) {
  require_continuable(field, "ResidueModel");
  if (!(k >= 0.0 && std::isfinite(k))) throw PreconditionError("ResidueModel: k must be nonnegative");
  const double rhoK = dedekind_residue(field);
  const Complex z0 = zeta_k(field, 0.0);
  const double g1 = rgamma(k + 1.0);
  const double g2 = rgamma(k + 2.0);
  if (alpha == Complex(0.0, 0.0)) {
    merged_ = true;
    terms_.push_back({0, z0 * z0 * g1, k});
    // S(a) = rhoK [zeta_K(1+a) x^{k+1}/G(k+2) + G(1-a) zeta_K(1-a) x^{k+1-a}/G(2+k-a)]
    // limit = (100 A(1e-4) - A(1e-3)) / 99, A(e) = (S(e) + S(-e)) / 2
    const std::array<double, 2> eps = {1e-3, 1e-4};
    const std::array<double, 2> weight = {-1.0 / 99.0, 100.0 / 99.0};
    for (std::size_t i = 0; i < 2; ++i) {
      for (double sgn : {1.0, -1.0}) {
        const double a = sgn * eps[i];
        const double w = 0.5 * weight[i];
        terms_.push_back({1, w * rhoK * zeta_k_near_one(field, a) * g2, k + 1.0});
        const Complex c2 = rhoK * std::exp(log_gamma(Complex(1.0 - a))) * zeta_k_near_one(field, -a) *
                           rgamma(2.0 + k - a);
        terms_.push_back({1, w * c2, k + 1.0 - a});
      }
    }
    return;
  }
  refuse_near_poles(alpha);
  terms_.push_back({0, z0 * zeta_k(field, alpha) * g1, k});
  terms_.push_back({1, rhoK * zeta_k(field, 1.0 + alpha) * g2, k + 1.0});
  const Complex lg = log_gamma(1.0 - alpha) - log_gamma(2.0 + k - alpha);
  terms_.push_back({2, rhoK * std::exp(lg) * zeta_k(field, 1.0 - alpha), k + 1.0 - alpha});
}

ResidueTerms ResidueModel::at(double x) const {
  if (!(x > 0.0)) throw PreconditionError("ResidueModel: x must be positive");
  std::array<CompensatedSum<Complex>, 3> groups;
  for (const Term& t : terms_) groups[static_cast<std::size_t>(t.group)].add(t.coef * cpow(x, t.power));
  ResidueTerms r;
  r.R0 = groups[0].value();
  r.R1 = groups[1].value();
  r.R1MinusAlpha = groups[2].value();
  r.mergedPole = merged_;
  return r;
}

RhsSeries riesz_rhs_series(const FieldDescriptor& field, Complex alpha, double k, double x, std::int64_t nTerms) {
  const Regime regime = classify_regime(field, alpha, k);
  if (regime == Regime::outOfRange) {
    throw PreconditionError("riesz_rhs_series: k = " + std::to_string(k) + " is below rho(1+|Re a|) - 3/2");
  }
  if (nTerms < 1) throw PreconditionError("riesz_rhs_series: nTerms must be positive");
  if (!(x > 0.0)) throw PreconditionError("riesz_rhs_series: x must be positive");
  const int rho = field.rho();
  const double A = field.aConst();
  const double A4 = std::pow(A, 4);
  const CoefficientSeries coeffs = ideal_count_series(field, nTerms);
  const SigmaSeries sig = divisor_sigma(coeffs, alpha, nTerms);
  // 2^{k(1-rho)} / A^{2(1+a)}
  const Complex outer = std::exp(k * (1.0 - rho) * std::log(2.0) - 2.0 * (1.0 + alpha) * std::log(A));

  std::vector<Complex> terms(static_cast<std::size_t>(nTerms) + 1, 0.0);
  std::vector<double> errs(static_cast<std::size_t>(nTerms) + 1, 0.0);
  parallel_for(static_cast<std::size_t>(nTerms), [&](std::size_t i) {
    const auto n = static_cast<std::int64_t>(i) + 1;
    const Complex s = sig.at(n);
    if (s == Complex(0.0, 0.0)) return;
    const double y = static_cast<double>(n) * x / A4;
    const Complex weight = outer * s * std::pow(A4 * x / static_cast<double>(n), 0.5 * (1.0 + k));
    KernelQuery q;
    q.nu = 1.0 + k;
    q.alpha = alpha;
    q.x = std::pow(2.0, rho) * std::sqrt(y);
    q.shape = field;
    q.tol = 1e-11 / std::max(std::abs(weight), 1e-300);
    const KernelValue v = kernel_auto(q);
    terms[i + 1] = weight * v.value;
    errs[i + 1] = std::abs(weight) * v.errBound;
  });

  RhsSeries out;
  out.nTerms = nTerms;
  CompensatedSum<double> kerr;
  for (double e : errs) kerr.add(e);
  out.kernelErrBound = kerr.value();

  if (regime == Regime::absolute) {
    CompensatedSum<Complex> sum;
    for (std::int64_t n = 1; n <= nTerms; ++n) sum.add(terms[static_cast<std::size_t>(n)]);
    out.partial = sum.value();
    out.termsUsed = nTerms;
    out.summation = Summation::partialSums;
    // |term_n| <= 2 |x^{1+k} A^{-2(1+a)} e^B / rho| pi^{-1/2} sigma_{Re a}(n) (y_n e^{-Theta})^{-beta}
    const AsymptoticConstants ac = asymptotic_constants(field.r1, field.r2, k, alpha);
    const double ra = alpha.real();
    const double beta = (k + rho * (1.0 + ra) + 0.5) / (2.0 * rho);
    const double c = 2.0 * std::pow(x, 1.0 + k) * std::pow(A, -2.0 * (1.0 + ra)) * std::abs(std::exp(ac.bConst)) / rho /
                     std::sqrt(kPi) * std::pow(x * std::exp(-ac.theta) / A4, -beta);
    const SigmaSeries sigRe = divisor_sigma(coeffs, ra, nTerms);
    CompensatedSum<double> head;
    for (std::int64_t n = 1; n <= nTerms; ++n) {
      head.add(sigRe.at(n).real() * std::pow(static_cast<double>(n), -beta));
    }
    const double full = (dedekind_zeta(field, beta).value * dedekind_zeta(field, beta - ra).value).real();
    out.tailBound = c * std::max(0.0, full - head.value());
    out.tailCertified = true;
    return out;
  }

  // Extended regime: first-order Cesaro means of the partial sums, cut where
  // the oscillation of the main term starts a new period.
  const AsymptoticConstants ac = asymptotic_constants(field.r1, field.r2, k, alpha);
  const double scale = x / A4 * std::exp(-ac.theta);
  const double expo = 1.0 / (2.0 * rho);
  auto cesaro = [&](std::int64_t m) {
    CompensatedSum<Complex> partial, means;
    for (std::int64_t n = 1; n <= m; ++n) {
      partial.add(terms[static_cast<std::size_t>(n)]);
      means.add(partial.value());
    }
    return means.value() / static_cast<double>(m);
  };
  const std::int64_t m1 = period_aligned(nTerms, scale, expo);
  const std::int64_t m2 = period_aligned(std::max<std::int64_t>(nTerms / 2, 1), scale, expo);
  const std::int64_t m4 = period_aligned(std::max<std::int64_t>(nTerms / 4, 1), scale, expo);
  out.partial = cesaro(m1);
  out.termsUsed = m1;
  out.summation = Summation::cesaro;
  // Geometric model of the remaining error from three halvings. The ratio is
  // floored at 2^{-1/2}, i.e. no faster than M^{-1/2} is assumed.
  const double d1 = std::abs(out.partial - cesaro(m2));
  const double d2 = std::abs(cesaro(m2) - cesaro(m4));
  const double q = std::clamp(d2 > 0.0 ? d1 / d2 : 0.9, std::sqrt(0.5), 0.9);
  out.tailBound = std::max(d1, d2) * q / (1.0 - q);
  out.tailCertified = false;
  return out;
}

RieszReport verify_identity(const FieldDescriptor& field, Complex alpha, double k, double x, std::int64_t nTerms) {
  RieszReport rep;
  rep.field = field;
  rep.alpha = alpha;
  rep.k = k;
  rep.x = x;
  rep.nTerms = nTerms;
  rep.regime = classify_regime(field, alpha, k);
  if (rep.regime == Regime::outOfRange) {
    throw PreconditionError("verify_identity: k = " + std::to_string(k) + " is outside both convergence ranges");
  }
  if (!(x > 0.0)) throw PreconditionError("verify_identity: x must be positive");
  const auto top = static_cast<std::int64_t>(std::floor(x + kIntegerSnap));
  const CoefficientSeries coeffs = ideal_count_series(field, std::max<std::int64_t>(top, 1));
  rep.lhs = riesz_lhs(field, alpha, k, x, coeffs);
  rep.residues = ResidueModel(field, alpha, k).at(x);
  const RhsSeries rhs = riesz_rhs_series(field, alpha, k, x, nTerms);
  rep.rhsPartial = rhs.partial;
  rep.rhsTailBound = rhs.tailBound;
  rep.tailCertified = rhs.tailCertified;
  rep.kernelErrBound = rhs.kernelErrBound;
  rep.termsUsed = rhs.termsUsed;
  rep.summation = rhs.summation;
  rep.discrepancy = std::abs(rep.lhs - (rep.residues.total() + rep.rhsPartial));
  rep.relativeDiscrepancy = rep.discrepancy / std::max(std::abs(rep.lhs), 1e-300);
  rep.pass = rep.discrepancy <= rep.rhsTailBound + rep.kernelErrBound + 1e-8 * (1.0 + std::abs(rep.lhs));
  return rep;
}

ContourOracle riesz_via_contour(const FieldDescriptor& field, Complex alpha, double k, double x, double T) {
  require_continuable(field, "riesz_via_contour");
  if (!(k > 0.0)) throw PreconditionError("riesz_via_contour: k > 0 needed for a convergent truncation");
  if (!(T > 1.0)) throw PreconditionError("riesz_via_contour: T must exceed 1");
  if (!(x > 0.0)) throw PreconditionError("riesz_via_contour: x must be positive");
  ContourOracle out;
  out.sigma = std::max(1.0, 1.0 + alpha.real()) + 0.5;
  out.T = T;
  const double sigma = out.sigma;
  const double logx = std::log(x);
  const bool symmetric = alpha.imag() == 0.0;
  auto f = [&](double t) {
    const Complex s(sigma, t);
    const Complex g = std::exp(log_gamma(s) - log_gamma(s + k + 1.0) + (s + k) * logx);
    const Complex v = g * zeta_k(field, s) * zeta_k(field, s + alpha) / (2.0 * kPi);
    return symmetric ? Complex(v.real(), 0.0) : v;
  };
  const double lo = symmetric ? 0.0 : -T;
  const double width = T - lo;
  // Romberg on [lo, T]
  int n = static_cast<int>(std::ceil(width / 0.5));
  double h = width / n;
  std::vector<std::vector<Complex>> R;
  std::vector<Complex> vals(static_cast<std::size_t>(n) + 1);
  parallel_for(vals.size(), [&](std::size_t i) { vals[i] = f(lo + h * static_cast<double>(i)); });
  CompensatedSum<Complex> s0;
  double l1 = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double w = (i == 0 || i + 1 == vals.size()) ? 0.5 : 1.0;
    s0.add(w * vals[i]);
    l1 += w * std::abs(vals[i]);
  }
  R.push_back({h * s0.value()});
  l1 *= h;
  double err = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= 12; ++level) {
    std::vector<Complex> mids(static_cast<std::size_t>(n));
    parallel_for(mids.size(), [&](std::size_t i) { mids[i] = f(lo + h * (static_cast<double>(i) + 0.5)); });
    CompensatedSum<Complex> ms;
    for (const Complex& v : mids) ms.add(v);
    std::vector<Complex> row{0.5 * R.back()[0] + 0.5 * h * ms.value()};
    double factor = 4.0;
    for (std::size_t j = 1; j <= static_cast<std::size_t>(level) && j <= 4; ++j) {
      row.push_back(row[j - 1] + (row[j - 1] - R.back()[j - 1]) / (factor - 1.0));
      factor *= 4.0;
    }
    n *= 2;
    h /= 2.0;
    err = std::abs(row.back() - R.back().back());
    R.push_back(row);
    if (level >= 3 && err <= 1e-10 * l1) break;
  }
  const double sym = symmetric ? 2.0 : 1.0;
  out.value = sym * R.back().back();
  out.quadratureErr = sym * err;
  const double zs = dedekind_zeta(field, sigma).value.real() * dedekind_zeta(field, sigma + alpha.real()).value.real();
  out.truncationBound = std::pow(x, sigma + k) * zs * std::pow(T, -k) / (kPi * k);
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw PreconditionError("log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  g.back() = hi;
  return g;
}

double loglog_slope(const std::vector<ScanPoint>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const ScanPoint& p : pts) {
    if (!(p.error > 0.0) || !(p.x > 0.0)) continue;
    const double lx = std::log(p.x), ly = std::log(p.error);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) throw PreconditionError("loglog_slope: fewer than two usable points");
  const double den = m * sxx - sx * sx;
  if (den == 0.0) throw PreconditionError("loglog_slope: degenerate abscissae");
  return (m * sxy - sx * sy) / den;
}

std::vector<ScanPoint> bin_maxima(const std::vector<ScanPoint>& pts, int bins) {
  if (pts.empty() || bins < 1) return {};
  double lo = pts.front().x, hi = pts.front().x;
  for (const ScanPoint& p : pts) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  std::vector<ScanPoint> best(static_cast<std::size_t>(bins), ScanPoint{0.0, -1.0});
  const double span = std::log(hi / lo);
  for (const ScanPoint& p : pts) {
    auto b = static_cast<int>(std::floor(std::log(p.x / lo) / span * bins));
    b = std::clamp(b, 0, bins - 1);
    if (std::abs(p.error) > best[static_cast<std::size_t>(b)].error) best[static_cast<std::size_t>(b)] = {p.x, std::abs(p.error)};
  }
  std::vector<ScanPoint> out;
  for (const ScanPoint& p : best) {
    if (p.error > 0.0) out.push_back(p);
  }
  return out;
}

ScanResult error_scan(const FieldDescriptor& field, Complex alpha, double k, const std::vector<double>& xGrid) {
  if (xGrid.size() < 8) throw PreconditionError("error_scan: need at least 8 grid points");
  const auto [mn, mx] = std::minmax_element(xGrid.begin(), xGrid.end());
  if (!(*mn >= 1.0) || *mx / *mn < 99.999) throw PreconditionError("error_scan: grid must span two decades with x >= 1");
  if (classify_regime(field, alpha, k) == Regime::outOfRange) {
    throw PreconditionError("error_scan: k is outside both convergence ranges");
  }
  const auto top = static_cast<std::int64_t>(std::floor(*mx + kIntegerSnap));
  const CoefficientSeries coeffs = ideal_count_series(field, top);
  const SigmaSeries sig = divisor_sigma(coeffs, -alpha, top);
  const ResidueModel model(field, alpha, k);
  ScanResult out;
  out.points.resize(xGrid.size());
  parallel_for(xGrid.size(), [&](std::size_t i) {
    const double x = xGrid[i];
    out.points[i] = {x, std::abs(riesz_lhs_from_sigma(sig, k, x) - model.at(x).total())};
  });
  const double decades = std::log10(*mx / *mn);
  out.envelope = bin_maxima(out.points, std::max(4, static_cast<int>(std::lround(4.0 * decades))));
  out.slope = loglog_slope(out.envelope);
  out.predicted = predicted_error_exponent(field, alpha, k);
  return out;
}

}  // namespace nfriesz
