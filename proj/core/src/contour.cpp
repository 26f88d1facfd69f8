#include "nfriesz/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nfriesz/errors.hpp"

namespace nfriesz {
namespace {

double softplus(double z) { return z > 30.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }
double logistic(double z) { return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

double soft(const BentContour& k, double u) {
  const double w = k.bendWidth;
  return w * (softplus((u - k.bendHeight) / w) + softplus((-u - k.bendHeight) / w));
}

}  // namespace

Complex BentContour::point(double u) const {
  return {c - slope * (soft(*this, u) - soft(*this, 0.0)), u};
}

Complex BentContour::weight(double u) const {
  const double d = logistic((u - bendHeight) / bendWidth) - logistic((-u - bendHeight) / bendWidth);
  return Complex(1.0, slope * d) / (2.0 * kPi);
}

ContourResult integrate_contour(const std::function<Complex(Complex)>& f, const BentContour& contour,
                                const ContourOptions& opt) {
  ContourResult out;
  auto g = [&](double u) {
    ++out.evaluations;
    Complex v = f(contour.point(u)) * contour.weight(u);
    // the imaginary parts of u and -u cancel exactly
    if (opt.conjugateSymmetric) v = Complex(v.real(), 0.0);
    if (!is_finite(v)) {
      throw NonconvergenceError("contour integrand is not finite at Im s = " + std::to_string(u));
    }
    return v;
  };

  // Level 0: walk outward until the arms are negligible.
  const double h0 = opt.h0;
  std::vector<Complex> pos, neg;
  double peak = 0.0;
  auto walk = [&](std::vector<Complex>& vals, double dir) {
    int quiet = 0;
    for (int j = 1;; ++j) {
      const double u = dir * j * h0;
      const Complex v = g(u);
      vals.push_back(v);
      peak = std::max(peak, std::abs(v));
      if (std::abs(u) > contour.bendHeight + 2.0 * contour.bendWidth && std::abs(v) <= opt.cutoff * peak) {
        if (++quiet >= 4) return;
      } else {
        quiet = 0;
      }
      if (std::abs(u) > opt.maxSpan) throw NonconvergenceError("contour integrand does not decay on the arms");
    }
  };
  const Complex g0 = g(0.0);
  peak = std::abs(g0);
  walk(pos, 1.0);
  if (!opt.conjugateSymmetric) walk(neg, -1.0);
  const double upos = h0 * static_cast<double>(pos.size());
  const double uneg = opt.conjugateSymmetric ? upos : h0 * static_cast<double>(neg.size());
  out.span = upos + uneg;

  const double symWeight = opt.conjugateSymmetric ? 2.0 : 1.0;
  CompensatedSum<Complex> s0;
  double a0 = std::abs(g0);
  s0.add(g0);
  for (const Complex& v : pos) {
    s0.add(symWeight * v);
    a0 += symWeight * std::abs(v);
  }
  for (const Complex& v : neg) {
    s0.add(v);
    a0 += std::abs(v);
  }
  Complex current = h0 * s0.value();
  double l1 = h0 * a0;
  double h = h0;
  double lastDelta = std::numeric_limits<double>::infinity();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon();

  for (int level = 1; level <= opt.maxLevels; ++level) {
    const double hn = h / 2.0;
    CompensatedSum<Complex> mid;
    double amid = 0.0;
    const auto nPos = static_cast<long>(std::llround(upos / h));
    for (long j = 0; j < nPos; ++j) {
      const Complex v = g((j + 0.5) * h);
      mid.add(symWeight * v);
      amid += symWeight * std::abs(v);
    }
    if (!opt.conjugateSymmetric) {
      const auto nNeg = static_cast<long>(std::llround(uneg / h));
      for (long j = 0; j < nNeg; ++j) {
        const Complex v = g(-(j + 0.5) * h);
        mid.add(v);
        amid += std::abs(v);
      }
    }
    const Complex next = 0.5 * current + hn * mid.value();
    l1 = 0.5 * l1 + hn * amid;
    lastDelta = std::abs(next - current);
    current = next;
    h = hn;
    out.levels = level;
    const double target = std::max(opt.absTol, opt.relTol * l1);
    if (level >= 2 && lastDelta <= std::max(target, floor * l1)) break;
    if (level == opt.maxLevels) {
      throw NonconvergenceError("contour quadrature did not converge (delta " + std::to_string(lastDelta) +
                                ", L1 " + std::to_string(l1) + ")");
    }
  }
  out.value = opt.conjugateSymmetric ? Complex(current.real(), 0.0) : current;
  out.l1 = l1;
  out.finalStep = h;
  // arms: at most `cutoff * peak` per unit length beyond the cut, decaying fast
  out.errBound = lastDelta + floor * l1 + opt.cutoff * peak * 4.0 * h0;
  return out;
}

}  // namespace nfriesz
