// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "nfriesz/fields.hpp"
#include "nfriesz/kernel.hpp"
#include "nfriesz/riesz.hpp"
#include "nfriesz/zetas.hpp"

using namespace nfriesz;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

void note(Verdict& v, bool ok, const char* fmt, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  if (!v.detail.empty()) v.detail += "; ";
  v.detail += buf;
  v.ok = v.ok && ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const FieldDescriptor kQ = FieldDescriptor::rational();
const FieldDescriptor kQi = FieldDescriptor::gaussian();
const FieldDescriptor kQ5 = FieldDescriptor::golden();
const FieldDescriptor kQ3 = FieldDescriptor::eisenstein();

Verdict classical_closure() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const RieszReport r = verify_identity(kQ, 0.0, 0.0, 10.5, 5000);
  const double dt = seconds_since(t0);
  note(v, r.residues.mergedPole && r.summation == Summation::cesaro, "limit path + Cesaro");
  note(v, r.discrepancy <= 1e-2, "discrepancy %.2e <= 1e-2", r.discrepancy);
  note(v, dt <= 120.0, "%.1f s <= 120 s", dt);
  return v;
}

Verdict absolute_closure() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  const RieszReport a = verify_identity(kQ, 0.3, 1.0, 10.5, 2000);
  double dt = seconds_since(t0);
  note(v, a.relativeDiscrepancy <= 1e-5, "Q: relative %.2e <= 1e-5", a.relativeDiscrepancy);
  note(v, dt <= 300.0, "%.1f s", dt);
  t0 = std::chrono::steady_clock::now();
  const RieszReport b = verify_identity(kQi, 0.25, 2.0, 20.7, 5000);
  dt = seconds_since(t0);
  note(v, b.relativeDiscrepancy <= 1e-3, "Q(i): relative %.2e <= 1e-3", b.relativeDiscrepancy);
  note(v, dt <= 300.0, "%.1f s", dt);
  return v;
}

Verdict contour_oracle() {
  struct P {
    FieldDescriptor f;
    Complex alpha;
    double k, x, T;
  };
  const std::vector<P> pts = {
      {kQ, 0.3, 2.0, 7.3, 400},          {kQi, 0.25, 3.0, 12.4, 400},      {kQ, 0.3, 2.0, 30.2, 300},
      {kQi, 0.25, 2.0, 20.7, 300},       {kQ, {-0.4, 1.0}, 2.0, 50.5, 300}, {kQ5, 0.5, 3.0, 40.5, 300},
      {kQ, 0.0, 2.0, 25.3, 300},         {kQi, {0.2, 0.5}, 3.0, 12.3, 300}, {kQ3, 0.1, 2.5, 17.9, 300},
      {kQ5, {-0.3, 0.2}, 2.0, 9.9, 300},
  };
  Verdict v;
  double worst = 0.0;
  for (const P& p : pts) {
    const ContourOracle o = riesz_via_contour(p.f, p.alpha, p.k, p.x, p.T);
    const Complex lhs = riesz_lhs(p.f, p.alpha, p.k, p.x, ideal_count_series(p.f, static_cast<std::int64_t>(p.x)));
    worst = std::max(worst, std::abs(o.value - lhs) / std::abs(lhs));
  }
  note(v, worst <= 1e-4, "10 points, worst relative %.2e <= 1e-4", worst);
  return v;
}

Verdict route_agreement() {
  struct P {
    FieldDescriptor f;
    double nu;
    Complex alpha;
  };
  const std::vector<P> families = {
      {kQ, 2.0, 0.3},  {kQ, 3.0, -0.2},         {kQ, 3.0, 0.3},         {kQi, 3.0, 0.25},
      {kQi, 4.0, {0.25, 0.1}}, {kQi, 3.5, 0.1},  {kQ5, 3.5, 0.1},        {kQ3, 4.0, {0.25, 0.1}},
      {kQ, 2.5, 0.1},  {kQ5, 4.0, {0.3, -0.4}},
  };
  const double xs[] = {1.0, 5.0, 20.0};
  Verdict v;
  int points = 0, bad = 0, triples = 0;
  double worst = 0.0;
  for (const P& p : families) {
    for (double x : xs) {
      KernelQuery q;
      q.nu = p.nu;
      q.alpha = p.alpha;
      q.x = x;
      q.shape = p.f;
      ++points;
      try {
        const KernelValue d = kernel_direct(q);
        const KernelValue m = kernel_decomposed(q);
        double r = std::abs(d.value - m.value) / (d.errBound + m.errBound + 1e-8);
        const bool closed = p.f.rho() == 1 && p.nu == std::round(p.nu) && p.alpha.imag() == 0.0;
        if (closed) {
          ++triples;
          const Complex c = kernel_rational_closed_form(p.nu, p.alpha, 2.0 * x);
          r = std::max(r, std::abs(d.value - c) / (d.errBound + 1e-8));
          r = std::max(r, std::abs(m.value - c) / (m.errBound + 1e-8));
        }
        worst = std::max(worst, r);
        bad += r > 1.0;
      } catch (const std::exception& e) {
        ++bad;
        note(v, false, (std::string("threw at x = %.1f: ") + e.what()).c_str(), x);
      }
    }
  }
  note(v, points == 30 && bad == 0, "%.0f points (%.0f with closed form), %.0f outside allowance", points, triples, bad);
  note(v, true, "worst difference / allowance %.3f", worst);
  return v;
}

Verdict recurrence() {
  struct P {
    FieldDescriptor f;
    double nu;
    Complex alpha;
    double x;
  };
  std::vector<P> pts;
  for (double x : {0.7, 3.0, 9.0, 25.0}) {
    pts.push_back({kQ, 3.0, 0.3, x});
    pts.push_back({kQ, 3.5, {0.2, 0.3}, x});
    pts.push_back({kQi, 4.0, 0.25, x});
    pts.push_back({kQi, 4.5, {0.1, -0.5}, x});
    pts.push_back({kQ5, 4.0, 0.2, x});
  }
  Verdict v;
  double worst = 0.0;
  for (const P& p : pts) worst = std::max(worst, recurrence_residual(p.nu, p.alpha, p.x, p.f));
  note(v, pts.size() == 20 && worst <= 1e-6, "20 points, worst residual %.2e <= 1e-6", worst);
  return v;
}

Verdict asymptotics() {
  struct P {
    FieldDescriptor f;
    double k;
    Complex alpha;
    double lo, hi;
  };
  const std::vector<P> cases = {{kQi, 2.0, 0.25, 1e4, 1e6}, {kQ, 1.0, 0.3, 1e2, 1e4}, {kQ5, 3.0, 0.2, 1e4, 1e6}};
  Verdict v;
  for (const P& c : cases) {
    const int rho = c.f.rho();
    std::vector<ScanPoint> env, cor;
    for (double x : log_grid(c.lo, c.hi, 600)) {
      KernelQuery q;
      q.nu = 1.0 + c.k;
      q.alpha = c.alpha;
      q.x = std::pow(2.0, rho) * std::sqrt(x);
      q.shape = c.f;
      q.tol = 1e-12;
      const Complex full = kernel_auto(q).value;
      const Complex main = kernel_main_term(q).value;
      // J = 2^{k(rho-1)} x^{(1+k)/2} I(x); the correction bound is stated for I
      const double scale = std::pow(2.0, c.k * (rho - 1)) * std::pow(x, (1.0 + c.k) / 2.0);
      env.push_back({x, std::abs(full)});
      cor.push_back({x, std::abs(full - main) / scale});
    }
    const double re = c.alpha.real();
    const double wantEnv = (2 * c.k * (rho - 1) - 2 * rho * re - 1) / (4.0 * rho);
    const double wantCor = (-c.k - rho * (1 + re) - 1.5) / (2.0 * rho);
    const double se = loglog_slope(bin_maxima(env, 8));
    const double sc = loglog_slope(bin_maxima(cor, 8));
    note(v, std::abs(se - wantEnv) <= 0.1, (c.f.label + ": envelope %.3f vs %.3f").c_str(), se, wantEnv);
    note(v, std::abs(sc - wantCor) <= 0.15, "correction %.3f vs %.3f", sc, wantCor);
  }
  return v;
}

Verdict exponent_scan() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> grid = log_grid(1e2, 1e4, 4000);
  const ScanResult a = error_scan(kQ, 0.0, 1.0, grid);
  note(v, std::abs(a.slope - 0.75) <= 0.15, "Q: slope %.3f vs 0.75", a.slope);
  const ScanResult b = error_scan(kQi, 0.0, 2.0, grid);
  note(v, std::abs(b.slope - 1.875) <= 0.2, "Q(i): slope %.3f vs 1.875", b.slope);
  const double dt = seconds_since(t0);
  note(v, dt <= 600.0, "%.1f s", dt);
  return v;
}

Verdict arithmetic() {
  Verdict v;
  const CoefficientSeries a = ideal_count_series(kQi, 10000);
  int mismatches = 0;
  for (std::int64_t n = 1; n <= 10000; ++n) mismatches += a.at(n) != gaussian_norm_count_oracle(n);
  note(v, mismatches == 0, "lattice mismatches %.0f", mismatches);

  double sym = 0.0;
  for (const FieldDescriptor& f : {kQ, kQi, kQ5}) {
    const CoefficientSeries c = ideal_count_series(f, 1000);
    for (Complex al : {Complex(0.3), Complex(0.25, 0.1), Complex(-1.2, 2.0)}) {
      sym = std::max(sym, sigma_symmetry_residual(c, al, 1000));
    }
  }
  note(v, sym <= 1e-12, "symmetry %.1e", sym);

  double fe = 0.0;
  int samples = 0;
  for (const FieldDescriptor& f : {kQ, kQi, kQ5}) {
    for (double re : {-1.5, -0.5, 0.3, 0.5, 0.8}) {
      for (double im : {0.7, 3.0, -9.0, 25.0}) {
        fe = std::max(fe, functional_equation_residual(f, {re, im}));
        ++samples;
      }
    }
  }
  note(v, samples == 60 && fe <= 1e-9, "functional equation %.1e over 20 points per field", fe);

  const double res = dedekind_residue(kQi);
  const Extrapolation e = residue_by_extrapolation(kQi);
  note(v, std::abs(res - M_PI / 4) <= 1e-12, "residue error %.1e", std::abs(res - M_PI / 4));
  note(v, std::abs(e.value - res) <= 1e-6, "extrapolated %.1e", std::abs(e.value - res));
  return v;
}

}  // namespace

int main() {
  // timing limits are stated for a single thread
  setenv("NFRIESZ_THREADS", "1", 1);
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"classical divisor-problem closure", classical_closure},
      {"absolute-regime closure", absolute_closure},
      {"contour oracle equivalence", contour_oracle},
      {"kernel route agreement", route_agreement},
      {"kernel recurrence", recurrence},
      {"kernel asymptotics", asymptotics},
      {"error exponent scan", exponent_scan},
      {"arithmetic layer", arithmetic},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("threw: ") + e.what();
    }
    std::printf("%s %zu %s: %s [%.1f s]\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += !v.ok;
  }
  return failed == 0 ? 0 : 1;
}
