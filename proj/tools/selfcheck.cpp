#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "nfriesz/errors.hpp"
#include "nfriesz/fields.hpp"
#include "nfriesz/kernel.hpp"
#include "nfriesz/riesz.hpp"
#include "nfriesz/zetas.hpp"
#include "run.hpp"

namespace nfriesz::cli {
namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome lattice() {
  const CoefficientSeries a = ideal_count_series(FieldDescriptor::gaussian(), 10000);
  for (std::int64_t n = 1; n <= 10000; ++n) {
    if (a.at(n) != gaussian_norm_count_oracle(n)) return {false, "first mismatch at n = " + std::to_string(n)};
  }
  return {true, "n <= 10000"};
}

Outcome symmetry() {
  double worst = 0.0;
  for (const FieldDescriptor& f : {FieldDescriptor::rational(), FieldDescriptor::gaussian(), FieldDescriptor::golden()}) {
    const CoefficientSeries a = ideal_count_series(f, 1000);
    for (Complex al : {Complex(0.3), Complex(0.25, 0.5), Complex(-0.7, 2.0)}) {
      worst = std::max(worst, sigma_symmetry_residual(a, al, 1000));
    }
  }
  return {worst <= 1e-12, fmt("max residual %.2e", worst)};
}

Outcome functional_equation() {
  double worst = 0.0;
  for (const FieldDescriptor& f : {FieldDescriptor::rational(), FieldDescriptor::gaussian(), FieldDescriptor::golden()}) {
    for (Complex s : {Complex(0.3, 5.0), Complex(-0.5, 3.0), Complex(0.7, -11.0), Complex(2.5, 1.0)}) {
      worst = std::max(worst, functional_equation_residual(f, s));
    }
  }
  return {worst <= 1e-9, fmt("max residual %.2e", worst)};
}

Outcome residue() {
  const double exact = kPi / 4;
  const double r = dedekind_residue(FieldDescriptor::gaussian());
  const Extrapolation e = residue_by_extrapolation(FieldDescriptor::gaussian());
  const double d1 = std::abs(r - exact), d2 = std::abs(e.value - exact);
  return {d1 <= 1e-12 && d2 <= 1e-6, fmt("|formula - pi/4| = %.1e, |extrapolated - pi/4| = %.1e", d1, d2)};
}

Outcome routes() {
  struct P {
    FieldDescriptor f;
    double nu;
    Complex a;
    double x;
  };
  const std::vector<P> pts = {{FieldDescriptor::rational(), 2.0, 0.3, 5.0},
                              {FieldDescriptor::rational(), 3.0, -0.2, 14.0},
                              {FieldDescriptor::gaussian(), 3.0, 0.25, 5.0},
                              {FieldDescriptor::gaussian(), 4.0, {0.25, 0.1}, 12.0}};
  double worst = 0.0;
  for (const P& p : pts) {
    KernelQuery q;
    q.nu = p.nu;
    q.alpha = p.a;
    q.x = p.x;
    q.shape = p.f;
    const KernelValue d = kernel_direct(q);
    const KernelValue m = kernel_decomposed(q);
    worst = std::max(worst, std::abs(d.value - m.value) / (d.errBound + m.errBound + 1e-8));
    if (p.f.rho() == 1) {
      const Complex c = kernel_rational_closed_form(p.nu, p.a, 2.0 * p.x);
      worst = std::max(worst, std::abs(d.value - c) / (d.errBound + 1e-8));
    }
  }
  return {worst <= 1.0, fmt("max |difference| / allowance %.2f", worst)};
}

Outcome recurrence() {
  double worst = 0.0;
  worst = std::max(worst, recurrence_residual(2.0, 0.3, 4.0, FieldDescriptor::rational()));
  worst = std::max(worst, recurrence_residual(3.5, {0.25, 0.1}, 7.0, FieldDescriptor::gaussian()));
  return {worst <= 1e-6, fmt("max residual %.2e", worst)};
}

Outcome closure_absolute() {
  const RieszReport r = verify_identity(FieldDescriptor::rational(), 0.3, 1.0, 10.5, 2000);
  return {r.pass && r.relativeDiscrepancy <= 1e-5, fmt("relative discrepancy %.2e", r.relativeDiscrepancy)};
}

Outcome closure_classical() {
  const RieszReport r = verify_identity(FieldDescriptor::rational(), 0.0, 0.0, 10.5, 5000);
  const bool ok = r.discrepancy <= 1e-2 && r.summation == Summation::cesaro && r.residues.mergedPole;
  return {ok, fmt("discrepancy %.2e", r.discrepancy)};
}

Outcome contour_oracle() {
  const FieldDescriptor f = FieldDescriptor::rational();
  const ContourOracle o = riesz_via_contour(f, 0.3, 2.0, 30.2, 300.0);
  const Complex lhs = riesz_lhs(f, 0.3, 2.0, 30.2, ideal_count_series(f, 30));
  const double rel = std::abs(o.value - lhs) / std::abs(lhs);
  return {rel <= 1e-4, fmt("relative difference %.2e", rel)};
}

Outcome regimes() {
  const FieldDescriptor qi = FieldDescriptor::gaussian();
  bool ok = classify_regime(qi, 0.25, 3.0) == Regime::absolute && classify_regime(qi, 0.25, 2.0) == Regime::extended &&
            classify_regime(qi, 0.25, 0.9) == Regime::outOfRange;
  try {
    (void)verify_identity(qi, 0.25, 0.9, 10.0, 10);
    ok = false;
  } catch (const PreconditionError&) {
  }
  return {ok, "absolute / extended / refused"};
}

}  // namespace

bool selfcheck(std::ostream& out) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"lattice-oracle", lattice},
      {"sigma-symmetry", symmetry},
      {"functional-equation", functional_equation},
      {"class-number-residue", residue},
      {"kernel-route-agreement", routes},
      {"kernel-recurrence", recurrence},
      {"identity-absolute", closure_absolute},
      {"identity-classical", closure_classical},
      {"contour-oracle", contour_oracle},
      {"regime-classifier", regimes},
  };
  bool all = true;
  for (const auto& [name, check] : checks) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    all = all && o.ok;
    out << (o.ok ? "PASS " : "FAIL ") << name << " (" << o.detail << ")\n";
  }
  return all;
}

}  // namespace nfriesz::cli
