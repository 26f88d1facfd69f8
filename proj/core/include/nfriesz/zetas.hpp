#pragma once

#include <cstdint>

#include "nfriesz/fields.hpp"
#include "nfriesz/numeric.hpp"

namespace nfriesz {

struct ZetaEvaluation {
  Complex s;
  Complex value;
  double errBound = 0.0;  // Euler-Maclaurin remainder plus a rounding allowance
};

struct EulerMaclaurinParams {
  int cutoff = 0;  // 0 selects max(20, ceil(2|Im s|))
  int depth = 12;  // number of Bernoulli correction terms, at most 12
};

/// zeta(s, a) for 0 < a <= 1, s != 1.
ZetaEvaluation hurwitz_zeta(Complex s, double a, EulerMaclaurinParams params = {});

/// zeta(s, a) - 1/(s - 1). Entire in s; used where the pole must be divided out.
ZetaEvaluation hurwitz_zeta_regular(Complex s, double a, EulerMaclaurinParams params = {});

ZetaEvaluation riemann_zeta(Complex s);

/// L(s, chi_D) for a fundamental discriminant D (D = 1 gives zeta).
ZetaEvaluation dirichlet_l(Complex s, std::int64_t D);

/// zeta_K(s). Refuses |s - 1| < 1e-3. Table-backed fields: Euler product,
/// Re s > 1 only.
ZetaEvaluation dedekind_zeta(const FieldDescriptor& field, Complex s);

/// (s - 1) zeta_K(s), finite at s = 1 (rational and quadratic fields).
ZetaEvaluation dedekind_zeta_pole_free(const FieldDescriptor& field, Complex s);

/// 2^{r+1} pi^{r2} R h / (omega sqrt|disc|)
double dedekind_residue(const FieldDescriptor& field);

struct Extrapolation {
  double value = 0.0;
  double errEstimate = 0.0;
};

/// (s - 1) zeta_K(s) at s = 1 + eps, eps = 1e-3, 1e-4, 1e-5, Richardson-extrapolated.
Extrapolation residue_by_extrapolation(const FieldDescriptor& field);

/// Constant term of the Laurent expansion of zeta_K at s = 1, by symmetric
/// differencing of (s - 1) zeta_K(s).
Extrapolation dedekind_laurent_constant(const FieldDescriptor& field);

/// |zeta_K(s) - A^{1-2s} G(s) zeta_K(1-s)| / (1 + |zeta_K(s)|)
double functional_equation_residual(const FieldDescriptor& field, Complex s);

}  // namespace nfriesz
