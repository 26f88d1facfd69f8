#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include "nfriesz/fields.hpp"
#include "nfriesz/numeric.hpp"
#include "nfriesz/special.hpp"

namespace nfriesz {

enum class KernelRoute { direct, decomposed, closedFormQ, asymptotic };

std::string to_string(KernelRoute route);

/// Request for J_nu(alpha, x). Only r1, r2 of `shape` are used. NaN for
/// contourC / truncationT selects the defaults.
struct KernelQuery {
  double nu = 1.0;
  Complex alpha;
  double x = 1.0;
  FieldDescriptor shape = FieldDescriptor::rational();
  double contourC = std::numeric_limits<double>::quiet_NaN();
  double truncationT = std::numeric_limits<double>::quiet_NaN();
  double tol = 1e-10;
};

struct KernelValue {
  Complex value;
  double errBound = 0.0;
  KernelRoute route = KernelRoute::direct;
  double contourC = 0.0;     // abscissa of the numerically integrated piece
  double truncationT = 0.0;  // height where the contour starts to bend
  std::size_t evaluations = 0;
};

/// Admissible abscissae for the defining integral.
struct ContourWindow {
  double lower = 0.0;        // max{1, Re a}
  double upper = 0.0;        // (k + 1 + rho(1 + Re a)) / (2 rho)
  double absoluteUpper = 0;  // largest c with decay exponent <= -1.25
  double rightPole = 0.0;    // first pole of the integrand to the right (inf if none)
  double defaultC = 0.0;     // midpoint, clipped
  bool directAdmissible = false;
};

ContourWindow contour_window(int r1, int r2, double k, Complex alpha);

/// Vertical-line integral, contour bent above the saddle height.
KernelValue kernel_direct(const KernelQuery& q);

/// Closed-form Bessel main term plus quadrature of the faster-decaying
/// remainder F - H on the shifted contour.
KernelValue kernel_decomposed(const KernelQuery& q);

/// Main term alone. errBound is the size of the correction envelope, not a
/// certified bound.
KernelValue kernel_main_term(const KernelQuery& q);

/// Quadrature of the main-term integrand H alone; equals kernel_main_term up
/// to quadrature error. Used to validate the closed form.
KernelValue kernel_main_term_quadrature(const KernelQuery& q);

/// Rational field only: J_nu(alpha, z/2) in terms of J, Y, K of order nu - alpha
/// at argument z. nu must be a positive integer and alpha real. At nu = 1,
/// alpha = 0 this is -Y_1(z) - (2/pi) K_1(z).
Complex kernel_rational_closed_form(double nu, Complex alpha, double z);

/// Picks closed form (rational shape, integer nu, real alpha), then direct,
/// then decomposed.
KernelValue kernel_auto(const KernelQuery& q);

/// |d/dx[x^nu J_nu] - x^nu J_{nu-1}| / (1 + |x^nu J_{nu-1}|), derivative by
/// Richardson-extrapolated central differences.
double recurrence_residual(double nu, Complex alpha, double x, const FieldDescriptor& shape);

}  // namespace nfriesz
