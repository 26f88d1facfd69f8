#pragma once

#include "nfriesz/numeric.hpp"

namespace nfriesz {

/// Principal branch of log Gamma(z). Throws PoleError at z = 0, -1, -2, ...
Complex log_gamma(Complex z);
double log_gamma(double x);  // log|Gamma(x)| for real x, not a pole

/// 1/Gamma(x) for real x; zero at the poles.
double rgamma(double x);

/// log G(s) with G(s) = Gamma^{r1}((1-s)/2)/Gamma^{r1}(s/2) * Gamma^{r2}(1-s)/Gamma^{r2}(s).
/// The imaginary part is only meaningful modulo 2 pi.
Complex log_g_factor(Complex s, int r1, int r2);
Complex g_factor(Complex s, int r1, int r2);

/// sin(pi v) and cos(pi v), exact at integers and half-integers.
double sin_pi(double v);
double cos_pi(double v);

// Bessel functions of real order (|nu| <= 50) and positive argument.
double bessel_j(double nu, double x);
double bessel_y(double nu, double x);
double bessel_k(double nu, double x);

/// I_nu(z) = -Y_nu(z) - (2/pi) K_nu(z), the kernel of the classical divisor
/// problem (not the modified Bessel function).
double i_kernel(double nu, double z);

/// Plain ascending series for J_nu (nu >= 0). Kept as a cross-check; it is
/// accurate only while x is small compared with nu + 10.
double bessel_j_series(double nu, double x);

/// Constants of the leading asymptotic term of the Mellin-Barnes kernel.
struct AsymptoticConstants {
  int r1 = 0;
  int r2 = 0;
  int rho = 0;
  int unitRank = 0;
  double k = 0;
  Complex alpha;
  Complex mu;
  Complex lambda;
  double nuAux = 0;
  double theta = 0;           // 2 rho + 2 nuAux - 2 rho log rho
  double thetaStatement = 0;  // 2 r1 log(1/2) - 2 rho log rho, must equal theta
  Complex bConst;
  Complex aStar;
  /// Order of the Bessel function in the main term, k + rho - 2r - 1.
  double besselOrder = 0;
  /// k must exceed this for the decomposition as stated:
  /// max{rho|1 - Re a| - 1/2, r1 - 3/2}.
  double lemmaThresholdStated = 0;
  /// Same bound with rho(1 + |Re a|), matching the absolute-convergence range.
  double lemmaThresholdTheorem = 0;
};

AsymptoticConstants asymptotic_constants(int r1, int r2, double k, Complex alpha);

}  // namespace nfriesz
