#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nfriesz/fields.hpp"
#include "nfriesz/numeric.hpp"

namespace nfriesz {

/// absolute: k > rho(1+|Re a|) - 1/2; extended: k > rho(1+|Re a|) - 3/2.
enum class Regime { absolute, extended, outOfRange };
enum class Summation { partialSums, cesaro };

std::string to_string(Regime regime);
std::string to_string(Summation method);

Regime classify_regime(const FieldDescriptor& field, Complex alpha, double k);

/// Predicted error exponent ((2 rho - 1) k + rho (1 - Re a) - 1/2) / (2 rho).
double predicted_error_exponent(const FieldDescriptor& field, Complex alpha, double k);

/// (1/Gamma(k+1)) sum_{n <= x} sigma_{K,-a}(n) (x - n)^k, with the n = x term
/// halved when k = 0 and x is an integer.
Complex riesz_lhs(const FieldDescriptor& field, Complex alpha, double k, double x, const CoefficientSeries& coeffs);

/// Same sum from a precomputed sigma_{K,-a} table.
Complex riesz_lhs_from_sigma(const SigmaSeries& sigmaMinusAlpha, double k, double x);

struct ResidueTerms {
  Complex R0;
  Complex R1;
  Complex R1MinusAlpha;
  /// a = 0: R1 and R1MinusAlpha merge into a double pole; R1 then holds the
  /// limit of their sum and R1MinusAlpha is zero.
  bool mergedPole = false;

  [[nodiscard]] Complex total() const { return R0 + R1 + R1MinusAlpha; }
};

/// Residues at s = 0, 1, 1 - a. Refuses a within 1e-3 of 0, 1, 2, ...
ResidueTerms residue_terms(const FieldDescriptor& field, Complex alpha, double k, double x);

/// a -> 0 limit by symmetric evaluation at a = +-eps, eps in {1e-3, 1e-4},
/// Richardson-extrapolated in eps^2.
ResidueTerms residue_terms_limit(const FieldDescriptor& field, double k, double x);

/// Residue block as a fixed linear combination of powers of x, built once and
/// evaluated cheaply on many x.
class ResidueModel {
 public:
  /// a == 0 exactly selects the limit path.
  ResidueModel(const FieldDescriptor& field, Complex alpha, double k);
  [[nodiscard]] ResidueTerms at(double x) const;

 private:
  struct Term {
    int group;  // 0: R0, 1: R1, 2: R1MinusAlpha
    Complex coef;
    Complex power;
  };
  std::vector<Term> terms_;
  bool merged_ = false;
};

struct RhsSeries {
  Complex partial;
  double tailBound = 0.0;
  bool tailCertified = false;
  double kernelErrBound = 0.0;
  std::int64_t nTerms = 0;
  std::int64_t termsUsed = 0;  // after period alignment (Cesaro only)
  Summation summation = Summation::partialSums;
};

/// Kernel series of the identity, truncated at nTerms. Plain partial sums in
/// the absolute regime, period-aligned first-order Cesaro means otherwise.
RhsSeries riesz_rhs_series(const FieldDescriptor& field, Complex alpha, double k, double x, std::int64_t nTerms);

struct RieszReport {
  FieldDescriptor field;
  Complex alpha;
  double k = 0;
  double x = 0;
  Complex lhs;
  ResidueTerms residues;
  Complex rhsPartial;
  double rhsTailBound = 0.0;
  bool tailCertified = false;
  double kernelErrBound = 0.0;
  std::int64_t nTerms = 0;
  std::int64_t termsUsed = 0;
  Summation summation = Summation::partialSums;
  double discrepancy = 0.0;
  double relativeDiscrepancy = 0.0;
  Regime regime = Regime::outOfRange;
  /// discrepancy <= rhsTailBound + kernelErrBound + 1e-8 (1 + |lhs|)
  bool pass = false;
};

RieszReport verify_identity(const FieldDescriptor& field, Complex alpha, double k, double x, std::int64_t nTerms);

struct ContourOracle {
  Complex value;
  double truncationBound = 0.0;
  double quadratureErr = 0.0;
  double sigma = 0.0;
  double T = 0.0;
};

/// (1/2 pi i) int_{(sigma)} Gamma(s) zeta_K(s) zeta_K(s+a) x^{s+k} / Gamma(s+k+1) ds
/// over |Im s| <= T, sigma = max(1, 1 + Re a) + 1/2.
ContourOracle riesz_via_contour(const FieldDescriptor& field, Complex alpha, double k, double x, double T);

struct ScanPoint {
  double x = 0;
  double error = 0;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::vector<ScanPoint> envelope;  // per-bin maxima used in the fit
  double slope = 0.0;
  double predicted = 0.0;
};

/// Fits log E(x) against log x over per-bin maxima of E(x) = |lhs - residues|.
ScanResult error_scan(const FieldDescriptor& field, Complex alpha, double k, const std::vector<double>& xGrid);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

/// Least-squares slope of log|y| against log x, and the helper used by the
/// envelope fits: maxima of |y| over `bins` log-spaced bins.
double loglog_slope(const std::vector<ScanPoint>& pts);
std::vector<ScanPoint> bin_maxima(const std::vector<ScanPoint>& pts, int bins);

}  // namespace nfriesz
