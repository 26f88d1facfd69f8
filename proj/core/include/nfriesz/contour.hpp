#pragma once

#include <cstddef>
#include <functional>

#include "nfriesz/numeric.hpp"

namespace nfriesz {

/// Vertical line Re s = c that bends into the left half-plane above height
/// `bendHeight`:  s(u) = c + iu - slope * (soft(u) - soft(0)),
/// soft(u) = w [log(1 + e^{(u-H)/w}) + log(1 + e^{(-u-H)/w})].
/// Mellin-Barnes integrands decay superexponentially along the bent arms, so
/// the trapezoidal rule in u converges geometrically.
struct BentContour {
  double c = 1.0;
  double bendHeight = 10.0;
  double bendWidth = 2.0;
  double slope = 1.0;

  [[nodiscard]] Complex point(double u) const;
  /// ds / (2 pi i du)
  [[nodiscard]] Complex weight(double u) const;
};

struct ContourOptions {
  double absTol = 0.0;   // stop when |delta| <= max(absTol, relTol * L1)
  double relTol = 1e-12;
  double h0 = 0.5;
  int maxLevels = 14;
  double cutoff = 1e-20;  // relative size at which the arms are truncated
  double maxSpan = 1e4;
  /// f(conj s) = conj f(s): integrate u >= 0 only, the result is real.
  bool conjugateSymmetric = false;
};

struct ContourResult {
  Complex value;
  double errBound = 0.0;
  double l1 = 0.0;  // integral of |f ds| / 2 pi
  double span = 0.0;
  double finalStep = 0.0;
  int levels = 0;
  std::size_t evaluations = 0;
};

/// (1 / 2 pi i) * integral of f(s) ds along the contour.
ContourResult integrate_contour(const std::function<Complex(Complex)>& f, const BentContour& contour,
                                const ContourOptions& options);

}  // namespace nfriesz
