#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nfriesz/numeric.hpp"

namespace nfriesz {

/// Shape constants of a number field plus whatever is needed to produce a(n).
struct FieldDescriptor {
  enum class Kind { rational, quadratic, table };

  std::string label;
  int r1 = 1;
  int r2 = 0;
  std::int64_t disc = 1;
  int classNumber = 1;
  double regulator = 1.0;
  int rootsOfUnity = 2;
  Kind kind = Kind::rational;
  /// Residue degrees of the primes above p, for table-backed fields.
  std::map<std::int64_t, std::vector<int>> splitting;

  [[nodiscard]] int rho() const { return r1 + 2 * r2; }
  [[nodiscard]] int unitRank() const { return r1 + r2 - 1; }
  /// A = sqrt|disc| / (2^{r2} pi^{rho/2})
  [[nodiscard]] double aConst() const;

  static FieldDescriptor rational();
  /// Q(sqrt d) for squarefree d != 0, 1. The discriminant is derived from d.
  static FieldDescriptor quadratic(std::int64_t d, int classNumber, double regulator, int rootsOfUnity,
                                   std::string label = {});
  /// Q(i), Q(sqrt -3), Q(sqrt 5) with their standard invariants.
  static FieldDescriptor gaussian();
  static FieldDescriptor eisenstein();
  static FieldDescriptor golden();
};

/// Throws PreconditionError if the descriptor is inconsistent.
void validate(const FieldDescriptor& field);

/// Parses the key/value descriptor format:
///   label = Q(i)
///   r1 = 0
///   r2 = 1
///   disc = -4
///   h = 1
///   regulator = 1
///   omega = 4
///   split.5 = 1,1      # optional, residue degrees of primes above 5
/// Fields with degree 2 and no split lines are treated as quadratic.
FieldDescriptor parse_field_descriptor(std::istream& in);
FieldDescriptor load_field_descriptor(const std::string& path);

/// Ideal counts a(1..N); a[0] is unused and zero.
struct CoefficientSeries {
  std::int64_t bound = 0;
  std::vector<std::int64_t> a;

  [[nodiscard]] std::int64_t at(std::int64_t n) const { return a.at(static_cast<std::size_t>(n)); }
};

/// sigma_{K,alpha}(1..N); values[0] unused.
struct SigmaSeries {
  std::int64_t bound = 0;
  Complex alpha;
  std::vector<Complex> values;

  [[nodiscard]] Complex at(std::int64_t n) const { return values.at(static_cast<std::size_t>(n)); }
};

/// Kronecker symbol (D/n) for D = 0, 1 (mod 4) and n >= 1.
int kronecker_symbol(std::int64_t D, std::int64_t n);

/// Fundamental discriminant of Q(sqrt d), d squarefree.
std::int64_t fundamental_discriminant(std::int64_t d);

CoefficientSeries ideal_count_series(const FieldDescriptor& field, std::int64_t N);

/// Number of ideals of Z[i] of norm n, by counting lattice points.
std::int64_t gaussian_norm_count_oracle(std::int64_t n);

SigmaSeries divisor_sigma(const CoefficientSeries& series, Complex alpha, std::int64_t N);

/// max_n |s_a(n) n^{-a/2} - s_{-a}(n) n^{a/2}| / (1 + |s_a(n) n^{-a/2}|)
double sigma_symmetry_residual(const CoefficientSeries& series, Complex alpha, std::int64_t N);

}  // namespace nfriesz
