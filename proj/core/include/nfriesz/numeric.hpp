#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace nfriesz {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

/// Neumaier-compensated accumulator. Summation order is the call order, so
/// results are reproducible as long as callers add in a fixed order.
template <typename T>
class CompensatedSum {
 public:
  void add(T value) {
    if constexpr (std::is_same_v<T, Complex>) {
      re_.add(value.real());
      im_.add(value.imag());
    } else {
      const T t = sum_ + value;
      if (std::abs(sum_) >= std::abs(value)) {
        comp_ += (sum_ - t) + value;
      } else {
        comp_ += (value - t) + sum_;
      }
      sum_ = t;
    }
  }
  CompensatedSum& operator+=(T value) {
    add(value);
    return *this;
  }
  [[nodiscard]] T value() const {
    if constexpr (std::is_same_v<T, Complex>) {
      return {re_.value(), im_.value()};
    } else {
      return sum_ + comp_;
    }
  }

 private:
  struct Empty {};
  using Part = std::conditional_t<std::is_same_v<T, Complex>, CompensatedSum<double>, Empty>;
  T sum_{};
  T comp_{};
  [[no_unique_address]] Part re_{};
  [[no_unique_address]] Part im_{};
};

/// exp(z) - 1 without cancellation for small |z|.
inline Complex expm1(Complex z) {
  const double em1 = std::expm1(z.real());
  const double sh = std::sin(0.5 * z.imag());
  return {em1 * std::cos(z.imag()) - 2.0 * sh * sh, std::exp(z.real()) * std::sin(z.imag())};
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Number of worker threads, taken from NFRIESZ_THREADS (default 1).
unsigned configured_threads();

/// Runs body(i) for i in [0, n) on `threads` workers. Each index is visited
/// exactly once; callers write into preallocated slots and reduce afterwards.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = configured_threads());

}  // namespace nfriesz
