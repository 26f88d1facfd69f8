#pragma once

#include <stdexcept>
#include <string>

namespace nfriesz {

/// An input violates an operation's precondition (bad parameters, contour
/// window, missing table data). The CLI maps this to exit status 2.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to reach its target accuracy or the
/// parameter regime has no convergent evaluation route. Exit status 3.
class NonconvergenceError : public std::runtime_error {
 public:
  explicit NonconvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation hit a pole of a gamma or zeta factor.
class PoleError : public PreconditionError {
 public:
  explicit PoleError(const std::string& what) : PreconditionError(what) {}
};

}  // namespace nfriesz
