#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace braidwalk {

// Raised when a computation would exceed its state or memory budget. No
// partial result is ever returned alongside it.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An algebraic identity that must hold by construction was violated
// (e.g. a flux that is not divisible by 6).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A quadrature grid too coarse to resolve the trigonometric polynomial.
class GridTooSmall : public std::invalid_argument {
 public:
  GridTooSmall(std::size_t have, std::size_t required)
      : std::invalid_argument("theta grid has " + std::to_string(have) +
                              " points, need at least " +
                              std::to_string(required)),
        required_(required) {}
  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

}  // namespace braidwalk
