#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctgauss {

// Numerical breakdown that is not a caller error: underflow collapse,
// an integrator leaving its stability envelope, a failed root bracket.
class numerical_fault : public std::runtime_error {
 public:
  explicit numerical_fault(const std::string& what) : std::runtime_error(what) {}
};

// A drift functional returned a non-finite value during path simulation.
class simulation_fault : public numerical_fault {
 public:
  simulation_fault(const std::string& what, std::size_t step)
      : numerical_fault(what + " at step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Riccati stepper: posterior variance left its invariant band.
class step_size_fault : public numerical_fault {
 public:
  explicit step_size_fault(const std::string& what) : numerical_fault(what) {}
};

// Requested closed-form sampling for a channel outside the solvable class.
class not_exactly_solvable : public std::invalid_argument {
 public:
  explicit not_exactly_solvable(const std::string& what) : std::invalid_argument(what) {}
};

// Bad command line / config input; maps to exit code 1 at the CLI layer.
class usage_error : public std::invalid_argument {
 public:
  explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ctgauss
