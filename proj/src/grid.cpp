#include "ctgauss/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctgauss {

SamplingGrid::SamplingGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw std::invalid_argument("grid needs at least two time points");
  if (times_.front() != 0.0) throw std::invalid_argument("grid must start at t = 0");
  for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
    const double d = times_[i + 1] - times_[i];
    if (!(d > 0.0)) throw std::invalid_argument("grid times must be strictly increasing");
    if (d > max_step_) max_step_ = d;
  }
  if (!(times_.back() > 0.0) || !std::isfinite(times_.back()))
    throw std::invalid_argument("grid horizon must be positive and finite");
}

SamplingGrid SamplingGrid::equidistant(double horizon, std::size_t steps) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (steps < 1) throw std::invalid_argument("step count must be >= 1");
  std::vector<double> t(steps + 1);
  const double n = static_cast<double>(steps);
  for (std::size_t i = 0; i <= steps; ++i)
    t[i] = horizon * (static_cast<double>(i) / n);
  return SamplingGrid(std::move(t));
}

SamplingGrid SamplingGrid::dyadic(double horizon, unsigned level) {
  if (level > 30) throw std::invalid_argument("dyadic level too deep");
  return equidistant(horizon, std::size_t{1} << level);
}

SamplingGrid SamplingGrid::from_times(std::vector<double> times) {
  return SamplingGrid(std::move(times));
}

bool SamplingGrid::is_equidistant() const noexcept {
  const double ref = horizon() / static_cast<double>(steps());
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * ref;
  for (std::size_t i = 0; i < steps(); ++i)
    if (std::abs(step(i) - ref) > tol) return false;
  return true;
}

GridPtr make_equidistant_grid(double horizon, std::size_t steps) {
  return std::make_shared<const SamplingGrid>(SamplingGrid::equidistant(horizon, steps));
}

GridPtr make_dyadic_grid(double horizon, unsigned level) {
  return std::make_shared<const SamplingGrid>(SamplingGrid::dyadic(horizon, level));
}

GridPtr make_grid_from_times(std::vector<double> times) {
  return std::make_shared<const SamplingGrid>(SamplingGrid::from_times(std::move(times)));
}

}  // namespace ctgauss
