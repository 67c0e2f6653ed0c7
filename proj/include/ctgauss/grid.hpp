#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace ctgauss {

// Finite partition 0 = t_0 < t_1 < ... < t_n = T of the observation window.
// The max step is recomputed from the times, never trusted from the caller.
class SamplingGrid {
 public:
  // Equal steps T/n. Times are T*(i/n), which makes dyadic grids nest
  // bitwise: every knot of level k reappears in level k+1.
  static SamplingGrid equidistant(double horizon, std::size_t steps);

  // 2^level equal steps; grids of increasing level are nested.
  static SamplingGrid dyadic(double horizon, unsigned level);

  static SamplingGrid from_times(std::vector<double> times);

  const std::vector<double>& times() const noexcept { return times_; }
  double time(std::size_t i) const noexcept { return times_[i]; }
  double horizon() const noexcept { return times_.back(); }
  std::size_t steps() const noexcept { return times_.size() - 1; }
  std::size_t points() const noexcept { return times_.size(); }
  double step(std::size_t i) const noexcept { return times_[i + 1] - times_[i]; }
  double max_step() const noexcept { return max_step_; }
  bool is_equidistant() const noexcept;

 private:
  explicit SamplingGrid(std::vector<double> times);

  std::vector<double> times_;
  double max_step_ = 0.0;
};

using GridPtr = std::shared_ptr<const SamplingGrid>;

GridPtr make_equidistant_grid(double horizon, std::size_t steps);
GridPtr make_dyadic_grid(double horizon, unsigned level);
GridPtr make_grid_from_times(std::vector<double> times);

}  // namespace ctgauss
