#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ctgauss/grid.hpp"
#include "ctgauss/path.hpp"
#include "ctgauss/rng.hpp"

namespace ctgauss {

// Ornstein-Uhlenbeck input: mean reversion a > 0, stationary variance P > 0.
struct OUParams {
  double mean_reversion;
  double power;

  OUParams(double a, double p);
};

// Independent Gaussian increments sqrt(delta_i) * xi_i, draws 0..n-1 of the stream.
std::vector<double> brownian_increments(const SamplingGrid& grid, const RngStream& rng);

// Level k when steps == 2^k.
std::optional<unsigned> dyadic_level(std::size_t steps);

// Prefix-sum a zero-started path out of increments.
SamplePath path_from_increments(GridPtr grid, std::span<const double> increments);

// B(0) = 0, independent N(0, delta_i) increments.
SamplePath brownian_path(const GridPtr& grid, const RngStream& rng);

// One Brownian sample omega realized on every dyadic grid up to max_level.
//
// Built coarse-to-fine by bridge refinement: the endpoint first, then each
// level's midpoints via  B(mid) | B(l), B(r)  ~  N((B(l)+B(r))/2, span/4).
// Draw indices are tied to the dyadic node, not the build order, so the
// restriction of a deeper bridge to level k is bit-identical to a bridge
// built with max_level = k from the same stream.
class BrownianBridge {
 public:
  BrownianBridge(double horizon, unsigned max_level, const RngStream& rng);

  unsigned max_level() const noexcept { return max_level_; }
  double horizon() const noexcept { return horizon_; }

  // Value at dyadic knot i of 2^level (level <= max_level).
  double value(unsigned level, std::size_t i) const;

  // Path / knot increments on the dyadic grid of the given level.
  SamplePath path(unsigned level) const;
  std::vector<double> level_increments(unsigned level) const;

 private:
  double horizon_;
  unsigned max_level_;
  std::vector<double> fine_;  // values at the 2^max_level + 1 finest knots
  mutable std::vector<GridPtr> grids_;
};

// Exact OU sampling: stationary start X(0) ~ N(0, P), then the exact
// transition X(t+d) = e^{-a d} X(t) + sqrt(P (1 - e^{-2 a d})) xi.
// Exact at any step size, so stationarity is preserved on coarse grids.
SamplePath ou_path(const OUParams& params, const GridPtr& grid, const RngStream& rng);

}  // namespace ctgauss
