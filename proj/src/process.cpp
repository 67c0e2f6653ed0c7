#include "ctgauss/process.hpp"

#include <cmath>
#include <stdexcept>

namespace ctgauss {

OUParams::OUParams(double a, double p) : mean_reversion(a), power(p) {
  if (!(a > 0.0)) throw std::invalid_argument("OU mean reversion must be positive");
  if (!(p > 0.0)) throw std::invalid_argument("OU power must be positive");
}

std::vector<double> brownian_increments(const SamplingGrid& grid, const RngStream& rng) {
  std::vector<double> inc(grid.steps());
  for (std::size_t i = 0; i < inc.size(); ++i)
    inc[i] = std::sqrt(grid.step(i)) * rng.gaussian_at(i);
  return inc;
}

std::optional<unsigned> dyadic_level(std::size_t steps) {
  if (steps == 0 || (steps & (steps - 1)) != 0) return std::nullopt;
  unsigned level = 0;
  while ((std::size_t{1} << level) < steps) ++level;
  return level;
}

SamplePath path_from_increments(GridPtr grid, std::span<const double> increments) {
  if (increments.size() != grid->steps())
    throw std::invalid_argument("increment count must match grid step count");
  std::vector<double> v(grid->points());
  v[0] = 0.0;
  for (std::size_t i = 0; i < increments.size(); ++i) v[i + 1] = v[i] + increments[i];
  return SamplePath(std::move(grid), std::move(v));
}

SamplePath brownian_path(const GridPtr& grid, const RngStream& rng) {
  return path_from_increments(grid, brownian_increments(*grid, rng));
}

BrownianBridge::BrownianBridge(double horizon, unsigned max_level, const RngStream& rng)
    : horizon_(horizon), max_level_(max_level) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (max_level > 26) throw std::invalid_argument("bridge level too deep");
  const std::size_t n = std::size_t{1} << max_level_;
  fine_.assign(n + 1, 0.0);
  fine_[n] = std::sqrt(horizon_) * rng.gaussian_at(0);
  for (unsigned k = 1; k <= max_level_; ++k) {
    const std::size_t stride = n >> k;                       // finest knots per half-span
    const double sd = std::sqrt(horizon_ / std::pow(2.0, k + 1));
    const std::size_t first_node = std::size_t{1} << (k - 1);
    for (std::size_t j = 0; j < first_node; ++j) {
      const std::size_t mid = (2 * j + 1) * stride;
      const std::size_t lo = 2 * j * stride;
      const std::size_t hi = (2 * j + 2) * stride;
      fine_[mid] = 0.5 * (fine_[lo] + fine_[hi]) + sd * rng.gaussian_at(first_node + j);
    }
  }
  grids_.resize(max_level_ + 1);
}

double BrownianBridge::value(unsigned level, std::size_t i) const {
  if (level > max_level_) throw std::invalid_argument("level beyond bridge depth");
  const std::size_t stride = (std::size_t{1} << max_level_) >> level;
  return fine_[i * stride];
}

SamplePath BrownianBridge::path(unsigned level) const {
  if (level > max_level_) throw std::invalid_argument("level beyond bridge depth");
  if (!grids_[level]) grids_[level] = make_dyadic_grid(horizon_, level);
  const std::size_t stride = (std::size_t{1} << max_level_) >> level;
  std::vector<double> v((std::size_t{1} << level) + 1);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fine_[i * stride];
  return SamplePath(grids_[level], std::move(v));
}

std::vector<double> BrownianBridge::level_increments(unsigned level) const {
  if (level > max_level_) throw std::invalid_argument("level beyond bridge depth");
  const std::size_t stride = (std::size_t{1} << max_level_) >> level;
  std::vector<double> d(std::size_t{1} << level);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = fine_[(i + 1) * stride] - fine_[i * stride];
  return d;
}

SamplePath ou_path(const OUParams& params, const GridPtr& grid, const RngStream& rng) {
  const double a = params.mean_reversion;
  const double p = params.power;
  std::vector<double> v(grid->points());
  v[0] = std::sqrt(p) * rng.gaussian_at(0);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = grid->step(i);
    const double phi = std::exp(-a * d);
    const double sd = std::sqrt(p * (1.0 - phi * phi));
    v[i + 1] = phi * v[i] + sd * rng.gaussian_at(i + 1);
  }
  return SamplePath(grid, std::move(v));
}

}  // namespace ctgauss
