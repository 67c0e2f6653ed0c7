#include "ctgauss/path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctgauss {

double interpolate_knots(std::span<const double> times, std::span<const double> values, double t) {
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  // First knot strictly greater than t; the bracket is [it-1, it].
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  if (t == times[lo]) return values[lo];
  const double lambda = (t - times[lo]) / (times[hi] - times[lo]);
  return values[lo] + lambda * (values[hi] - values[lo]);
}

SamplePath::SamplePath(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("path needs a grid");
  if (values_.size() != grid_->points())
    throw std::invalid_argument("path value count must match grid point count");
}

double SamplePath::at(double t) const {
  if (t < 0.0 || t > grid_->horizon()) throw std::out_of_range("time outside [0, T]");
  return interpolate_knots(grid_->times(), values_, t);
}

std::vector<double> SamplePath::increments() const {
  std::vector<double> d(values_.size() - 1);
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) d[i] = values_[i + 1] - values_[i];
  return d;
}

SamplePath SamplePath::restrict_to(const GridPtr& coarse) const {
  const auto& fine_times = grid_->times();
  std::vector<double> out(coarse->points());
  std::size_t j = 0;
  for (std::size_t i = 0; i < coarse->points(); ++i) {
    const double t = coarse->time(i);
    while (j < fine_times.size() && fine_times[j] < t) ++j;
    if (j >= fine_times.size() || fine_times[j] != t)
      throw std::invalid_argument("coarse grid is not a subset of the path grid");
    out[i] = values_[j];
  }
  return SamplePath(coarse, std::move(out));
}

double HistoryView::value(double t) const {
  if (t >= horizon()) return last();
  return interpolate_knots(std::span<const double>(times_, count_),
                           std::span<const double>(values_, count_), t);
}

double HistoryView::sup_abs() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < count_; ++i) m = std::max(m, std::abs(values_[i]));
  return m;
}

}  // namespace ctgauss
