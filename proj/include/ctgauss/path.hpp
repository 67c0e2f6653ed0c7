#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ctgauss/grid.hpp"

namespace ctgauss {

// Knot-exact linear interpolation over (times, values); t is clamped to the
// knot range by the callers that allow it.
double interpolate_knots(std::span<const double> times, std::span<const double> values, double t);

// Piecewise-linear path sampled on a grid. Immutable after construction.
class SamplePath {
 public:
  SamplePath(GridPtr grid, std::vector<double> values);

  // Linear interpolation; exact at knots. Throws std::out_of_range outside [0,T].
  double at(double t) const;

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const GridPtr& grid() const noexcept { return grid_; }
  double front() const noexcept { return values_.front(); }
  double back() const noexcept { return values_.back(); }

  // Knot-to-knot differences (size n).
  std::vector<double> increments() const;

  // Values at the knots of a coarser grid (each coarse knot must be a knot
  // of this path's grid); the chord version seen by the coarse grid.
  SamplePath restrict_to(const GridPtr& coarse) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

// Read-only view of the first `count` knots of a path, with the left-frozen
// extension beyond the horizon: reads at t >= t_{count-1} return the last
// stored value. This is the "history up to t_i" object the drift functionals
// consume.
class HistoryView {
 public:
  HistoryView(const double* times, const double* values, std::size_t count) noexcept
      : times_(times), values_(values), count_(count) {}
  HistoryView(const SamplePath& path, std::size_t count) noexcept
      : HistoryView(path.grid()->times().data(), path.values().data(), count) {}

  double horizon() const noexcept { return times_[count_ - 1]; }
  double last() const noexcept { return values_[count_ - 1]; }
  std::size_t knots() const noexcept { return count_; }

  // Value at time t: frozen at the ends, linear between knots.
  double value(double t) const;

  double sup_abs() const noexcept;

 private:
  const double* times_;
  const double* values_;
  std::size_t count_;
};

}  // namespace ctgauss
