#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctgauss/message_channel.hpp"

namespace ctgauss {

// Exact finite-message posterior computed from the Gaussian increment
// densities, with the conditional moments of the signal value it implies.
struct PosteriorState {
  std::vector<double> probabilities;
  double conditional_mean = 0.0;
  double conditional_second_moment = 0.0;
};

// Posterior over messages after the first `steps` increments of y, with the
// conditional moments of X evaluated through per-hypothesis signal values
// x_at_eval[m]. drift_integrals is the replay matrix [m * n + i]. Weights are
// max-shifted before exponentiation so long records cannot underflow to an
// all-zero posterior.
PosteriorState posterior_finite_message(const Message& msg, const SamplingGrid& grid,
                                        std::span<const double> drift_integrals,
                                        std::span<const double> y, std::size_t steps,
                                        std::span<const double> x_at_eval);

// Monte Carlo MMSE of the signal value from sampled outputs.
//
// Causal column: X over step i estimated from the knots up to t_i
// (Y(Delta_n intersect [0,s]) for s inside the step); smoothed column: from
// the whole record. The signal value over a step is the per-step average
// drift (the frozen-history integrand), so both columns are step functions
// and the ds-integrals below are exact for them.
struct MmseCurve {
  std::vector<double> eval_times;  // step midpoints
  std::vector<double> causal, causal_se;
  std::vector<double> smoothed, smoothed_se;
  double causal_integral = 0.0, causal_integral_se = 0.0;
  double smoothed_integral = 0.0, smoothed_integral_se = 0.0;
  std::size_t trials = 0;
};

struct MmseOptions {
  std::size_t trials = 20000;
  unsigned workers = 1;
  std::uint64_t seed = 42;
  std::uint64_t stream_base = 0;
  // When nonzero, noise comes from a Brownian bridge of this max dyadic
  // level, so calls on nested dyadic grids with the same seed and stream
  // base share their omega trial-for-trial. The grid must then be dyadic
  // with level <= bridge_max_level.
  unsigned bridge_max_level = 0;
};

// Refuses trials < 100 (error bars would be meaningless).
MmseCurve mmse_from_samples(const MessageChannel& channel, const GridPtr& grid,
                            const MmseOptions& options);

}  // namespace ctgauss
