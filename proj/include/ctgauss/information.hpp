#pragma once

#include <cstddef>
#include <vector>

#include "ctgauss/message_channel.hpp"
#include "ctgauss/posterior.hpp"

namespace ctgauss {

enum class MiMethod { grid_density, duncan, directed };

const char* mi_method_name(MiMethod m);

// Mutual information estimate in nats with its Monte Carlo standard error.
struct MIEstimate {
  double value = 0.0;
  double stderror = 0.0;
  std::size_t trials = 0;
  std::size_t grid_steps = 0;
  MiMethod method = MiMethod::grid_density;
};

struct MiOptions {
  std::size_t trials = 20000;
  unsigned workers = 1;
  std::uint64_t seed = 42;
  std::uint64_t stream_base = 0;
  unsigned bridge_max_level = 0;  // see MmseOptions
};

// Left-point Ito discretization of the Girsanov exponent:
//   sum_i g(t_{i-1}) dY_i - (1/2) sum_i g(t_{i-1})^2 delta_i,
// the log likelihood ratio of the signal-bearing output law against the
// pure-noise law along the record y.
double girsanov_logdensity(const SamplePath& drift, const SamplePath& y);

// Exact mutual information of the discretized channel, Monte Carlo over the
// message and noise: mean of log f(Y|M) - log sum_m prior(m) f(Y|m), with the
// product-Gaussian increment densities evaluated on the realized record for
// every hypothesis. Log-space throughout; refuses trials < 100.
MIEstimate mi_grid_density(const MessageChannel& channel, const GridPtr& grid,
                           const MiOptions& options);

// Duncan route: I = (snr/2) * int causal-MMSE. The integral argument must be
// nonnegative.
double mi_duncan(double causal_mmse_integral, double snr);

// Duncan route end-to-end: causal-MMSE Monte Carlo through the posterior
// engine, halved (snr = 1 Brownian form).
MIEstimate mi_duncan_monte_carlo(const MessageChannel& channel, const GridPtr& grid,
                                 const MiOptions& options);

// Grid directed information sum_i I(Xtilde^i; Y_i | Y^{i-1}) via the causal
// posterior chain; equals the message MI of the same discretized channel
// identically, so the two estimators agreeing is a consistency check of both.
//
// Only finite-message channels are accepted. Degenerate pure-feedback inputs
// like X = -Y (whose per-increment conditional information is infinite under
// the inf-over-partitions definition) are not expressible here.
MIEstimate directed_info_grid(const MessageChannel& channel, const GridPtr& grid,
                              const MiOptions& options);

// I-MMSE table over an snr sweep.
struct IMmseScenario {
  enum class Kind { ou, binary };
  Kind kind = Kind::ou;
  double a = 10.0, P = 1.0;  // ou
  double c = 1.0;            // binary constant signal
};

struct IMmseRow {
  double snr = 0.0;
  double mi = 0.0;
  double mi_over_snr = 0.0;
  double fd_slope = 0.0;        // central difference dI/dsnr
  double half_smoothed = 0.0;   // (1/2) int smoothed-MMSE dt (binary only; NaN for ou)
  bool slope_ok = true;
};

struct IMmseReport {
  std::vector<IMmseRow> rows;
  bool ratio_strictly_decreasing = false;
  double horizon = 0.0;
  double fd_step = 0.0;
};

// snr_list must be increasing and positive; h at most a tenth of the
// smallest gap. The binary scenario checks |dI/dsnr - (1/2) int smoothed|
// <= 1e-3 nats per row; the ou scenario checks monotonicity only.
IMmseReport i_mmse_check(const IMmseScenario& scenario, const std::vector<double>& snr_list,
                         double horizon, double h);

// The five MAC information rates for two independent OU users with a common
// mean reversion, from scalar Riccati runs:
//   joint = riccati(a, P1+P2), conditional_i = riccati(a, P_i),
//   marginal_i = joint - conditional_j (chain rule).
// Rates are per unit time. Requires a shared `a` (the sum of two OU processes
// with different reversion rates is not OU).
struct MacOuMiTable {
  double joint_rate = 0.0;
  double conditional1_rate = 0.0, conditional2_rate = 0.0;
  double marginal1_rate = 0.0, marginal2_rate = 0.0;
};
MacOuMiTable mac_ou_mi_table(double a, double P1, double P2, double horizon);

}  // namespace ctgauss
