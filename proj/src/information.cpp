#include "ctgauss/information.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ctgauss/errors.hpp"
#include "ctgauss/parallel.hpp"
#include "ctgauss/process.hpp"
#include "ctgauss/quadrature.hpp"
#include "ctgauss/riccati.hpp"

namespace ctgauss {

const char* mi_method_name(MiMethod m) {
  switch (m) {
    case MiMethod::grid_density: return "grid-density";
    case MiMethod::duncan: return "duncan";
    case MiMethod::directed: return "directed";
  }
  return "?";
}

double girsanov_logdensity(const SamplePath& drift, const SamplePath& y) {
  if (drift.grid() != y.grid() && drift.grid()->times() != y.grid()->times())
    throw std::invalid_argument("drift and output must share a grid");
  const auto& g = *y.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.steps(); ++i) {
    const double gi = drift[i];  // left knot
    acc += gi * (y[i + 1] - y[i]) - 0.5 * gi * gi * g.step(i);
  }
  return acc;
}

namespace {

struct TrialReducer {
  std::vector<double> sum, sumsq;
  explicit TrialReducer(std::size_t blocks) : sum(blocks, 0.0), sumsq(blocks, 0.0) {}
  void add(std::size_t block, double v) {
    sum[block] += v;
    sumsq[block] += v * v;
  }
  void finish(std::size_t trials, double& mean, double& se) const {
    double s = 0.0, q = 0.0;
    for (std::size_t b = 0; b < sum.size(); ++b) {
      s += sum[b];
      q += sumsq[b];
    }
    mean = s / static_cast<double>(trials);
    const double var = std::max(0.0, (q - s * mean) / static_cast<double>(trials - 1));
    se = std::sqrt(var / static_cast<double>(trials));
  }
};

unsigned bridge_level_for(const MiOptions& options, std::size_t steps) {
  if (options.bridge_max_level == 0) return 0;
  const auto level = dyadic_level(steps);
  if (!level || *level > options.bridge_max_level)
    throw std::invalid_argument("bridged noise needs a dyadic grid within the bridge depth");
  return *level;
}

// make_per_trial() is invoked once per block so each worker owns its scratch.
template <typename MakePerTrial>
MIEstimate run_mi_trials(const MessageChannel& channel, const GridPtr& grid,
                         const MiOptions& options, MiMethod method,
                         MakePerTrial&& make_per_trial) {
  if (options.trials < 100) throw std::invalid_argument("need at least 100 trials");
  const unsigned grid_level = bridge_level_for(options, grid->steps());
  const std::size_t blocks = block_count(options.trials, kTrialBlock);
  TrialReducer reducer(blocks);

  parallel_blocks(options.trials, kTrialBlock, options.workers,
                  [&](std::size_t block, std::size_t first, std::size_t last) {
                    auto per_trial = make_per_trial();
                    std::vector<double> y, drifts, noise;
                    for (std::size_t trial = first; trial < last; ++trial) {
                      const std::uint64_t slot = options.stream_base + kStreamStride * trial;
                      const RngStream msg_rng(options.seed, slot + kMessageStreamOffset);
                      const RngStream noise_rng(options.seed, slot + kNoiseStreamOffset);
                      const std::size_t m_true = channel.draw_message(msg_rng);
                      if (options.bridge_max_level > 0) {
                        const BrownianBridge bridge(grid->horizon(), options.bridge_max_level,
                                                    noise_rng);
                        noise = bridge.level_increments(grid_level);
                      } else {
                        noise = brownian_increments(*grid, noise_rng);
                      }
                      channel.simulate(grid, m_true, noise, y);
                      channel.hypothesis_drifts(grid, y, drifts);
                      reducer.add(block, per_trial(m_true, y, drifts));
                    }
                  });

  MIEstimate est;
  est.trials = options.trials;
  est.grid_steps = grid->steps();
  est.method = method;
  reducer.finish(options.trials, est.value, est.stderror);
  return est;
}

}  // namespace

MIEstimate mi_grid_density(const MessageChannel& channel, const GridPtr& grid,
                           const MiOptions& options) {
  const std::size_t k = channel.message().alphabet;
  const std::size_t n = grid->steps();
  const auto& prior = channel.message().prior;
  return run_mi_trials(
      channel, grid, options, MiMethod::grid_density, [&, k, n] {
        return [&, k, n, lw = std::vector<double>(k)](
                   std::size_t m_true, const std::vector<double>& y,
                   const std::vector<double>& drifts) mutable {
          accumulate_log_weights(*grid, y, drifts, k, n, lw);
          return lw[m_true] - log_mixture(lw, prior);
        };
      });
}

double mi_duncan(double causal_mmse_integral, double snr) {
  if (!(causal_mmse_integral >= 0.0))
    throw std::invalid_argument("causal MMSE integral must be nonnegative");
  if (!(snr >= 0.0)) throw std::invalid_argument("snr must be nonnegative");
  return 0.5 * snr * causal_mmse_integral;
}

MIEstimate mi_duncan_monte_carlo(const MessageChannel& channel, const GridPtr& grid,
                                 const MiOptions& options) {
  MmseOptions mopt;
  mopt.trials = options.trials;
  mopt.workers = options.workers;
  mopt.seed = options.seed;
  mopt.stream_base = options.stream_base;
  mopt.bridge_max_level = options.bridge_max_level;
  const MmseCurve curve = mmse_from_samples(channel, grid, mopt);
  MIEstimate est;
  est.value = mi_duncan(curve.causal_integral, 1.0);
  est.stderror = 0.5 * curve.causal_integral_se;
  est.trials = options.trials;
  est.grid_steps = grid->steps();
  est.method = MiMethod::duncan;
  return est;
}

MIEstimate directed_info_grid(const MessageChannel& channel, const GridPtr& grid,
                              const MiOptions& options) {
  // Causal-posterior chain: per step,
  //   log f(dY_i | Xtilde^i, Y^{i-1}) - log sum_m p(m|Y^{i-1}) f(dY_i | m),
  // accumulated over i. The cumulative-drift process Xtilde carries exactly
  // the step drift integral given the past, so the numerator is the
  // hypothesis-m_true Gaussian factor.
  const std::size_t k = channel.message().alphabet;
  const std::size_t n = grid->steps();
  const auto& prior = channel.message().prior;
  auto log_norm = [k](const std::vector<double>& lp) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < k; ++m) best = std::max(best, lp[m]);
    if (!std::isfinite(best)) throw numerical_fault("all posterior weights vanished");
    double acc = 0.0;
    for (std::size_t m = 0; m < k; ++m) acc += std::exp(lp[m] - best);
    return best + std::log(acc);
  };
  return run_mi_trials(
      channel, grid, options, MiMethod::directed, [&, k, n] {
        return [&, k, n, lpost = std::vector<double>(k)](
                   std::size_t m_true, const std::vector<double>& y,
                   const std::vector<double>& drifts) mutable {
          for (std::size_t m = 0; m < k; ++m)
            lpost[m] =
                prior[m] > 0.0 ? std::log(prior[m]) : -std::numeric_limits<double>::infinity();
          double lse_prev = log_norm(lpost);  // 0 for a proper prior
          double acc = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            const double dt = grid->step(i);
            const double dy = y[i + 1] - y[i];
            for (std::size_t m = 0; m < k; ++m) {
              const double d = drifts[m * n + i];
              lpost[m] += (d * dy - 0.5 * d * d) / dt;
            }
            const double lse_next = log_norm(lpost);
            const double dtrue = drifts[m_true * n + i];
            const double e_true = (dtrue * dy - 0.5 * dtrue * dtrue) / dt;
            // log f(dY_i | Xtilde^i, Y^{i-1}) - log f(dY_i | Y^{i-1}): the
            // causal mixture's message-dependent part is the normalizer jump.
            acc += e_true - (lse_next - lse_prev);
            lse_prev = lse_next;
          }
          return acc;
        };
      });
}

IMmseReport i_mmse_check(const IMmseScenario& scenario, const std::vector<double>& snr_list,
                         double horizon, double h) {
  if (snr_list.empty()) throw std::invalid_argument("snr list must be nonempty");
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < snr_list.size(); ++i) {
    if (!(snr_list[i] > 0.0)) throw std::invalid_argument("snr values must be positive");
    if (i > 0) {
      if (!(snr_list[i] > snr_list[i - 1]))
        throw std::invalid_argument("snr list must be increasing");
      min_gap = std::min(min_gap, snr_list[i] - snr_list[i - 1]);
    }
  }
  if (snr_list.size() > 1 && !(h <= min_gap / 10.0))
    throw std::invalid_argument("finite-difference step too large for the snr spacing");
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");

  const bool binary = scenario.kind == IMmseScenario::Kind::binary;
  auto mi_of = [&](double snr) {
    if (binary) return binary_awgn_mi(snr * scenario.c * scenario.c * horizon);
    return riccati_ou(OUParams(scenario.a, scenario.P), snr, horizon).mi_nats;
  };

  IMmseReport report;
  report.horizon = horizon;
  report.fd_step = h;
  report.rows.reserve(snr_list.size());
  for (double snr : snr_list) {
    IMmseRow row;
    row.snr = snr;
    row.mi = mi_of(snr);
    row.mi_over_snr = row.mi / snr;
    row.fd_slope = (mi_of(snr + h) - mi_of(snr - h)) / (2.0 * h);
    if (binary) {
      const double rho = snr * scenario.c * scenario.c * horizon;
      row.half_smoothed =
          0.5 * horizon * scenario.c * scenario.c * binary_awgn_mmse(rho);
      row.slope_ok = std::abs(row.fd_slope - row.half_smoothed) <= 1e-3;
    } else {
      row.half_smoothed = std::numeric_limits<double>::quiet_NaN();
      row.slope_ok = true;
    }
    report.rows.push_back(row);
  }
  report.ratio_strictly_decreasing = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (!(report.rows[i].mi_over_snr < report.rows[i - 1].mi_over_snr))
      report.ratio_strictly_decreasing = false;
  return report;
}

MacOuMiTable mac_ou_mi_table(double a, double P1, double P2, double horizon) {
  if (!(a > 0.0)) throw std::invalid_argument("mean reversion must be positive");
  if (!(P1 >= 0.0) || !(P2 >= 0.0)) throw std::invalid_argument("powers must be nonnegative");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  auto rate = [&](double p) {
    if (p == 0.0) return 0.0;
    return riccati_ou(OUParams(a, p), 1.0, horizon).mi_nats / horizon;
  };
  MacOuMiTable t;
  t.joint_rate = rate(P1 + P2);
  t.conditional1_rate = rate(P1);
  t.conditional2_rate = rate(P2);
  t.marginal1_rate = t.joint_rate - t.conditional2_rate;
  t.marginal2_rate = t.joint_rate - t.conditional1_rate;
  return t;
}

}  // namespace ctgauss
