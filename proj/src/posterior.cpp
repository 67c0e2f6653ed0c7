#include "ctgauss/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ctgauss/errors.hpp"
#include "ctgauss/parallel.hpp"
#include "ctgauss/process.hpp"

namespace ctgauss {

PosteriorState posterior_finite_message(const Message& msg, const SamplingGrid& grid,
                                        std::span<const double> drift_integrals,
                                        std::span<const double> y, std::size_t steps,
                                        std::span<const double> x_at_eval) {
  const std::size_t k = msg.alphabet;
  if (steps > grid.steps()) throw std::invalid_argument("steps beyond grid");
  std::vector<double> lw(k);
  accumulate_log_weights(grid, y, drift_integrals, k, steps, lw);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < k; ++m) {
    if (msg.prior[m] > 0.0) {
      lw[m] += std::log(msg.prior[m]);
      best = std::max(best, lw[m]);
    } else {
      lw[m] = -std::numeric_limits<double>::infinity();
    }
  }
  if (!std::isfinite(best)) throw numerical_fault("all posterior weights vanished");
  PosteriorState state;
  state.probabilities.resize(k);
  double norm = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    state.probabilities[m] = std::isfinite(lw[m]) ? std::exp(lw[m] - best) : 0.0;
    norm += state.probabilities[m];
  }
  for (std::size_t m = 0; m < k; ++m) {
    state.probabilities[m] /= norm;
    state.conditional_mean += state.probabilities[m] * x_at_eval[m];
    state.conditional_second_moment += state.probabilities[m] * x_at_eval[m] * x_at_eval[m];
  }
  return state;
}

namespace {

struct MeanVar {
  double mean = 0.0;
  double se = 0.0;
};

MeanVar reduce(double sum, double sumsq, std::size_t n) {
  MeanVar r;
  r.mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, (sumsq - sum * r.mean) / static_cast<double>(n - 1));
  r.se = std::sqrt(var / static_cast<double>(n));
  return r;
}

}  // namespace

MmseCurve mmse_from_samples(const MessageChannel& channel, const GridPtr& grid,
                            const MmseOptions& options) {
  if (options.trials < 100) throw std::invalid_argument("need at least 100 trials");
  const std::size_t n = grid->steps();
  const std::size_t k = channel.message().alphabet;
  const auto& prior = channel.message().prior;
  unsigned grid_level = 0;
  if (options.bridge_max_level > 0) {
    const auto level = dyadic_level(n);
    if (!level || *level > options.bridge_max_level)
      throw std::invalid_argument("bridged noise needs a dyadic grid within the bridge depth");
    grid_level = *level;
  }

  const std::size_t blocks = block_count(options.trials, kTrialBlock);
  // Per-block partial sums; reduced block-by-block afterwards so the result
  // does not depend on the worker count.
  std::vector<double> bc_sum(blocks * n, 0.0), bc_sq(blocks * n, 0.0);
  std::vector<double> bs_sum(blocks * n, 0.0), bs_sq(blocks * n, 0.0);
  std::vector<double> bci(blocks, 0.0), bci_sq(blocks, 0.0);
  std::vector<double> bsi(blocks, 0.0), bsi_sq(blocks, 0.0);

  parallel_blocks(options.trials, kTrialBlock, options.workers, [&](std::size_t block,
                                                                    std::size_t first,
                                                                    std::size_t last) {
    std::vector<double> y, drifts, lw(k), post(k), causal_sq(n), noise;
    for (std::size_t trial = first; trial < last; ++trial) {
      const std::uint64_t slot = options.stream_base + kStreamStride * trial;
      const RngStream msg_rng(options.seed, slot + kMessageStreamOffset);
      const RngStream noise_rng(options.seed, slot + kNoiseStreamOffset);
      const std::size_t m_true = channel.draw_message(msg_rng);
      if (options.bridge_max_level > 0) {
        const BrownianBridge bridge(grid->horizon(), options.bridge_max_level, noise_rng);
        noise = bridge.level_increments(grid_level);
      } else {
        noise = brownian_increments(*grid, noise_rng);
      }
      channel.simulate(grid, m_true, noise, y);
      channel.hypothesis_drifts(grid, y, drifts);

      // Causal pass: the posterior before step i has seen increments < i.
      std::fill(lw.begin(), lw.end(), 0.0);
      double causal_integral = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dt = grid->step(i);
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < k; ++m)
          if (prior[m] > 0.0) best = std::max(best, lw[m] + std::log(prior[m]));
        double norm = 0.0;
        for (std::size_t m = 0; m < k; ++m) {
          post[m] = prior[m] > 0.0 ? std::exp(lw[m] + std::log(prior[m]) - best) : 0.0;
          norm += post[m];
        }
        double xhat = 0.0;
        for (std::size_t m = 0; m < k; ++m) xhat += (post[m] / norm) * (drifts[m * n + i] / dt);
        const double x_true = drifts[m_true * n + i] / dt;
        const double err = x_true - xhat;
        causal_sq[i] = err * err;
        causal_integral += causal_sq[i] * dt;

        const double dy = y[i + 1] - y[i];
        for (std::size_t m = 0; m < k; ++m) {
          const double d = drifts[m * n + i];
          lw[m] += (d * dy - 0.5 * d * d) / dt;
        }
      }

      // Smoothed pass: the full-record posterior is the causal one after the
      // last increment.
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < k; ++m)
        if (prior[m] > 0.0) best = std::max(best, lw[m] + std::log(prior[m]));
      if (!std::isfinite(best)) throw numerical_fault("all posterior weights vanished");
      double norm = 0.0;
      for (std::size_t m = 0; m < k; ++m) {
        post[m] = prior[m] > 0.0 ? std::exp(lw[m] + std::log(prior[m]) - best) : 0.0;
        norm += post[m];
      }
      double smoothed_integral = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dt = grid->step(i);
        double xhat = 0.0;
        for (std::size_t m = 0; m < k; ++m) xhat += (post[m] / norm) * (drifts[m * n + i] / dt);
        const double x_true = drifts[m_true * n + i] / dt;
        const double err = x_true - xhat;
        const double sq = err * err;
        smoothed_integral += sq * dt;
        bs_sum[block * n + i] += sq;
        bs_sq[block * n + i] += sq * sq;
        bc_sum[block * n + i] += causal_sq[i];
        bc_sq[block * n + i] += causal_sq[i] * causal_sq[i];
      }
      bci[block] += causal_integral;
      bci_sq[block] += causal_integral * causal_integral;
      bsi[block] += smoothed_integral;
      bsi_sq[block] += smoothed_integral * smoothed_integral;
    }
  });

  MmseCurve curve;
  curve.trials = options.trials;
  curve.eval_times.resize(n);
  curve.causal.resize(n);
  curve.causal_se.resize(n);
  curve.smoothed.resize(n);
  curve.smoothed_se.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    curve.eval_times[i] = 0.5 * (grid->time(i) + grid->time(i + 1));
    double cs = 0.0, cq = 0.0, ss = 0.0, sq = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      cs += bc_sum[b * n + i];
      cq += bc_sq[b * n + i];
      ss += bs_sum[b * n + i];
      sq += bs_sq[b * n + i];
    }
    const MeanVar c = reduce(cs, cq, options.trials);
    const MeanVar s = reduce(ss, sq, options.trials);
    curve.causal[i] = c.mean;
    curve.causal_se[i] = c.se;
    curve.smoothed[i] = s.mean;
    curve.smoothed_se[i] = s.se;
  }
  double cis = 0.0, ciq = 0.0, sis = 0.0, siq = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    cis += bci[b];
    ciq += bci_sq[b];
    sis += bsi[b];
    siq += bsi_sq[b];
  }
  const MeanVar ci = reduce(cis, ciq, options.trials);
  const MeanVar si = reduce(sis, siq, options.trials);
  curve.causal_integral = ci.mean;
  curve.causal_integral_se = ci.se;
  curve.smoothed_integral = si.mean;
  curve.smoothed_integral_se = si.se;
  return curve;
}

}  // namespace ctgauss
