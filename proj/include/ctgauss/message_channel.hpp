#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ctgauss/channel.hpp"
#include "ctgauss/policy.hpp"

namespace ctgauss {

// A finite-message channel that can simulate realized outputs and replay the
// per-hypothesis per-step drift integrals on them. This is the common engine
// behind the grid-density, directed-information and sampled-MMSE estimators:
// the conditional law of each knot increment given the past and a hypothesis
// m is Gaussian with mean drift_integral(m, step) and variance equal to the
// step, so exact densities come straight from the replay matrix.
class MessageChannel {
 public:
  // Closed-form sampled channel (message-bearing whitelist kinds only).
  static MessageChannel exact(ExactChannel channel, Message msg, double power_ceiling);
  // Euler-Maruyama discretized policy channel. Pass `sampled_twin` when the
  // drift is constant over every step and ignores the output, i.e. the EM
  // recursion coincides with the sampled channel path-for-path.
  static MessageChannel em(FeedbackPolicy policy, EmVariant variant, Message msg,
                           double power_ceiling, std::optional<ExactChannel> sampled_twin = {});

  const Message& message() const noexcept { return msg_; }
  double symbol(std::size_t m) const noexcept { return symbols_[m]; }
  double power_ceiling() const noexcept { return power_ceiling_; }
  bool is_exact() const noexcept { return exact_; }
  EmVariant variant() const noexcept { return variant_; }

  // EM channels whose drift is constant over every step and ignores the
  // output collapse onto the sampled channel path-for-path (same noise).
  bool collapses_to_sampled() const noexcept { return collapses_; }
  MessageChannel sampled_twin() const;  // the exact channel it collapses onto

  // Message index drawn through the prior CDF from uniform draw 0.
  std::size_t draw_message(const RngStream& rng) const;

  // Realized output knots (steps+1 values) from a message index and per-step
  // noise increments.
  void simulate(const GridPtr& grid, std::size_t m, std::span<const double> noise,
                std::vector<double>& y) const;

  // Drift integrals for every hypothesis replayed on a realized output:
  // out[m * steps + i] = integral of the frozen drift over step i under
  // hypothesis m along this same y.
  void hypothesis_drifts(const GridPtr& grid, std::span<const double> y,
                         std::vector<double>& out) const;

 private:
  MessageChannel(Message msg, double ceiling);

  bool exact_ = false;
  bool collapses_ = false;
  ExactChannel exact_ch_;
  FeedbackPolicy policy_;
  EmVariant variant_ = EmVariant::frozen_history;
  Message msg_;
  std::vector<double> symbols_;
  double power_ceiling_ = 0.0;
};

// Gaussian-increment log weights: lw[m] = sum_i (d_mi dY_i - d_mi^2/2)/delta_i
// over the first `steps` increments (the message-dependent part of the
// product of per-step Gaussian densities; the common factors cancel in every
// ratio this lab forms).
void accumulate_log_weights(const SamplingGrid& grid, std::span<const double> y,
                            std::span<const double> drifts, std::size_t alphabet,
                            std::size_t steps, std::span<double> lw);

// log sum_m exp(lw[m] + log prior[m]), max-shifted.
double log_mixture(std::span<const double> lw, std::span<const double> prior);

}  // namespace ctgauss
