#include "ctgauss/message_channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ctgauss/errors.hpp"

namespace ctgauss {

MessageChannel::MessageChannel(Message msg, double ceiling)
    : msg_(std::move(msg)), power_ceiling_(ceiling) {
  symbols_.resize(msg_.alphabet);
  for (std::size_t m = 0; m < msg_.alphabet; ++m) symbols_[m] = message_symbol(msg_.alphabet, m);
}

MessageChannel MessageChannel::exact(ExactChannel channel, Message msg, double power_ceiling) {
  if (channel.kind == ExactChannel::Kind::linear_output)
    throw not_exactly_solvable("linear output feedback carries no message");
  MessageChannel c(std::move(msg), power_ceiling);
  c.exact_ = true;
  c.exact_ch_ = channel;
  c.collapses_ = false;
  return c;
}

MessageChannel MessageChannel::em(FeedbackPolicy policy, EmVariant variant, Message msg,
                                  double power_ceiling, std::optional<ExactChannel> sampled_twin) {
  MessageChannel c(std::move(msg), power_ceiling);
  c.policy_ = std::move(policy);
  c.variant_ = variant;
  if (sampled_twin) {
    c.collapses_ = true;
    c.exact_ch_ = *sampled_twin;
  }
  return c;
}

MessageChannel MessageChannel::sampled_twin() const {
  if (!collapses_) throw std::logic_error("channel does not collapse onto a sampled one");
  return exact(exact_ch_, msg_, power_ceiling_);
}

std::size_t MessageChannel::draw_message(const RngStream& rng) const {
  const double u = rng.uniform_at(0);
  double acc = 0.0;
  for (std::size_t m = 0; m + 1 < msg_.alphabet; ++m) {
    acc += msg_.prior[m];
    if (u < acc) return m;
  }
  return msg_.alphabet - 1;
}

void MessageChannel::simulate(const GridPtr& grid, std::size_t m, std::span<const double> noise,
                              std::vector<double>& y) const {
  if (exact_) {
    y = simulate_exact_sampled(exact_ch_, symbols_[m], grid, noise).values();
    return;
  }
  y = simulate_em(policy_, DriftSource::message(symbols_[m]), grid, variant_, noise).values();
}

void MessageChannel::hypothesis_drifts(const GridPtr& grid, std::span<const double> y,
                                       std::vector<double>& out) const {
  const std::size_t n = grid->steps();
  if (y.size() != n + 1) throw std::invalid_argument("output knot count must match grid");
  out.resize(msg_.alphabet * n);
  const auto& t = grid->times();
  if (exact_) {
    for (std::size_t m = 0; m < msg_.alphabet; ++m) {
      double drift_value = 0.0;
      switch (exact_ch_.kind) {
        case ExactChannel::Kind::zero: drift_value = 0.0; break;
        case ExactChannel::Kind::constant_drift: drift_value = exact_ch_.c; break;
        case ExactChannel::Kind::message_scaled: drift_value = exact_ch_.c * symbols_[m]; break;
        case ExactChannel::Kind::linear_output: break;
      }
      for (std::size_t i = 0; i < n; ++i) out[m * n + i] = drift_value * (t[i + 1] - t[i]);
    }
    return;
  }
  const double w_times[2] = {0.0, grid->horizon()};
  for (std::size_t m = 0; m < msg_.alphabet; ++m) {
    const double w_values[2] = {symbols_[m], symbols_[m]};
    const HistoryView wv(w_times, w_values, 2);
    for (std::size_t i = 0; i < n; ++i) {
      const HistoryView yv(t.data(), y.data(), i + 1);
      const double d = em_step_drift(policy_, variant_, t[i], t[i + 1], wv, yv);
      if (!std::isfinite(d)) throw simulation_fault("drift returned a non-finite value", i);
      out[m * n + i] = d;
    }
  }
}

void accumulate_log_weights(const SamplingGrid& grid, std::span<const double> y,
                            std::span<const double> drifts, std::size_t alphabet,
                            std::size_t steps, std::span<double> lw) {
  const std::size_t n = grid.steps();
  for (std::size_t m = 0; m < alphabet; ++m) {
    double acc = 0.0;
    const double* d = drifts.data() + m * n;
    for (std::size_t i = 0; i < steps; ++i) {
      const double dy = y[i + 1] - y[i];
      acc += (d[i] * dy - 0.5 * d[i] * d[i]) / grid.step(i);
    }
    lw[m] = acc;
  }
}

double log_mixture(std::span<const double> lw, std::span<const double> prior) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < lw.size(); ++m)
    if (prior[m] > 0.0) best = std::max(best, lw[m] + std::log(prior[m]));
  if (!std::isfinite(best)) throw numerical_fault("all posterior weights vanished");
  double acc = 0.0;
  for (std::size_t m = 0; m < lw.size(); ++m)
    if (prior[m] > 0.0) acc += std::exp(lw[m] + std::log(prior[m]) - best);
  return best + std::log(acc);
}

}  // namespace ctgauss
