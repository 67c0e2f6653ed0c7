#include "ctgauss/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ctgauss {

Message::Message(std::size_t alphabet_size, std::size_t value_index, std::vector<double> prior_probs)
    : alphabet(alphabet_size), value(value_index), prior(std::move(prior_probs)) {
  if (alphabet == 0) throw std::invalid_argument("message alphabet must be nonempty");
  if (value >= alphabet) throw std::invalid_argument("message value outside alphabet");
  if (prior.size() != alphabet) throw std::invalid_argument("prior size must match alphabet");
  double sum = 0.0;
  for (double p : prior) {
    if (!(p >= 0.0)) throw std::invalid_argument("prior entries must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("prior must sum to 1");
}

Message Message::uniform(std::size_t alphabet_size, std::size_t value_index) {
  if (alphabet_size == 0) throw std::invalid_argument("message alphabet must be nonempty");
  return Message(alphabet_size, value_index,
                 std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)));
}

double message_symbol(std::size_t alphabet, std::size_t value) {
  return 2.0 * static_cast<double>(value) - static_cast<double>(alphabet - 1);
}

namespace {
inline double clamp_to(double x, double bound) { return std::clamp(x, -bound, bound); }
}  // namespace

FeedbackPolicy zero_policy() {
  return {[](double, const HistoryView&, const HistoryView&) { return 0.0; }, 0.0, 0.0, "g = 0"};
}

FeedbackPolicy constant_policy(double c) {
  return {[c](double, const HistoryView&, const HistoryView&) { return c; }, 0.0, c * c,
          "g = c"};
}

FeedbackPolicy scaled_input_policy(double c) {
  const double ac = std::abs(c);
  return {[c](double s, const HistoryView& w, const HistoryView&) { return c * w.value(s); },
          ac, std::numeric_limits<double>::infinity(), "g = c*w(s)"};
}

FeedbackPolicy linear_output_policy(double theta) {
  return {[theta](double s, const HistoryView&, const HistoryView& y) { return -theta * y.value(s); },
          std::abs(theta), std::numeric_limits<double>::infinity(), "g = -theta*y(s)"};
}

FeedbackPolicy clamped_feedback_policy(double c, double kappa, double clamp_bound) {
  const double peak = std::abs(c) + std::abs(kappa) * clamp_bound;
  return {[c, kappa, clamp_bound](double s, const HistoryView& w, const HistoryView& y) {
            return c * w.value(s) - kappa * clamp_to(y.value(s), clamp_bound);
          },
          std::max(std::abs(c), std::abs(kappa)), peak * peak,
          "g = c*w(s) - kappa*clamp(y(s))"};
}

FeedbackPolicy pulse_feedback_policy(double c, double kappa, double clamp_bound, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  const double pi = 3.141592653589793238462643383279502884;
  const double peak = std::abs(c) + std::abs(kappa) * clamp_bound;
  // Quarter wave: asymmetric over the window, so left-knot and midpoint
  // quadratures of the drift genuinely differ (a full half period has equal
  // Riemann sums at any phase). d/ds bounds the time component of L.
  const double lip =
      std::max({std::abs(c), std::abs(kappa), std::abs(c) * pi / (2.0 * horizon)});
  return {[c, kappa, clamp_bound, horizon,
           pi](double s, const HistoryView& w, const HistoryView& y) {
            return c * w.value(s) * std::sin(pi * s / (2.0 * horizon)) -
                   kappa * clamp_to(y.value(s), clamp_bound);
          },
          lip, peak * peak, "g = c*w(s)*sin(pi s/(2T)) - kappa*clamp(y(s))"};
}

double history_distance(const HistoryView& u, double s, const HistoryView& v, double t) {
  if (s > t) return history_distance(v, t, u, s);
  // Compare on a shared probe mesh; the views are piecewise linear so a
  // moderately fine mesh captures the sup within test tolerance.
  constexpr int kProbes = 64;
  double d1 = 0.0;
  for (int i = 0; i <= kProbes; ++i) {
    const double r = s * (static_cast<double>(i) / kProbes);
    d1 = std::max(d1, std::abs(u.value(r) - v.value(r)));
  }
  double d2 = 0.0;
  const double us = u.value(s);
  for (int i = 0; i <= kProbes; ++i) {
    const double r = s + (t - s) * (static_cast<double>(i) / kProbes);
    d2 = std::max(d2, std::abs(us - v.value(r)));
  }
  return d1 + d2;
}

LipschitzProbe probe_lipschitz(const FeedbackPolicy& policy, double horizon,
                               const RngStream& rng, std::size_t pairs) {
  constexpr std::size_t kKnots = 9;
  std::vector<double> times(kKnots);
  for (std::size_t i = 0; i < kKnots; ++i)
    times[i] = horizon * (static_cast<double>(i) / (kKnots - 1));

  std::uint64_t draw = 0;
  auto random_history = [&](std::vector<double>& store) {
    store.resize(kKnots);
    for (std::size_t i = 0; i < kKnots; ++i) store[i] = rng.gaussian_at(draw++);
    return HistoryView(times.data(), store.data(), kKnots);
  };

  LipschitzProbe probe;
  std::vector<double> u, v, y, z;
  for (std::size_t p = 0; p < pairs; ++p) {
    const HistoryView uh = random_history(u);
    const HistoryView vh = random_history(v);
    const HistoryView yh = random_history(y);
    const HistoryView zh = random_history(z);
    const double s1 = horizon * rng.uniform_at(2 * p);
    const double s2 = horizon * rng.uniform_at(2 * p + 1);
    const double num = std::abs(policy.drift(s1, uh, yh) - policy.drift(s2, vh, zh));
    const double den = std::abs(s1 - s2) + history_distance(uh, s1, vh, s2) +
                       history_distance(yh, s1, zh, s2);
    if (den > 1e-12) probe.max_ratio = std::max(probe.max_ratio, num / den);
  }
  probe.flagged = probe.max_ratio > policy.lipschitz * 1.01;
  return probe;
}

}  // namespace ctgauss
