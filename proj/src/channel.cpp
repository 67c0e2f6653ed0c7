#include "ctgauss/channel.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "ctgauss/errors.hpp"

namespace ctgauss {

const char* em_variant_name(EmVariant v) {
  switch (v) {
    case EmVariant::frozen_history: return "frozen-history";
    case EmVariant::piecewise_message: return "piecewise-message";
    case EmVariant::frozen_time: return "frozen-time";
    case EmVariant::frozen_both: return "frozen-both";
  }
  return "?";
}

std::optional<EmVariant> em_variant_from_name(std::string_view name) {
  if (name == "frozen-history") return EmVariant::frozen_history;
  if (name == "piecewise-message") return EmVariant::piecewise_message;
  if (name == "frozen-time") return EmVariant::frozen_time;
  if (name == "frozen-both") return EmVariant::frozen_both;
  return std::nullopt;
}

DriftSource DriftSource::message(double symbol) {
  DriftSource s;
  s.symbol_ = symbol;
  return s;
}

DriftSource DriftSource::input(SamplePath w) {
  DriftSource s;
  s.path_ = std::move(w);
  return s;
}

double em_step_drift(const FeedbackPolicy& policy, EmVariant variant, double t0, double t1,
                     const HistoryView& w_history, const HistoryView& y_history) {
  const bool freeze_time = variant == EmVariant::frozen_time || variant == EmVariant::frozen_both;
  const double s = freeze_time ? t0 : 0.5 * (t0 + t1);
  return policy.drift(s, w_history, y_history) * (t1 - t0);
}

namespace {

constexpr std::size_t kConstHistoryKnots = 2;

// Serves HistoryView objects over the W source as the variant prescribes:
// the original path truncated at t_i, the chord version, or a constant for a
// message symbol.
class WHistoryCursor {
 public:
  WHistoryCursor(const DriftSource& w, const SamplingGrid& out_grid, EmVariant variant)
      : use_chord_(variant == EmVariant::piecewise_message || variant == EmVariant::frozen_both) {
    if (w.is_message()) {
      const_times_[0] = 0.0;
      const_times_[1] = out_grid.horizon();
      const_values_[0] = const_values_[1] = w.symbol();
      message_ = true;
      return;
    }
    const SamplePath& p = w.path();
    const double tol = 1e-12 * std::max(1.0, out_grid.horizon());
    if (std::abs(p.grid()->horizon() - out_grid.horizon()) > tol)
      throw std::invalid_argument("input path horizon must match the output grid");
    if (use_chord_) {
      chord_values_.resize(out_grid.points());
      for (std::size_t i = 0; i < out_grid.points(); ++i)
        chord_values_[i] = p.at(std::min(out_grid.time(i), p.grid()->horizon()));
      times_ = out_grid.times().data();
      values_ = chord_values_.data();
      count_ = out_grid.points();
    } else {
      times_ = p.grid()->times().data();
      values_ = p.values().data();
      count_ = p.size();
    }
  }

  // History frozen at t (knots with time <= t). Advance-only.
  HistoryView at(double t) {
    if (message_) return HistoryView(const_times_, const_values_, kConstHistoryKnots);
    while (cursor_ + 1 < count_ && times_[cursor_ + 1] <= t) ++cursor_;
    return HistoryView(times_, values_, cursor_ + 1);
  }

 private:
  bool use_chord_;
  bool message_ = false;
  double const_times_[kConstHistoryKnots] = {0.0, 0.0};
  double const_values_[kConstHistoryKnots] = {0.0, 0.0};
  std::vector<double> chord_values_;
  const double* times_ = nullptr;
  const double* values_ = nullptr;
  std::size_t count_ = 0;
  std::size_t cursor_ = 0;
};

void check_noise_size(const SamplingGrid& grid, std::span<const double> noise) {
  if (noise.size() != grid.steps())
    throw std::invalid_argument("noise increment count must match grid step count");
}

}  // namespace

SamplePath simulate_em(const FeedbackPolicy& policy, const DriftSource& w, const GridPtr& grid,
                       EmVariant variant, std::span<const double> noise_increments) {
  check_noise_size(*grid, noise_increments);
  const auto& t = grid->times();
  WHistoryCursor wcur(w, *grid, variant);
  std::vector<double> y(grid->points());
  y[0] = 0.0;
  for (std::size_t i = 0; i < grid->steps(); ++i) {
    const HistoryView yv(t.data(), y.data(), i + 1);
    const HistoryView wv = wcur.at(t[i]);
    const double d = em_step_drift(policy, variant, t[i], t[i + 1], wv, yv);
    if (!std::isfinite(d)) throw simulation_fault("drift returned a non-finite value", i);
    y[i + 1] = y[i] + (d + noise_increments[i]);
  }
  return SamplePath(grid, std::move(y));
}

SamplePath simulate_exact_sampled(const ExactChannel& channel, double message_symbol,
                                  const GridPtr& grid, std::span<const double> noise_increments) {
  check_noise_size(*grid, noise_increments);
  if (channel.kind == ExactChannel::Kind::linear_output)
    throw not_exactly_solvable(
        "linear output feedback needs its own transition noise; use the stream overload");
  double drift_value = 0.0;
  switch (channel.kind) {
    case ExactChannel::Kind::zero: drift_value = 0.0; break;
    case ExactChannel::Kind::constant_drift: drift_value = channel.c; break;
    case ExactChannel::Kind::message_scaled: drift_value = channel.c * message_symbol; break;
    case ExactChannel::Kind::linear_output: break;
  }
  std::vector<double> y(grid->points());
  y[0] = 0.0;
  for (std::size_t i = 0; i < grid->steps(); ++i) {
    const double d = drift_value * (grid->time(i + 1) - grid->time(i));
    y[i + 1] = y[i] + (d + noise_increments[i]);
  }
  return SamplePath(grid, std::move(y));
}

SamplePath simulate_exact_sampled(const ExactChannel& channel, double message_symbol,
                                  const GridPtr& grid, const RngStream& rng) {
  if (channel.kind == ExactChannel::Kind::linear_output) {
    const double theta = channel.theta;
    if (!(theta > 0.0)) throw std::invalid_argument("linear output gain must be positive");
    std::vector<double> y(grid->points());
    y[0] = 0.0;
    for (std::size_t i = 0; i < grid->steps(); ++i) {
      const double d = grid->step(i);
      const double phi = std::exp(-theta * d);
      const double sd = std::sqrt((1.0 - phi * phi) / (2.0 * theta));
      y[i + 1] = phi * y[i] + sd * rng.gaussian_at(i);
    }
    return SamplePath(grid, std::move(y));
  }
  return simulate_exact_sampled(channel, message_symbol, grid, brownian_increments(*grid, rng));
}

SamplePath simulate_mac(const std::vector<MacUser>& users, const GridPtr& grid, EmVariant variant,
                        std::span<const double> noise_increments) {
  if (users.empty()) throw std::invalid_argument("MAC needs at least one user");
  check_noise_size(*grid, noise_increments);
  const auto& t = grid->times();
  std::vector<WHistoryCursor> cursors;
  cursors.reserve(users.size());
  for (const auto& u : users) cursors.emplace_back(u.w, *grid, variant);
  std::vector<double> y(grid->points());
  y[0] = 0.0;
  for (std::size_t i = 0; i < grid->steps(); ++i) {
    const HistoryView yv(t.data(), y.data(), i + 1);
    double d = 0.0;
    for (std::size_t u = 0; u < users.size(); ++u) {
      const HistoryView wv = cursors[u].at(t[i]);
      d += em_step_drift(users[u].policy, variant, t[i], t[i + 1], wv, yv);
    }
    if (!std::isfinite(d)) throw simulation_fault("drift returned a non-finite value", i);
    y[i + 1] = y[i] + (d + noise_increments[i]);
  }
  return SamplePath(grid, std::move(y));
}

namespace {

// Lower Cholesky factor with a small PSD tolerance; unit diagonal required.
std::vector<std::vector<double>> cholesky_psd(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("correlation matrix must be square");
    if (std::abs(m[i][i] - 1.0) > 1e-12)
      throw std::invalid_argument("correlation matrix must have a unit diagonal");
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(m[i][j] - m[j][i]) > 1e-12)
        throw std::invalid_argument("correlation matrix must be symmetric");
  }
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s < -1e-12) throw std::invalid_argument("correlation matrix is not PSD");
        l[i][i] = std::sqrt(std::max(s, 0.0));
      } else {
        l[i][j] = l[j][j] > 0.0 ? s / l[j][j] : 0.0;
      }
    }
  }
  return l;
}

}  // namespace

void ChannelSpec::validate() const {
  for (double p : power)
    if (!(p > 0.0)) throw std::invalid_argument("powers must be positive");
  for (double s : snr)
    if (!(s >= 0.0)) throw std::invalid_argument("snr must be nonnegative");
  if (!noise_corr.empty()) {
    if (noise_corr.size() != snr.size())
      throw std::invalid_argument("correlation matrix size must match receiver count");
    (void)cholesky_psd(noise_corr);
  }
  if (physically_degraded) {
    if (!(n1 > 0.0) || !(n2 >= 0.0))
      throw std::invalid_argument("degraded mode needs N1 > 0 and N2 >= 0");
  }
}

std::vector<SamplePath> simulate_bc(const MacUser& input, const ChannelSpec& spec,
                                    const GridPtr& grid, EmVariant variant, const RngStream& rng) {
  if (spec.role != ChannelSpec::Role::bc) throw std::invalid_argument("spec role must be bc");
  spec.validate();
  const auto& t = grid->times();
  WHistoryCursor wcur(input.w, *grid, variant);

  if (spec.physically_degraded) {
    const double s1 = std::sqrt(spec.n1);
    const double s2 = std::sqrt(spec.n2);
    std::vector<double> y1(grid->points()), y2(grid->points());
    y1[0] = y2[0] = 0.0;
    for (std::size_t i = 0; i < grid->steps(); ++i) {
      const double sq = std::sqrt(grid->step(i));
      const double b1 = sq * rng.gaussian_at(2 * i);
      const double b2 = sq * rng.gaussian_at(2 * i + 1);
      const HistoryView yv(t.data(), y1.data(), i + 1);
      const HistoryView wv = wcur.at(t[i]);
      const double d = em_step_drift(input.policy, variant, t[i], t[i + 1], wv, yv);
      if (!std::isfinite(d)) throw simulation_fault("drift returned a non-finite value", i);
      y1[i + 1] = y1[i] + (d + s1 * b1);
      y2[i + 1] = y2[i] + (d + (s1 * b1 + s2 * b2));
    }
    std::vector<SamplePath> out;
    out.emplace_back(grid, std::move(y1));
    out.emplace_back(grid, std::move(y2));
    return out;
  }

  const std::size_t m = spec.snr.size();
  if (m == 0) throw std::invalid_argument("bc needs at least one receiver");
  std::vector<std::vector<double>> chol;
  if (!spec.noise_corr.empty()) chol = cholesky_psd(spec.noise_corr);
  std::vector<double> scale(m);
  for (std::size_t u = 0; u < m; ++u) scale[u] = std::sqrt(spec.snr[u]);

  std::vector<std::vector<double>> y(m, std::vector<double>(grid->points(), 0.0));
  std::vector<double> xi(m), z(m);
  for (std::size_t i = 0; i < grid->steps(); ++i) {
    const double sq = std::sqrt(grid->step(i));
    for (std::size_t u = 0; u < m; ++u) xi[u] = rng.gaussian_at(i * m + u);
    if (chol.empty()) {
      z = xi;
    } else {
      for (std::size_t u = 0; u < m; ++u) {
        double s = 0.0;
        for (std::size_t k = 0; k <= u; ++k) s += chol[u][k] * xi[k];
        z[u] = s;
      }
    }
    const HistoryView yv(t.data(), y[0].data(), i + 1);
    const HistoryView wv = wcur.at(t[i]);
    const double d = em_step_drift(input.policy, variant, t[i], t[i + 1], wv, yv);
    if (!std::isfinite(d)) throw simulation_fault("drift returned a non-finite value", i);
    for (std::size_t u = 0; u < m; ++u) y[u][i + 1] = y[u][i] + (scale[u] * d + sq * z[u]);
  }
  std::vector<SamplePath> out;
  out.reserve(m);
  for (std::size_t u = 0; u < m; ++u) out.emplace_back(grid, std::move(y[u]));
  return out;
}

PowerAudit audit_power(const SamplePath& x, double power_limit, double horizon) {
  if (!(power_limit >= 0.0)) throw std::invalid_argument("power limit must be nonnegative");
  const auto& g = *x.grid();
  if (std::abs(g.horizon() - horizon) > 1e-12 * std::max(1.0, horizon))
    throw std::invalid_argument("audit horizon must match the path grid");
  double acc = 0.0;
  for (std::size_t i = 0; i < g.steps(); ++i)
    acc += 0.5 * (x[i] * x[i] + x[i + 1] * x[i + 1]) * g.step(i);
  PowerAudit audit;
  audit.measured = acc / horizon;
  audit.pass = audit.measured <= power_limit * (1.0 + 1e-9);
  return audit;
}

}  // namespace ctgauss
