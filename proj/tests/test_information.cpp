#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ctgauss/errors.hpp"
#include "ctgauss/information.hpp"
#include "ctgauss/policy.hpp"
#include "ctgauss/process.hpp"
#include "ctgauss/quadrature.hpp"
#include "ctgauss/riccati.hpp"
#include "doctest.h"

using namespace ctgauss;

namespace {

MessageChannel binary_exact(double c) {
  return MessageChannel::exact(ExactChannel{ExactChannel::Kind::message_scaled, c, 0.0},
                               Message::uniform(2), c * c);
}

MessageChannel binary_feedback(double c, double kappa, double clamp) {
  const double peak = c + kappa * clamp;
  return MessageChannel::em(clamped_feedback_policy(c, kappa, clamp),
                            EmVariant::frozen_history, Message::uniform(2), peak * peak);
}

double comb(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

TEST_CASE("girsanov log density basics") {
  const auto grid = make_equidistant_grid(1.0, 10);
  const SamplePath zero(grid, std::vector<double>(grid->points(), 0.0));
  const SamplePath y = brownian_path(grid, RngStream(1, 1));
  CHECK(girsanov_logdensity(zero, y) == 0.0);

  // drift = c along y = c t (a noise-free record): c Y(T) - c^2 T / 2.
  std::vector<double> ramp(grid->points());
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = grid->time(i);
  const SamplePath drift(grid, std::vector<double>(grid->points(), 1.0));
  const SamplePath ramp_path(grid, ramp);
  CHECK(girsanov_logdensity(drift, ramp_path) == doctest::Approx(0.5).epsilon(1e-12));

  const SamplePath other(make_equidistant_grid(1.0, 5),
                         std::vector<double>(6, 0.0));
  CHECK_THROWS_AS(girsanov_logdensity(drift, other), std::invalid_argument);
}

TEST_CASE("girsanov exponential is a unit-mean martingale under the signal law") {
  // Y follows the unit-drift recursion; E[exp(-logdensity)] = 1 exactly for
  // the discretized channel.
  const auto grid = make_equidistant_grid(1.0, 16);
  constexpr std::size_t kTrials = 100000;
  double mean = 0.0, sq = 0.0;
  const SamplePath drift(grid, std::vector<double>(grid->points(), 1.0));
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto inc = brownian_increments(*grid, RngStream(5, t));
    std::vector<double> y(grid->points(), 0.0);
    for (std::size_t i = 0; i < grid->steps(); ++i)
      y[i + 1] = y[i] + (grid->step(i) + inc[i]);
    const double v = std::exp(-girsanov_logdensity(drift, SamplePath(grid, y)));
    mean += v;
    sq += v * v;
  }
  mean /= kTrials;
  sq /= kTrials;
  const double se = std::sqrt(std::max(0.0, sq - mean * mean) / kTrials);
  CHECK(std::abs(mean - 1.0) < 3.0 * se);
}

TEST_CASE("mi estimators refuse trial counts with meaningless error bars") {
  MiOptions opt;
  opt.trials = 99;
  CHECK_THROWS_AS(mi_grid_density(binary_exact(1.0), make_equidistant_grid(1.0, 8), opt),
                  std::invalid_argument);
}

TEST_CASE("singleton message carries zero information, exactly") {
  const MessageChannel ch = MessageChannel::exact(
      ExactChannel{ExactChannel::Kind::constant_drift, 1.0, 0.0}, Message::uniform(1), 1.0);
  MiOptions opt;
  opt.trials = 500;
  const MIEstimate est = mi_grid_density(ch, make_equidistant_grid(1.0, 16), opt);
  CHECK(est.value == 0.0);
  CHECK(est.stderror == 0.0);
}

TEST_CASE("binary message MI matches the quadrature oracle") {
  MiOptions opt;
  opt.trials = 20000;
  const MIEstimate est = mi_grid_density(binary_exact(1.0), make_dyadic_grid(1.0, 8), opt);
  const double oracle = binary_awgn_mi(1.0);
  CHECK(est.stderror <= 0.01);
  CHECK(std::abs(est.value - oracle) <= 3.0 * est.stderror);
  // estimator sanity: within the trivial bounds
  CHECK(est.value >= -2.0 * est.stderror);
  CHECK(est.value <= std::log(2.0) + 2.0 * est.stderror);
}

TEST_CASE("4-ary message MI matches a mixture quadrature oracle") {
  const double c = 0.6, T = 1.0;
  // I(M; Y(T)) for the 4-PAM sufficient statistic Y(T) ~ N(c m T, T),
  // m in {-3,-1,1,3}, by Simpson over the mixture.
  const double mu[4] = {-3.0 * c * T, -1.0 * c * T, 1.0 * c * T, 3.0 * c * T};
  auto density = [&](double y, int m) {
    const double z = (y - mu[m]) / std::sqrt(T);
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.141592653589793 * T);
  };
  const int panels = 6000;
  const double lo = -18.0, hi = 18.0, h = (hi - lo) / panels;
  double oracle = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double y = lo + h * i;
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    double mix = 0.0;
    for (int m = 0; m < 4; ++m) mix += 0.25 * density(y, m);
    double val = 0.0;
    for (int m = 0; m < 4; ++m) {
      const double f = density(y, m);
      if (f > 0.0 && mix > 0.0) val += 0.25 * f * std::log(f / mix);
    }
    oracle += w * val;
  }
  oracle *= h / 3.0;

  const MessageChannel ch = MessageChannel::exact(
      ExactChannel{ExactChannel::Kind::message_scaled, c, 0.0}, Message::uniform(4),
      9.0 * c * c);
  MiOptions opt;
  opt.trials = 20000;
  const MIEstimate est = mi_grid_density(ch, make_dyadic_grid(T, 6), opt);
  CHECK(std::abs(est.value - oracle) <= 3.0 * est.stderror);
  CHECK(est.value <= std::log(4.0) + 2.0 * est.stderror);
}

TEST_CASE("likelihood ratios are invariant under common drift shifts") {
  // Shifting every hypothesis's step drift and the output increments by the
  // same amount changes nothing message-dependent. This is the mechanism
  // that makes message-independent feedback terms drop out of the MI.
  const auto grid = make_equidistant_grid(1.0, 16);
  const std::size_t n = grid->steps();
  const std::size_t k = 3;
  const Message msg = Message::uniform(k);
  const RngStream rng(404, 0);
  std::uint64_t draw = 0;
  for (int rep = 0; rep < 64; ++rep) {
    std::vector<double> drifts(k * n), y(n + 1, 0.0), shift(n);
    for (auto& d : drifts) d = rng.gaussian_at(draw++) * 0.3;
    for (auto& s : shift) s = rng.gaussian_at(draw++) * 0.3;
    for (std::size_t i = 0; i < n; ++i)
      y[i + 1] = y[i] + rng.gaussian_at(draw++) * std::sqrt(grid->step(i));

    std::vector<double> lw(k);
    accumulate_log_weights(*grid, y, drifts, k, n, lw);
    const double base = lw[0] - log_mixture(lw, msg.prior);

    std::vector<double> drifts2 = drifts;
    std::vector<double> y2 = y;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < k; ++m) drifts2[m * n + i] += shift[i];
      y2[i + 1] = y2[i] + ((y[i + 1] - y[i]) + shift[i]);
    }
    accumulate_log_weights(*grid, y2, drifts2, k, n, lw);
    const double shifted = lw[0] - log_mixture(lw, msg.prior);
    CHECK(shifted == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("feedback channel MI stabilizes across grids") {
  MiOptions opt;
  opt.trials = 20000;
  opt.bridge_max_level = 8;
  const MessageChannel ch = binary_feedback(1.0, 0.5, 2.0);
  const MIEstimate a = mi_grid_density(ch, make_dyadic_grid(1.0, 6), opt);
  const MIEstimate b = mi_grid_density(ch, make_dyadic_grid(1.0, 8), opt);
  CHECK(std::abs(a.value - b.value) <= 3.0 * comb(a.stderror, b.stderror));
}

TEST_CASE("refinement monotonicity on nested grids") {
  MiOptions opt;
  opt.trials = 10000;
  opt.bridge_max_level = 8;
  const MessageChannel ch = binary_exact(1.0);
  double prev = -1.0, prev_se = 0.0;
  for (unsigned level : {6u, 7u, 8u}) {
    const MIEstimate est = mi_grid_density(ch, make_dyadic_grid(1.0, level), opt);
    CHECK(est.value >= prev - 2.0 * comb(est.stderror, prev_se));
    prev = est.value;
    prev_se = est.stderror;
  }
}

TEST_CASE("duncan formula plumbing") {
  CHECK(mi_duncan(0.0, 1.0) == 0.0);
  CHECK(mi_duncan(2.0, 0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(mi_duncan(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mi_duncan(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("duncan route through the riccati oracle approaches capacity") {
  const RiccatiSolution sol = riccati_ou(OUParams(50.0, 2.0), 1.0, 5.0);
  // mi_nats already is (snr/2) int Sigma; check the identity explicitly.
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < sol.time.size(); ++i)
    integral += 0.5 * (sol.variance[i] + sol.variance[i + 1]) * (sol.time[i + 1] - sol.time[i]);
  CHECK(mi_duncan(integral, 1.0) == doctest::Approx(sol.mi_nats).epsilon(1e-6));
  CHECK(sol.mi_nats / 5.0 >= 0.95);
  CHECK(sol.mi_nats / 5.0 <= 1.00);
}

TEST_CASE("duncan monte carlo agrees with the grid density estimator") {
  MiOptions opt;
  opt.trials = 20000;
  const auto grid = make_dyadic_grid(1.0, 8);
  const MIEstimate duncan = mi_duncan_monte_carlo(binary_exact(1.0), grid, opt);
  MiOptions opt2 = opt;
  opt2.stream_base = kStreamStride * opt.trials;  // independent streams
  const MIEstimate grid_est = mi_grid_density(binary_exact(1.0), grid, opt2);
  CHECK(std::abs(duncan.value - grid_est.value) <=
        3.0 * comb(duncan.stderror, grid_est.stderror));
  CHECK(duncan.method == MiMethod::duncan);
}

TEST_CASE("directed information vanishes when the drift ignores the message") {
  // Two hypotheses, one drift: every per-step term cancels identically.
  FeedbackPolicy p{[](double s, const HistoryView&, const HistoryView& y) {
                     return -0.5 * std::clamp(y.value(s), -2.0, 2.0);
                   },
                   0.5, 1.0, "message-free feedback"};
  const MessageChannel ch =
      MessageChannel::em(std::move(p), EmVariant::frozen_history, Message::uniform(2), 1.0);
  MiOptions opt;
  opt.trials = 2000;
  const MIEstimate est = directed_info_grid(ch, make_equidistant_grid(1.0, 32), opt);
  // Zero up to log-sum-exp rounding noise.
  CHECK(std::abs(est.value) <= std::max(2.0 * est.stderror, 1e-12));
  CHECK(est.stderror <= 1e-12);
}

TEST_CASE("directed information equals message MI without feedback") {
  MiOptions opt;
  opt.trials = 20000;
  const auto grid = make_dyadic_grid(1.0, 7);
  const MIEstimate directed = directed_info_grid(binary_exact(1.0), grid, opt);
  MiOptions opt2 = opt;
  opt2.stream_base = kStreamStride * opt.trials;
  const MIEstimate grid_est = mi_grid_density(binary_exact(1.0), grid, opt2);
  CHECK(std::abs(directed.value - grid_est.value) <=
        3.0 * comb(directed.stderror, grid_est.stderror));
}

TEST_CASE("directed information equals message MI with feedback") {
  MiOptions opt;
  opt.trials = 20000;
  const auto grid = make_dyadic_grid(1.0, 7);
  const MessageChannel ch = binary_feedback(1.0, 0.5, 2.0);
  const MIEstimate directed = directed_info_grid(ch, grid, opt);
  MiOptions opt2 = opt;
  opt2.stream_base = kStreamStride * opt.trials;
  const MIEstimate grid_est = mi_grid_density(ch, grid, opt2);
  CHECK(std::abs(directed.value - grid_est.value) <=
        3.0 * comb(directed.stderror, grid_est.stderror));
  // same trials, same streams: the chain rule makes them equal per-trial
  const MIEstimate paired = directed_info_grid(ch, grid, opt2);
  CHECK(paired.value == doctest::Approx(grid_est.value).epsilon(1e-9));

  // and the identity holds for the time-varying scenario too
  const MessageChannel pulse = MessageChannel::em(
      pulse_feedback_policy(1.0, 0.5, 2.0, 1.0), EmVariant::frozen_history,
      Message::uniform(2), 4.0);
  const MIEstimate pd = directed_info_grid(pulse, grid, opt2);
  const MIEstimate pg = mi_grid_density(pulse, grid, opt2);
  CHECK(pd.value == doctest::Approx(pg.value).epsilon(1e-9));
}

TEST_CASE("time-varying drift: per-variant MI matches its own closed form") {
  // With a deterministic antipodal waveform d_i per step, the discretized
  // channel has the scalar sufficient statistic sum d_i dY_i / delta_i, so
  // MI(n) = binary_awgn_mi(sum d_i^2 / delta_i). The frozen-time rules read
  // the waveform at the left knot and land on a different rho than the
  // live-s rules.
  const double c = 1.0, T = 1.0;
  const auto grid = make_dyadic_grid(T, 5);
  const double pi = 3.141592653589793238462643383279502884;
  MiOptions opt;
  opt.trials = 20000;
  auto rho_for = [&](bool frozen_time) {
    double rho = 0.0;
    for (std::size_t i = 0; i < grid->steps(); ++i) {
      const double s = frozen_time ? grid->time(i) : 0.5 * (grid->time(i) + grid->time(i + 1));
      const double d = c * std::sin(pi * s / (2.0 * T)) * grid->step(i);
      rho += d * d / grid->step(i);
    }
    return rho;
  };
  const double rho_mid = rho_for(false);
  const double rho_left = rho_for(true);
  CHECK(rho_mid != rho_left);

  const Message msg = Message::uniform(2);
  const MessageChannel mid = MessageChannel::em(pulse_feedback_policy(c, 0.0, 2.0, T),
                                                EmVariant::frozen_history, msg, c * c);
  const MessageChannel left = MessageChannel::em(pulse_feedback_policy(c, 0.0, 2.0, T),
                                                 EmVariant::frozen_time, msg, c * c);
  const MIEstimate est_mid = mi_grid_density(mid, grid, opt);
  const MIEstimate est_left = mi_grid_density(left, grid, opt);
  CHECK(std::abs(est_mid.value - binary_awgn_mi(rho_mid)) <= 3.0 * est_mid.stderror);
  CHECK(std::abs(est_left.value - binary_awgn_mi(rho_left)) <= 3.0 * est_left.stderror);
}

TEST_CASE("time-varying drift MI stabilizes under refinement, per variant") {
  const Message msg = Message::uniform(2);
  MiOptions opt;
  opt.trials = 10000;
  opt.bridge_max_level = 8;
  for (EmVariant v : {EmVariant::frozen_history, EmVariant::frozen_time}) {
    const MessageChannel ch =
        MessageChannel::em(pulse_feedback_policy(1.0, 0.5, 2.0, 1.0), v, msg, 4.0);
    std::vector<MIEstimate> est;
    for (unsigned level : {4u, 6u, 8u})
      est.push_back(mi_grid_density(ch, make_dyadic_grid(1.0, level), opt));
    // successive differences shrink
    const double d1 = std::abs(est[1].value - est[0].value);
    const double d2 = std::abs(est[2].value - est[1].value);
    CHECK(d2 <= d1 + 3.0 * comb(est[2].stderror, est[1].stderror));
    CHECK(d2 <= 3.0 * comb(est[2].stderror, est[1].stderror));
  }
}

TEST_CASE("converse bound holds on every estimate") {
  MiOptions opt;
  opt.trials = 5000;
  const double T = 1.0;
  const auto grid = make_dyadic_grid(T, 6);
  for (const MessageChannel& ch : {binary_exact(1.0), binary_feedback(1.0, 0.5, 2.0)}) {
    const MIEstimate est = mi_grid_density(ch, grid, opt);
    CHECK(est.value <= ch.power_ceiling() * T / 2.0 + 2.0 * est.stderror);
  }
}

TEST_CASE("i-mmse table: OU ratio decreases, limits are right") {
  const IMmseScenario ou{IMmseScenario::Kind::ou, 10.0, 1.0, 0.0};
  const IMmseReport report = i_mmse_check(ou, {0.5, 1.0, 2.0, 4.0, 8.0}, 5.0, 1e-3);
  CHECK(report.ratio_strictly_decreasing);
  REQUIRE(report.rows.size() == 5);
  for (const auto& row : report.rows) CHECK(std::isnan(row.half_smoothed));

  // snr -> 0: I/snr -> P T / 2 within 1%.
  const IMmseReport low = i_mmse_check(ou, {1e-3}, 5.0, 1e-4);
  CHECK(std::abs(low.rows[0].mi_over_snr - 2.5) <= 0.01 * 2.5);
}

TEST_CASE("i-mmse table: binary slope identity within 1e-3 nats") {
  const IMmseScenario bin{IMmseScenario::Kind::binary, 0.0, 0.0, 1.0};
  const IMmseReport report = i_mmse_check(bin, {1.0}, 1.0, 1e-3);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].slope_ok);
  CHECK(std::abs(report.rows[0].fd_slope - report.rows[0].half_smoothed) <= 1e-3);
}

TEST_CASE("i-mmse table input validation") {
  const IMmseScenario ou{IMmseScenario::Kind::ou, 10.0, 1.0, 0.0};
  CHECK_THROWS_AS(i_mmse_check(ou, {}, 1.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(i_mmse_check(ou, {1.0, 0.5}, 1.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(i_mmse_check(ou, {0.5, 1.0}, 1.0, 0.2), std::invalid_argument);
}

TEST_CASE("mac OU table collapses when one user is silent") {
  const MacOuMiTable t = mac_ou_mi_table(50.0, 1.0, 0.0, 5.0);
  CHECK(t.joint_rate == t.conditional1_rate);
  CHECK(t.marginal1_rate == t.joint_rate);
  CHECK(t.conditional2_rate == 0.0);
  CHECK(t.marginal2_rate == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mac OU table near-equality at fast mean reversion") {
  const MacOuMiTable t = mac_ou_mi_table(50.0, 1.0, 1.0, 5.0);
  CHECK(t.marginal1_rate == doctest::Approx(0.486).epsilon(0.01));
  CHECK(t.conditional1_rate == doctest::Approx(0.495).epsilon(0.01));
  CHECK(t.conditional1_rate - t.marginal1_rate <= 0.01);
  CHECK(t.marginal1_rate <= t.conditional1_rate);

  double prev_gap = std::numeric_limits<double>::infinity();
  for (double a : {5.0, 50.0, 500.0}) {
    const MacOuMiTable row = mac_ou_mi_table(a, 1.0, 1.0, 5.0);
    const double gap = row.conditional1_rate - row.marginal1_rate;
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK_THROWS_AS(mac_ou_mi_table(-1.0, 1.0, 1.0, 5.0), std::invalid_argument);
}
