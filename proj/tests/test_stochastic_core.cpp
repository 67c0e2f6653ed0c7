#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ctgauss/grid.hpp"
#include "ctgauss/path.hpp"
#include "ctgauss/process.hpp"
#include "ctgauss/rng.hpp"
#include "doctest.h"

using namespace ctgauss;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  std::size_t n = 0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = xs.size();
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(m.n);
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(m.n - 1);
  return m;
}

double covariance(const std::vector<double>& xs, const std::vector<double>& ys) {
  const Moments mx = moments(xs), my = moments(ys);
  double c = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) c += (xs[i] - mx.mean) * (ys[i] - my.mean);
  return c / static_cast<double>(xs.size() - 1);
}

}  // namespace

TEST_CASE("equidistant grid divides the horizon exactly") {
  const auto g = SamplingGrid::equidistant(1.0, 4);
  const std::vector<double> want{0.0, 0.25, 0.5, 0.75, 1.0};
  CHECK(g.times() == want);
  CHECK(g.max_step() == 0.25);
  CHECK(g.is_equidistant());

  const auto g1 = SamplingGrid::equidistant(2.0, 1);
  CHECK(g1.times() == std::vector<double>{0.0, 2.0});
}

TEST_CASE("dyadic grids nest bitwise") {
  const auto g2 = SamplingGrid::dyadic(1.7, 2);
  const auto g3 = SamplingGrid::dyadic(1.7, 3);
  for (std::size_t i = 0; i < g2.points(); ++i) CHECK(g2.time(i) == g3.time(2 * i));
}

TEST_CASE("grid rejects bad input") {
  CHECK_THROWS_AS(SamplingGrid::equidistant(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(SamplingGrid::equidistant(-1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(SamplingGrid::equidistant(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(SamplingGrid::from_times({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SamplingGrid::from_times({0.1, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SamplingGrid::from_times({0.0}), std::invalid_argument);
}

TEST_CASE("max step is recomputed from the times") {
  const auto g = SamplingGrid::from_times({0.0, 0.1, 0.7, 1.0});
  CHECK(g.max_step() == doctest::Approx(0.6));
  CHECK_FALSE(g.is_equidistant());
}

TEST_CASE("linear interpolation on paths") {
  const SamplePath p(make_grid_from_times({0.0, 1.0}), {0.0, 2.0});
  CHECK(p.at(0.5) == doctest::Approx(1.0));
  CHECK(p.at(0.0) == 0.0);
  CHECK(p.at(1.0) == 2.0);

  const SamplePath tri(make_grid_from_times({0.0, 0.5, 1.0}), {0.0, 1.0, 0.0});
  CHECK(tri.at(0.75) == doctest::Approx(0.5));
  CHECK(tri.at(0.5) == 1.0);  // stored value exactly at a knot
  CHECK_THROWS_AS(tri.at(-0.1), std::out_of_range);
  CHECK_THROWS_AS(tri.at(1.1), std::out_of_range);
}

TEST_CASE("history view freezes past the horizon") {
  const double times[3] = {0.0, 0.5, 1.0};
  const double values[3] = {0.0, 2.0, -4.0};
  const HistoryView h(times, values, 2);  // history up to t = 0.5
  CHECK(h.value(0.25) == doctest::Approx(1.0));
  CHECK(h.value(0.5) == 2.0);
  CHECK(h.value(0.9) == 2.0);  // frozen at the last knot
  CHECK(h.sup_abs() == 2.0);
}

TEST_CASE("philox block matches the published test vectors") {
  // Salmon et al., SC'11 known-answer vectors for Philox4x32-10.
  const auto zero = philox_block(0, 0, 0);
  CHECK(zero == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  const auto ones = philox_block(0xffffffffffffffffull, 0xffffffffffffffffull,
                                 0xffffffffffffffffull);
  CHECK(ones == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  // digits-of-pi vector: ctr {243f6a88, 85a308d3, 13198a2e, 03707344},
  // key {a4093822, 299f31d0}
  const auto pi = philox_block(0x85a308d3243f6a88ull, 0x0370734413198a2eull,
                               0x299f31d0a4093822ull);
  CHECK(pi == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("counter-based stream is pure in (seed, stream, draw)") {
  const RngStream a(42, 7);
  const RngStream b(42, 7);
  RngStream seq(42, 7);
  for (std::uint64_t i = 0; i < 64; ++i) {
    CHECK(a.gaussian_at(i) == b.gaussian_at(i));
    CHECK(seq.next_gaussian() == a.gaussian_at(i));
  }
  const RngStream other_stream(42, 8);
  const RngStream other_seed(43, 7);
  CHECK(a.gaussian_at(0) != other_stream.gaussian_at(0));
  CHECK(a.gaussian_at(0) != other_seed.gaussian_at(0));
  CHECK(a.uniform_at(0) != a.uniform_at(1));
  CHECK(a.uniform_at(3) >= 0.0);
  CHECK(a.uniform_at(3) < 1.0);
}

TEST_CASE("stream gaussians have standard moments") {
  const RngStream rng(1234, 0);
  std::vector<double> xs(100000);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = rng.gaussian_at(i);
  const Moments m = moments(xs);
  const double n = static_cast<double>(m.n);
  CHECK(std::abs(m.mean) < 3.0 / std::sqrt(n));
  CHECK(std::abs(m.var - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("distinct streams are uncorrelated") {
  const RngStream a(9, 0), b(9, 1);
  std::vector<double> xs(100000), ys(100000);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = a.gaussian_at(i);
    ys[i] = b.gaussian_at(i);
  }
  CHECK(std::abs(covariance(xs, ys)) < 3.0 / std::sqrt(100000.0));
}

TEST_CASE("brownian path starts at zero and reproduces bitwise") {
  const auto grid = make_equidistant_grid(1.0, 10);
  const SamplePath p1 = brownian_path(grid, RngStream(5, 11));
  const SamplePath p2 = brownian_path(grid, RngStream(5, 11));
  CHECK(p1[0] == 0.0);
  CHECK(p1.values() == p2.values());
  const SamplePath p3 = brownian_path(grid, RngStream(5, 12));
  CHECK(p1.values() != p3.values());
}

TEST_CASE("brownian increments have variance equal to the step") {
  const auto grid = make_equidistant_grid(1.0, 10);
  constexpr std::size_t kPaths = 100000;
  std::vector<std::vector<double>> incs(10, std::vector<double>(kPaths));
  std::vector<double> b3(kPaths), b7(kPaths);
  for (std::size_t p = 0; p < kPaths; ++p) {
    const SamplePath path = brownian_path(grid, RngStream(99, p));
    for (std::size_t i = 0; i < 10; ++i) incs[i][p] = path[i + 1] - path[i];
    b3[p] = path[3];
    b7[p] = path[7];
  }
  for (std::size_t i = 0; i < 10; ++i) {
    const Moments m = moments(incs[i]);
    CHECK(std::abs(m.var - 0.1) < 0.05 * 0.1);
  }
  // Cov(B(s), B(t)) = min(s, t)
  CHECK(std::abs(covariance(b3, b7) - 0.3) < 0.05 * 0.3);
}

TEST_CASE("bridge restriction is bitwise the coarser bridge") {
  const RngStream rng(7, 3);
  const BrownianBridge deep(2.0, 8, rng);
  const BrownianBridge shallow(2.0, 4, rng);
  for (unsigned level = 0; level <= 4; ++level) {
    const SamplePath a = deep.path(level);
    const SamplePath b = shallow.path(level);
    CHECK(a.values() == b.values());
  }
  CHECK(deep.path(3).values() == deep.path(8).restrict_to(make_dyadic_grid(2.0, 3)).values());
}

TEST_CASE("bridge law matches sequential brownian increments") {
  // Two-sample moment test: bridge on the dyadic level-3 grid vs directly
  // generated increments on the same grid.
  constexpr std::size_t kPaths = 100000;
  const auto grid = make_dyadic_grid(1.0, 3);
  std::vector<std::vector<double>> bridge_inc(8, std::vector<double>(kPaths));
  std::vector<std::vector<double>> direct_inc(8, std::vector<double>(kPaths));
  for (std::size_t p = 0; p < kPaths; ++p) {
    const BrownianBridge bridge(1.0, 3, RngStream(21, 2 * p));
    const auto bi = bridge.level_increments(3);
    const auto di = brownian_increments(*grid, RngStream(21, 2 * p + 1));
    for (std::size_t i = 0; i < 8; ++i) {
      bridge_inc[i][p] = bi[i];
      direct_inc[i][p] = di[i];
    }
  }
  for (std::size_t i = 0; i < 8; ++i) {
    const Moments mb = moments(bridge_inc[i]);
    const Moments md = moments(direct_inc[i]);
    const double n = static_cast<double>(kPaths);
    // 3-sigma two-sample bands on mean and variance of N(0, 1/8) samples.
    const double se_mean = std::sqrt(2.0 * 0.125 / n);
    const double se_var = 0.125 * std::sqrt(2.0 * 2.0 / n);
    CHECK(std::abs(mb.mean - md.mean) < 3.0 * se_mean);
    CHECK(std::abs(mb.var - md.var) < 3.0 * se_var);
  }
}

TEST_CASE("ou params validate") {
  CHECK_THROWS_AS(OUParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(OUParams(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(OUParams(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("ou path is stationary at every knot") {
  const auto grid = make_equidistant_grid(1.0, 10);
  constexpr std::size_t kPaths = 100000;
  std::vector<std::vector<double>> knots(grid->points(), std::vector<double>(kPaths));
  for (std::size_t p = 0; p < kPaths; ++p) {
    const SamplePath x = ou_path(OUParams(1.0, 1.0), grid, RngStream(31, p));
    for (std::size_t i = 0; i < grid->points(); ++i) knots[i][p] = x[i];
  }
  for (std::size_t i = 0; i < grid->points(); ++i) {
    const Moments m = moments(knots[i]);
    CHECK(std::abs(m.var - 1.0) < 0.05);
  }
}

TEST_CASE("ou autocovariance decays as P e^{-a tau}") {
  const auto grid = make_equidistant_grid(4.0, 4);  // unit steps
  constexpr std::size_t kPaths = 100000;
  std::vector<double> x0(kPaths), x1(kPaths);
  for (std::size_t p = 0; p < kPaths; ++p) {
    const SamplePath x = ou_path(OUParams(1.0, 1.0), grid, RngStream(77, p));
    x0[p] = x[0];
    x1[p] = x[1];
  }
  const double want = std::exp(-1.0);
  CHECK(std::abs(covariance(x0, x1) - want) < 0.05 * want);
}

TEST_CASE("fast mean reversion decorrelates consecutive knots") {
  const auto grid = make_equidistant_grid(1.0, 10);  // step 0.1
  constexpr std::size_t kPaths = 100000;
  std::vector<double> x0(kPaths), x1(kPaths);
  for (std::size_t p = 0; p < kPaths; ++p) {
    const SamplePath x = ou_path(OUParams(1000.0, 1.0), grid, RngStream(13, p));
    x0[p] = x[4];
    x1[p] = x[5];
  }
  const Moments m0 = moments(x0), m1 = moments(x1);
  const double corr = covariance(x0, x1) / std::sqrt(m0.var * m1.var);
  CHECK(std::abs(corr) < 0.01);
}

TEST_CASE("ou one-step transition is exact for coarse and fine steps") {
  for (const double delta : {0.01, 0.1, 1.0}) {
    const double a = 1.3, p = 0.7;
    const auto grid = make_equidistant_grid(2.0 * delta, 2);
    constexpr std::size_t kTrials = 100000;
    std::vector<double> residual(kTrials);
    const double phi = std::exp(-a * delta);
    for (std::size_t t = 0; t < kTrials; ++t) {
      const SamplePath x = ou_path(OUParams(a, p), grid, RngStream(55, t));
      residual[t] = x[1] - phi * x[0];
    }
    const Moments m = moments(residual);
    const double want_var = p * (1.0 - phi * phi);
    const double n = static_cast<double>(kTrials);
    CHECK(std::abs(m.mean) < 3.0 * std::sqrt(want_var / n));
    CHECK(std::abs(m.var - want_var) < 3.0 * want_var * std::sqrt(2.0 / n));
  }
}

TEST_CASE("path restriction requires nested grids") {
  const RngStream rng(3, 0);
  const BrownianBridge bridge(1.0, 4, rng);
  const SamplePath fine = bridge.path(4);
  CHECK_THROWS_AS(fine.restrict_to(make_equidistant_grid(1.0, 3)), std::invalid_argument);
}
