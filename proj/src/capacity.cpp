#include "ctgauss/capacity.hpp"

#include <cmath>
#include <stdexcept>

#include "ctgauss/errors.hpp"

namespace ctgauss {

double bandlimited_capacity(double power, double bandwidth) {
  if (!(power > 0.0)) throw std::invalid_argument("power must be positive");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  return bandwidth * std::log1p(power / (2.0 * bandwidth));
}

double infinite_bandwidth_capacity(double power) {
  if (!(power >= 0.0)) throw std::invalid_argument("power must be nonnegative");
  return 0.5 * power;
}

bool RateRegion::contains(const std::vector<double>& rate) const {
  if (rate.size() != dimension) return false;
  for (double r : rate)
    if (r < -1e-12) return false;
  for (const auto& c : constraints) {
    double v = 0.0;
    for (std::size_t i = 0; i < dimension; ++i) v += c.coeff[i] * rate[i];
    if (v > c.bound + 1e-12 * std::max(1.0, std::abs(c.bound))) return false;
  }
  return true;
}

RateRegion mac_region(const std::vector<double>& powers) {
  if (powers.empty()) throw std::invalid_argument("need at least one user");
  if (powers.size() > 20) throw std::invalid_argument("too many users for corner enumeration");
  for (double p : powers)
    if (!(p > 0.0)) throw std::invalid_argument("powers must be positive");
  const std::size_t m = powers.size();
  RateRegion region;
  region.dimension = m;
  for (std::size_t i = 0; i < m; ++i) {
    RateRegion::Constraint c;
    c.coeff.assign(m, 0.0);
    c.coeff[i] = 1.0;
    c.bound = powers[i] / 2.0;
    region.constraints.push_back(std::move(c));
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<double> corner(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) corner[i] = powers[i] / 2.0;
    region.corners.push_back(std::move(corner));
  }
  return region;
}

RateRegion bc_region(double power, const std::vector<double>& snr) {
  if (!(power > 0.0)) throw std::invalid_argument("power must be positive");
  if (snr.empty()) throw std::invalid_argument("need at least one receiver");
  for (double s : snr)
    if (!(s > 0.0))
      throw std::invalid_argument("zero snr forces that user's rate to 0; drop the user");
  const std::size_t m = snr.size();
  RateRegion region;
  region.dimension = m;
  RateRegion::Constraint c;
  c.coeff.resize(m);
  for (std::size_t i = 0; i < m; ++i) c.coeff[i] = 1.0 / snr[i];
  c.bound = power / 2.0;
  region.constraints.push_back(std::move(c));
  region.corners.emplace_back(m, 0.0);  // origin
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> corner(m, 0.0);
    corner[i] = snr[i] * power / 2.0;
    region.corners.push_back(std::move(corner));
  }
  return region;
}

RateRegion degraded_bc_region(double power, double n1, double n2, bool /*feedback*/) {
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw std::invalid_argument("noise levels must be positive");
  return bc_region(power, {1.0 / n1, 1.0 / (n1 + n2)});
}

double rho_star_residual(double power, double rho) {
  const double lhs = rho * (1.0 + (power + 1.0) * (1.0 + power * (1.0 - rho) / 2.0));
  const double rhs = power * (power + 2.0) * (1.0 - rho) / 2.0;
  return lhs - rhs;
}

double rho_star(double power) {
  if (!(power > 0.0)) throw std::invalid_argument("power must be positive");
  double lo = 0.0, hi = 1.0;
  const double f_lo = rho_star_residual(power, lo);
  const double f_hi = rho_star_residual(power, hi);
  if (!(f_lo < 0.0) || !(f_hi > 0.0))
    throw numerical_fault("rho* bracket lost its sign change; check the defining equation");
  // Bisection; ~90 halvings take the residual itself (not just the bracket)
  // below 1e-12 for any reasonable P.
  double mid = 0.5;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double f = rho_star_residual(power, mid);
    if (std::abs(f) <= 1e-13) break;
    (f < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

FeedbackGainReport sk_bc_report(double power) {
  FeedbackGainReport r;
  r.power = power;
  r.rho = rho_star(power);
  r.per_user_rate = power * (1.0 + r.rho) / 4.0;
  r.sum_rate = power * (1.0 + r.rho) / 2.0;
  r.no_feedback_bound = infinite_bandwidth_capacity(power);
  r.gain = 1.0 + r.rho;
  return r;
}

double sk_rate_series(double power, double delta, std::size_t steps) {
  if (!(power > 0.0)) throw std::invalid_argument("power must be positive");
  if (!(delta > 0.0)) throw std::invalid_argument("stepsize must be positive");
  if (steps < 1) throw std::invalid_argument("need at least one step");
  const double rho = rho_star(power);
  const double per_step =
      std::log1p((power * delta * (1.0 + rho) / 2.0) / (1.0 + power * delta * (1.0 - rho) / 2.0));
  // The summand is step-independent, so the per-time rate is too; the step
  // count only fixes the horizon.
  return 0.5 * per_step / delta;
}

}  // namespace ctgauss
