#include "ctgauss/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ctgauss/errors.hpp"

namespace ctgauss {

double riccati_steady_state(double a, double P, double snr) {
  if (!(a > 0.0) || !(P > 0.0)) throw std::invalid_argument("need a > 0 and P > 0");
  if (!(snr >= 0.0)) throw std::invalid_argument("snr must be nonnegative");
  if (snr == 0.0) return P;
  return (-a + std::sqrt(a * a + 2.0 * a * P * snr)) / snr;
}

double riccati_default_dt(double a, double snr, double horizon) {
  return std::min(horizon / 1e4, 0.1 / (a * (1.0 + snr)));
}

RiccatiSolution riccati_ou(const OUParams& params, double snr, double horizon, double dt) {
  if (!(snr >= 0.0)) throw std::invalid_argument("snr must be nonnegative");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!(dt > 0.0) || dt > horizon / 100.0)
    throw std::invalid_argument("dt must be positive and at most T/100");

  const double a = params.mean_reversion;
  const double p = params.power;
  const auto f = [a, p, snr](double s) { return 2.0 * a * (p - s) + -snr * s * s; };

  const std::size_t steps = static_cast<std::size_t>(std::ceil(horizon / dt));
  const double h = horizon / static_cast<double>(steps);
  const double upper = p * (1.0 + 1e-6);

  RiccatiSolution sol;
  sol.time.resize(steps + 1);
  sol.variance.resize(steps + 1);
  sol.steady_state = riccati_steady_state(a, p, snr);

  double sigma = p;
  double integral = 0.0;
  sol.time[0] = 0.0;
  sol.variance[0] = sigma;
  for (std::size_t i = 0; i < steps; ++i) {
    // RK4 on the pair (Sigma, J) with J' = Sigma, so the quadrature carries
    // the same order as the variance itself.
    const double k1 = f(sigma), j1 = sigma;
    const double k2 = f(sigma + 0.5 * h * k1), j2 = sigma + 0.5 * h * k1;
    const double k3 = f(sigma + 0.5 * h * k2), j3 = sigma + 0.5 * h * k2;
    const double k4 = f(sigma + h * k3), j4 = sigma + h * k3;
    sigma += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    integral += (h / 6.0) * (j1 + 2.0 * j2 + 2.0 * j3 + j4);
    if (!(sigma >= 0.0) || sigma > upper || !std::isfinite(sigma))
      throw step_size_fault("posterior variance left [0, P(1+1e-6)]; reduce dt");
    sol.time[i + 1] = static_cast<double>(i + 1) * h;
    sol.variance[i + 1] = sigma;
  }
  sol.mi_nats = 0.5 * snr * integral;
  return sol;
}

RiccatiSolution riccati_ou(const OUParams& params, double snr, double horizon) {
  return riccati_ou(params, snr, horizon,
                    riccati_default_dt(params.mean_reversion, snr, horizon));
}

}  // namespace ctgauss
