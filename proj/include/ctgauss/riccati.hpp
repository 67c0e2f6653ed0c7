#pragma once

#include <vector>

#include "ctgauss/process.hpp"

namespace ctgauss {

// Posterior variance of an OU input observed through the integrator channel,
// with the mutual information it implies:
//
//   dSigma/dt = 2a(P - Sigma) - snr * Sigma^2,   Sigma(0) = P,
//   I_T       = (snr/2) * int_0^T Sigma dt,
//
// the scalar Kalman-Bucy / Riccati form of the causal-MMSE identity.
struct RiccatiSolution {
  std::vector<double> time;
  std::vector<double> variance;  // Sigma(t)
  double mi_nats = 0.0;          // (snr/2) * int Sigma dt
  double steady_state = 0.0;     // Sigma*
};

// Positive root of snr*S^2 + 2a*S - 2aP = 0 (Sigma* = P when snr = 0).
double riccati_steady_state(double a, double P, double snr);

// Fixed step keeping the 4th-order local error far below 1e-10; stiffness
// grows with a*(1+snr).
double riccati_default_dt(double a, double snr, double horizon);

// Classical 4-stage integration of (Sigma, int Sigma). Preconditions:
// dt <= T/100, snr >= 0. Throws step_size_fault if Sigma leaves
// [0, P*(1+1e-6)].
RiccatiSolution riccati_ou(const OUParams& params, double snr, double horizon, double dt);
RiccatiSolution riccati_ou(const OUParams& params, double snr, double horizon);

}  // namespace ctgauss
