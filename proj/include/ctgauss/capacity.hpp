#pragma once

#include <cstddef>
#include <vector>

namespace ctgauss {

// omega * ln(1 + P/(2 omega)) nats per unit time.
double bandlimited_capacity(double power, double bandwidth);

// P/2, the bandwidth -> infinity limit.
double infinite_bandwidth_capacity(double power);

// Polytope {R >= 0 : c . R <= b for every constraint}, with its corners
// enumerated at construction.
struct RateRegion {
  struct Constraint {
    std::vector<double> coeff;  // nonnegative
    double bound = 0.0;
    bool operator==(const Constraint&) const = default;
  };
  std::size_t dimension = 0;
  std::vector<Constraint> constraints;
  std::vector<std::vector<double>> corners;

  // Relative slack 1e-12 so corners sitting exactly on a face are members
  // while 1e-6-inflated points are not.
  bool contains(const std::vector<double>& rate) const;

  bool operator==(const RateRegion& other) const = default;
};

// Box {0 <= R_i <= P_i/2}; the same region with or without feedback.
RateRegion mac_region(const std::vector<double>& powers);

// Simplex {R >= 0 : sum R_i / snr_i <= P/2}.
RateRegion bc_region(double power, const std::vector<double>& snr);

// Two-receiver degraded broadcast region via the unit-noise normalization
// snr_1 = 1/N1, snr_2 = 1/(N1+N2). The feedback flag is accepted and
// ignored: feedback does not change this region.
RateRegion degraded_bc_region(double power, double n1, double n2, bool feedback = false);

// Positive root in (0,1) of
//   rho (1 + (P+1)(1 + P(1-rho)/2)) = P(P+2)(1-rho)/2,
// by bisection to residual <= 1e-12. The bracket sign check failing throws
// numerical_fault (it cannot happen for P > 0 short of a transcription bug).
double rho_star(double power);

// Residual of the defining equation at rho.
double rho_star_residual(double power, double rho);

// Symmetric two-receiver feedback rates built on rho*.
struct FeedbackGainReport {
  double power = 0.0;
  double rho = 0.0;
  double per_user_rate = 0.0;     // P(1+rho*)/4
  double sum_rate = 0.0;          // P(1+rho*)/2
  double no_feedback_bound = 0.0; // P/2
  double gain = 0.0;              // 1+rho*
};
FeedbackGainReport sk_bc_report(double power);

// Per-user rate of the discrete feedback scheme at stepsize delta:
//   (1/(2 delta)) ln(1 + [P delta (1+rho*)/2] / [1 + P delta (1-rho*)/2]),
// which climbs to P(1+rho*)/4 as delta -> 0. The summand is
// step-independent, so the step count only fixes the horizon.
double sk_rate_series(double power, double delta, std::size_t steps);

}  // namespace ctgauss
