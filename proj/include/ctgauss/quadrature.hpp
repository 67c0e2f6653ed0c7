#pragma once

namespace ctgauss {

// Antipodal signal through a unit-variance Gaussian: Y = sqrt(rho)*M + Z with
// M = +/-1 equiprobable, Z ~ N(0,1). Everything the binary scenarios of this
// lab measure reduces to this scalar channel through the sufficient statistic
// Y(T).

// I(M; Y) in nats: ln 2 - E[ln(1 + exp(-2 rho - 2 sqrt(rho) Z))].
double binary_awgn_mi(double rho);

// E[(M - E[M|Y])^2] = 1 - E[tanh^2(rho + sqrt(rho) Z)].
double binary_awgn_mmse(double rho);

// Phi(x), standard normal CDF.
double normal_cdf(double x);

// ln(1 + e^x) without overflow.
double softplus(double x);

}  // namespace ctgauss
