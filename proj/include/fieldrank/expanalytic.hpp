#pragma once

#include <optional>
#include <vector>

#include "fieldrank/types.hpp"

namespace fieldrank::expanalytic {

/// Angles and eigenvalues of the n x n covariance matrix
/// C[i][j] = exp(-tau*|i-j|), tau = 1/sigma in index units.
///
/// theta_k solves (n+1)*theta + 2*atan((cos theta - e^tau)/sin theta) =
/// (k-1)*pi on the bracket ((k-1)*pi/n, k*pi/(n+1)), and
/// lambda_k = sinh(tau) / (cosh(tau) - cos(theta_k)), strictly decreasing.
///
/// psi_k (on request) satisfies tan(psi_k) = (cos theta_k - e^tau)/sin theta_k
/// with psi_k in (-pi/2, 0); the matching eigenvectors e^k_j = cos(j*theta_k +
/// psi_k), j = 1..n, are exposed unnormalized (no closed-form normalization;
/// divide by the vector's Euclidean norm if an orthonormal basis is needed).
struct ExpSpectrum {
  int n = 0;
  double tau = 0.0;
  std::vector<double> thetas;   // strictly increasing
  std::vector<double> lambdas;  // strictly decreasing
  std::optional<std::vector<double>> psis;
};

/// Fixed-point iteration with a bisection fallback; every root satisfies the
/// angle equation to residual <= 1e-11 or the call throws.
ExpSpectrum solve_thetas(int n, double tau, bool want_psis = false);

/// Residual of the angle equation at root k (0-based), for diagnostics.
double theta_residual(const ExpSpectrum& s, int k);

/// Unnormalized eigenvector entries cos(j*theta_k + psi_k), j = 1..n.
std::vector<double> eigenvector(const ExpSpectrum& s, int k);

/// Closed-form limit of n_under/n for this matrix family:
///   t = (2/pi) * atan( tanh(tau/2) * tan((pi/2)*(1 - eps^2)) ).
double asymptotic_t(double eps, double tau);

/// n_under computed from the analytic eigenvalues, divided by n.
double empirical_ratio(int n, double tau, double eps);

/// Dense C[i][j] = exp(-tau*|i-j|), for oracle comparisons and ensembles.
SymMatrix covariance_matrix(int n, double tau);

}  // namespace fieldrank::expanalytic
