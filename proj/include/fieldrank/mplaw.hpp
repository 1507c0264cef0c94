#pragma once

#include "fieldrank/types.hpp"

namespace fieldrank::mplaw {

/// Marchenko-Pastur limit measure for (1/d) V^T V with n/d -> alpha and
/// i.i.d. entries of variance sigma2. Support edges lambda_pm =
/// sigma2*(1 +- sqrt(alpha))^2; for alpha > 1 the measure carries a point
/// mass of (1 - 1/alpha) at zero on top of the continuous part.
struct MpParams {
  double sigma2 = 1.0;
  double alpha = 1.0;
  double lambda_minus = 0.0;
  double lambda_plus = 4.0;

  static MpParams make(double sigma2, double alpha);

  double atom() const { return alpha > 1.0 ? 1.0 - 1.0 / alpha : 0.0; }
  /// Total mass of the continuous part: min(1, 1/alpha).
  double continuous_mass() const { return alpha > 1.0 ? 1.0 / alpha : 1.0; }
};

/// Density of the continuous part; zero outside [lambda_minus, lambda_plus].
double density(double x, const MpParams& p);

/// int_{lambda_minus}^{y} x^order dnu(x), order in {0,1}. Uses the
/// substitution x = lambda_minus + (lambda_plus-lambda_minus)*sin^2(u), which
/// removes both square-root endpoint singularities, with adaptive Simpson
/// quadrature to absolute tolerance 1e-11. The atom at zero is never part of
/// this integral.
double partial_moment(double y, const MpParams& p, int order);

/// Unique y in [lambda_minus, lambda_plus] with
/// partial_moment(y, 1) = sigma2 * eps^2, by bisection to
/// |dy| <= 1e-12*(lambda_plus-lambda_minus).
double solve_quantile(double eps, const MpParams& p);

/// rho(eps) = lim N_eps/n = int_y^{lambda_plus} dnu, y = solve_quantile(eps).
/// Value in [0, min(1, 1/alpha)]; eps = 1 gives 0.
double asymptotic_ratio(double eps, const MpParams& p);

/// Limit of (eps-rank)/n for the unnormalized Gram matrix with threshold eps:
/// 1 - mu([0, eps^2/d]), counting the alpha > 1 atom at zero.
double asymptotic_eps_rank_ratio(double eps, double d, const MpParams& p);

/// d rho / d eps = -2*sigma2*eps / solve_quantile(eps). O(eps) as eps -> 0
/// for alpha != 1 and O(eps^(-1/3)) for alpha = 1.
double rho_derivative(double eps, const MpParams& p);

/// Asymptotic relative rms error of the best k-dimensional subspace,
/// sqrt(partial_moment(y,1)/sigma2) with mu([0,y]) = 1 - k/n (atom included).
/// Inverse of asymptotic_ratio; returns 0 once k/n exhausts the informative
/// mass (k/n >= 1/alpha when alpha > 1).
double best_k_error(double k_over_n, const MpParams& p);

}  // namespace fieldrank::mplaw
