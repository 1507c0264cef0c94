#include "fieldrank/expanalytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fieldrank/spectra.hpp"

namespace fieldrank::expanalytic {

namespace {

constexpr double kResidualTol = 1e-11;

struct AngleEquation {
  double n_plus_1;
  double exp_tau;
  double target;  // (k-1)*pi

  double arctan_term(double theta) const {
    return std::atan((std::cos(theta) - exp_tau) / std::sin(theta));
  }

  double residual(double theta) const {
    return n_plus_1 * theta + 2.0 * arctan_term(theta) - target;
  }

  // d/dtheta of the residual; the arctan derivative is
  // (e^tau cos - 1) / ((e^tau - cos)^2 + sin^2), which vanishes for large tau.
  double derivative(double theta) const {
    if (exp_tau > 1e150) return n_plus_1;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double dm = exp_tau - c;
    return n_plus_1 + 2.0 * (exp_tau * c - 1.0) / (dm * dm + s * s);
  }

  double fixed_point(double theta) const {
    return (target - 2.0 * arctan_term(theta)) / n_plus_1;
  }
};

double solve_one(int n, double tau, int k /*1-based*/) {
  const AngleEquation eq{static_cast<double>(n) + 1.0, std::exp(tau),
                         (k - 1) * M_PI};
  const double lo_open = (k - 1) * M_PI / n;
  const double hi_open = k * M_PI / (n + 1.0);

  // Fixed-point pass; the map always lands inside ((k-1)pi/(n+1), k*pi/(n+1)).
  double theta = std::max(lo_open, M_PI / (2.0 * (n + 1.0)));
  const double step_tol =
      std::max(0.5 * kResidualTol / eq.n_plus_1, 4.0 * std::numeric_limits<double>::epsilon());
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const double next = eq.fixed_point(theta);
    const double step = std::fabs(next - theta);
    theta = next;
    if (step <= step_tol) {
      converged = true;
      break;
    }
  }

  if (!converged || !(theta > 0.0 && theta < M_PI) ||
      std::fabs(eq.residual(theta)) > kResidualTol) {
    // Bisection on the bracket; the residual is strictly increasing in theta.
    double lo = std::max(lo_open, 1e-12 * hi_open);
    double hi = hi_open;
    if (eq.residual(lo) > 0.0) lo = std::min(1e-300, hi * 0.5);
    for (int it = 0; it < 200 && hi - lo > std::numeric_limits<double>::epsilon() * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (eq.residual(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    theta = 0.5 * (lo + hi);
  }

  // Newton polish to push the residual to rounding level.
  for (int it = 0; it < 4; ++it) {
    const double r = eq.residual(theta);
    if (std::fabs(r) <= 0.25 * kResidualTol) break;
    const double next = theta - r / eq.derivative(theta);
    if (!(next > 0.0 && next < M_PI)) break;
    theta = next;
  }

  if (std::fabs(eq.residual(theta)) > kResidualTol)
    throw error("expanalytic: angle equation failed to converge for k=" + std::to_string(k) +
                " (n=" + std::to_string(n) + ", tau=" + std::to_string(tau) + ")");
  return theta;
}

}  // namespace

ExpSpectrum solve_thetas(int n, double tau, bool want_psis) {
  if (n < 1) throw error("expanalytic: n must be >= 1");
  if (!(tau > 0.0) || tau > 700.0)
    throw error("expanalytic: tau must be in (0, 700]");

  ExpSpectrum s;
  s.n = n;
  s.tau = tau;
  s.thetas.resize(n);
  s.lambdas.resize(n);
  const double sinh_tau = std::sinh(tau);
  const double cosh_tau = std::cosh(tau);
  for (int k = 1; k <= n; ++k) {
    const double theta = solve_one(n, tau, k);
    s.thetas[k - 1] = theta;
    s.lambdas[k - 1] = sinh_tau / (cosh_tau - std::cos(theta));
  }
  if (want_psis) {
    std::vector<double> psis(n);
    const double exp_tau = std::exp(tau);
    for (int k = 0; k < n; ++k)
      psis[k] = std::atan((std::cos(s.thetas[k]) - exp_tau) / std::sin(s.thetas[k]));
    s.psis = std::move(psis);
  }
  return s;
}

double theta_residual(const ExpSpectrum& s, int k) {
  if (k < 0 || k >= s.n) throw error("expanalytic: root index out of range");
  const AngleEquation eq{static_cast<double>(s.n) + 1.0, std::exp(s.tau), k * M_PI};
  return eq.residual(s.thetas[k]);
}

std::vector<double> eigenvector(const ExpSpectrum& s, int k) {
  if (k < 0 || k >= s.n) throw error("expanalytic: root index out of range");
  const double theta = s.thetas[k];
  const double psi =
      s.psis ? (*s.psis)[k]
             : std::atan((std::cos(theta) - std::exp(s.tau)) / std::sin(theta));
  std::vector<double> v(s.n);
  for (int j = 1; j <= s.n; ++j) v[j - 1] = std::cos(j * theta + psi);
  return v;
}

double asymptotic_t(double eps, double tau) {
  if (!(eps > 0.0 && eps <= 1.0)) throw error("expanalytic: asymptotic_t needs eps in (0,1]");
  if (!(tau > 0.0)) throw error("expanalytic: asymptotic_t needs tau > 0");
  const double inner = std::tanh(0.5 * tau) * std::tan(0.5 * M_PI * (1.0 - eps * eps));
  return (2.0 / M_PI) * std::atan(inner);
}

double empirical_ratio(int n, double tau, double eps) {
  const ExpSpectrum s = solve_thetas(n, tau);
  return static_cast<double>(spectra::n_under(std::span<const double>(s.lambdas), eps)) / n;
}

SymMatrix covariance_matrix(int n, double tau) {
  if (n < 1) throw error("expanalytic: n must be >= 1");
  if (!(tau > 0.0)) throw error("expanalytic: tau must be positive");
  std::vector<double> decay(n);
  for (int offset = 0; offset < n; ++offset) decay[offset] = std::exp(-tau * offset);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, decay[j - i]);
  return m;
}

}  // namespace fieldrank::expanalytic
