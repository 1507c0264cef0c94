#include "fieldrank/mplaw.hpp"

#include <algorithm>
#include <cmath>

namespace fieldrank::mplaw {

namespace {

constexpr double kQuadTol = 1e-11;
constexpr double kHalfPi = 1.5707963267948966;

// Integrand of int x^order dnu after x = lm + w*sin^2(u), u in [0, pi/2]:
//   w^2 * sin^2(2u) / (4 pi sigma2 alpha) * x(u)^(order-1)
// For order 1 the 1/x cancels and the integrand is a pure trig polynomial;
// for order 0 and alpha = 1 (lm = 0) the sin^2 in x cancels the pole at 0.
struct Transformed {
  double lm, w, scale;  // scale = w^2 / (4 pi sigma2 alpha)
  int order;

  double operator()(double u) const {
    const double s = std::sin(u);
    const double s2u = std::sin(2.0 * u);
    const double x = lm + w * s * s;
    const double base = scale * s2u * s2u;
    if (order == 1) return base;
    if (x <= 0.0) {
      // alpha = 1 limit at u = 0: base/x -> scale * 4 * cos^2(u) / w
      return scale * 4.0 / w;
    }
    return base / x;
  }
};

double adaptive_simpson(const Transformed& f, double a, double fa, double b, double fb,
                        double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm_ = 0.5 * (a + m);
  const double rm_ = 0.5 * (m + b);
  const double flm = f(lm_);
  const double frm = f(rm_);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const Transformed& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, 48);
}

// Angle u_y with x(u_y) = y.
double angle_of(double y, const MpParams& p) {
  const double w = p.lambda_plus - p.lambda_minus;
  const double t = std::clamp((y - p.lambda_minus) / w, 0.0, 1.0);
  return std::asin(std::sqrt(t));
}

Transformed transformed(const MpParams& p, int order) {
  const double w = p.lambda_plus - p.lambda_minus;
  return Transformed{p.lambda_minus, w, w * w / (4.0 * M_PI * p.sigma2 * p.alpha), order};
}

double moment_between(double u_lo, double u_hi, const MpParams& p, int order) {
  return integrate(transformed(p, order), u_lo, u_hi, kQuadTol);
}

}  // namespace

MpParams MpParams::make(double sigma2, double alpha) {
  if (!(sigma2 > 0.0)) throw error("mplaw: sigma2 must be positive");
  if (!(alpha > 0.0)) throw error("mplaw: alpha must be positive");
  MpParams p;
  p.sigma2 = sigma2;
  p.alpha = alpha;
  const double root = std::sqrt(alpha);
  p.lambda_minus = sigma2 * (1.0 - root) * (1.0 - root);
  p.lambda_plus = sigma2 * (1.0 + root) * (1.0 + root);
  return p;
}

double density(double x, const MpParams& p) {
  if (x <= p.lambda_minus || x >= p.lambda_plus) return 0.0;
  const double num = std::sqrt((p.lambda_plus - x) * (x - p.lambda_minus));
  return num / (2.0 * M_PI * p.sigma2 * p.alpha * x);
}

double partial_moment(double y, const MpParams& p, int order) {
  if (order != 0 && order != 1) throw error("mplaw: partial_moment order must be 0 or 1");
  const double w = p.lambda_plus - p.lambda_minus;
  if (y < p.lambda_minus - 1e-12 * w || y > p.lambda_plus + 1e-12 * w)
    throw error("mplaw: partial_moment endpoint outside the support");
  return moment_between(0.0, angle_of(y, p), p, order);
}

double solve_quantile(double eps, const MpParams& p) {
  if (!(eps > 0.0 && eps < 1.0)) throw error("mplaw: solve_quantile needs eps in (0,1)");
  const double target = p.sigma2 * eps * eps;
  double lo = p.lambda_minus, hi = p.lambda_plus;
  const double tol = 1e-12 * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (partial_moment(mid, p, 1) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double asymptotic_ratio(double eps, const MpParams& p) {
  if (!(eps > 0.0 && eps <= 1.0)) throw error("mplaw: asymptotic_ratio needs eps in (0,1]");
  if (eps == 1.0) return 0.0;
  const double y = solve_quantile(eps, p);
  const double ratio = moment_between(angle_of(y, p), kHalfPi, p, 0);
  return std::clamp(ratio, 0.0, p.continuous_mass());
}

double asymptotic_eps_rank_ratio(double eps, double d, const MpParams& p) {
  if (!(eps > 0.0)) throw error("mplaw: asymptotic_eps_rank_ratio needs eps > 0");
  if (!(d >= 1.0)) throw error("mplaw: asymptotic_eps_rank_ratio needs d >= 1");
  const double threshold = eps * eps / d;
  double below = p.atom();  // zero eigenvalues fail any positive threshold
  if (threshold > p.lambda_minus) {
    const double y = std::min(threshold, p.lambda_plus);
    below += moment_between(0.0, angle_of(y, p), p, 0);
  }
  return std::clamp(1.0 - below, 0.0, 1.0);
}

double rho_derivative(double eps, const MpParams& p) {
  if (!(eps > 0.0 && eps < 1.0)) throw error("mplaw: rho_derivative needs eps in (0,1)");
  return -2.0 * p.sigma2 * eps / solve_quantile(eps, p);
}

double best_k_error(double k_over_n, const MpParams& p) {
  if (!(k_over_n >= 0.0 && k_over_n <= 1.0))
    throw error("mplaw: best_k_error needs k/n in [0,1]");
  const double cont_target = (1.0 - k_over_n) - p.atom();
  if (cont_target <= 0.0) return 0.0;

  double y;
  if (cont_target >= p.continuous_mass()) {
    y = p.lambda_plus;
  } else {
    double lo = p.lambda_minus, hi = p.lambda_plus;
    const double tol = 1e-12 * (hi - lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (partial_moment(mid, p, 0) < cont_target)
        lo = mid;
      else
        hi = mid;
    }
    y = 0.5 * (lo + hi);
  }
  const double lost = partial_moment(y, p, 1) / p.sigma2;
  return std::sqrt(std::clamp(lost, 0.0, 1.0));
}

}  // namespace fieldrank::mplaw
