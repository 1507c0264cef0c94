#include <doctest.h>

#include <cmath>

#include "fieldrank/mplaw.hpp"
#include "oracles.hpp"

using namespace fieldrank;
using mplaw::MpParams;

TEST_CASE("support edges and parameter validation") {
  const MpParams p = MpParams::make(2.0, 0.25);
  CHECK(p.lambda_minus == doctest::Approx(2.0 * 0.25).epsilon(1e-15));
  CHECK(p.lambda_plus == doctest::Approx(2.0 * 2.25).epsilon(1e-15));
  CHECK(p.atom() == 0.0);
  const MpParams q = MpParams::make(1.0, 4.0);
  CHECK(q.lambda_minus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.lambda_plus == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(q.atom() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(MpParams::make(0.0, 1.0), error);
  CHECK_THROWS_AS(MpParams::make(1.0, -2.0), error);
}

TEST_CASE("density: support boundaries and the alpha=1 point value") {
  const MpParams p = MpParams::make(1.0, 1.0);
  CHECK(mplaw::density(-0.5, p) == 0.0);
  CHECK(mplaw::density(4.5, p) == 0.0);
  CHECK(mplaw::density(4.0, p) == 0.0);
  // (1/2pi) sqrt((4-2)(2-0)) / (1*2) = 1/(2 pi)
  CHECK(mplaw::density(2.0, p) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));

  const MpParams r = MpParams::make(1.0, 0.25);
  CHECK(mplaw::density(0.2, r) == 0.0);
  CHECK(mplaw::density(1.0, r) ==
        doctest::Approx(std::sqrt(1.25 * 0.75) / (2.0 * M_PI * 0.25)).epsilon(1e-14));
}

TEST_CASE("measure normalization and first moment against the Chebyshev oracle") {
  for (double sigma2 : {1.0, 2.0}) {
    for (double alpha : {0.25, 1.0, 4.0}) {
      const MpParams p = MpParams::make(sigma2, alpha);
      const double mass = mplaw::partial_moment(p.lambda_plus, p, 0);
      const double m1 = mplaw::partial_moment(p.lambda_plus, p, 1);
      CHECK(std::fabs(mass - p.continuous_mass()) <= 1e-9);
      CHECK(std::fabs(m1 - sigma2) <= 1e-9 * sigma2);
      CHECK(std::fabs(mass + p.atom() - 1.0) <= 1e-9);  // total measure is 1
      if (alpha != 1.0)
        CHECK(mass ==
              doctest::Approx(oracles::mp_full_moment_cheb(sigma2, alpha, 0)).epsilon(1e-11));
      CHECK(m1 ==
            doctest::Approx(oracles::mp_full_moment_cheb(sigma2, alpha, 1)).epsilon(1e-11));
    }
  }
}

TEST_CASE("partial moments: endpoints, closed forms, atom bookkeeping") {
  const MpParams p = MpParams::make(1.0, 0.25);
  CHECK(mplaw::partial_moment(p.lambda_minus, p, 0) == 0.0);
  CHECK(mplaw::partial_moment(p.lambda_minus, p, 1) == 0.0);
  CHECK(std::fabs(mplaw::partial_moment(p.lambda_plus, p, 1) - 1.0) <= 1e-9);

  // order-1 partials against the closed form, across the support
  for (double alpha : {0.25, 1.0, 4.0}) {
    const MpParams q = MpParams::make(1.0, alpha);
    for (double t : {0.1, 0.35, 0.62, 0.9}) {
      const double y = q.lambda_minus + t * (q.lambda_plus - q.lambda_minus);
      CHECK(mplaw::partial_moment(y, q, 1) ==
            doctest::Approx(oracles::mp_m1_closed(1.0, alpha, y)).epsilon(1e-10));
    }
  }
  // alpha=1 order-0 partials against the closed form (integrable 1/sqrt(x) edge)
  const MpParams one = MpParams::make(1.0, 1.0);
  for (double y : {0.5, 1.0, 2.5, 4.0})
    CHECK(mplaw::partial_moment(y, one, 0) ==
          doctest::Approx(oracles::mp_mass_alpha1(1.0, y)).epsilon(1e-10));

  // continuous mass is 1/alpha for alpha > 1, atom excluded
  const MpParams four = MpParams::make(1.0, 4.0);
  CHECK(std::fabs(mplaw::partial_moment(four.lambda_plus, four, 0) - 0.25) <= 1e-9);

  CHECK_THROWS_AS(mplaw::partial_moment(p.lambda_minus - 0.1, p, 0), error);
  CHECK_THROWS_AS(mplaw::partial_moment(p.lambda_plus + 0.1, p, 1), error);
  CHECK_THROWS_AS(mplaw::partial_moment(1.0, p, 2), error);
}

TEST_CASE("solve_quantile: round trip, monotonicity, limits") {
  const MpParams p = MpParams::make(1.0, 0.25);
  const double y = mplaw::solve_quantile(0.1, p);
  CHECK(std::fabs(mplaw::partial_moment(y, p, 1) - 0.01) <= 1e-10);

  double prev = p.lambda_minus;
  for (double eps : {0.05, 0.1, 0.3, 0.6, 0.9}) {
    const double yy = mplaw::solve_quantile(eps, p);
    CHECK(yy > prev);
    prev = yy;
  }
  CHECK(mplaw::solve_quantile(0.999, p) ==
        doctest::Approx(p.lambda_plus).epsilon(1e-2));
  CHECK(mplaw::solve_quantile(1e-5, p) ==
        doctest::Approx(p.lambda_minus).epsilon(1e-3));
  CHECK_THROWS_AS(mplaw::solve_quantile(0.0, p), error);
  CHECK_THROWS_AS(mplaw::solve_quantile(1.0, p), error);
}

TEST_CASE("asymptotic_ratio: limits, monotonicity, continuity") {
  const MpParams p = MpParams::make(1.0, 0.25);
  CHECK(mplaw::asymptotic_ratio(1.0, p) == 0.0);
  CHECK(mplaw::asymptotic_ratio(1e-6, p) == doctest::Approx(1.0).epsilon(1e-6));

  double prev = 2.0;
  for (double eps = 0.02; eps < 1.0; eps += 0.02) {
    const double rho = mplaw::asymptotic_ratio(eps, p);
    CHECK(rho < prev);
    CHECK(rho >= 0.0);
    CHECK(rho <= 1.0);
    prev = rho;
  }
  // continuity: small eps step moves rho by at most a small amount
  const double a = mplaw::asymptotic_ratio(0.3, p);
  const double b = mplaw::asymptotic_ratio(0.3 + 1e-6, p);
  CHECK(std::fabs(a - b) <= 1e-4);

  // alpha > 1: capped by the continuous mass
  const MpParams four = MpParams::make(1.0, 4.0);
  CHECK(mplaw::asymptotic_ratio(1e-5, four) == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("asymptotic_eps_rank_ratio: threshold regimes") {
  const MpParams p = MpParams::make(1.0, 0.25);
  const double d = 2000.0;
  // threshold below the support: everything counts
  CHECK(mplaw::asymptotic_eps_rank_ratio(0.1, d, p) == 1.0);
  // threshold above the support: nothing does (alpha <= 1)
  CHECK(std::fabs(mplaw::asymptotic_eps_rank_ratio(std::sqrt(3.0 * d), d, p)) <= 1e-9);
  // interior threshold: 1 - F(eps^2/d), strictly between
  const double mid = mplaw::asymptotic_eps_rank_ratio(std::sqrt(1.0 * d), d, p);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK(mid ==
        doctest::Approx(1.0 - mplaw::partial_moment(1.0, p, 0)).epsilon(1e-10));

  // alpha > 1: the atom at zero always fails a positive threshold
  const MpParams four = MpParams::make(1.0, 4.0);
  CHECK(mplaw::asymptotic_eps_rank_ratio(0.01, 100.0, four) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("rho_derivative: finite differences and small-eps regimes") {
  for (double alpha : {0.25, 1.0, 4.0}) {
    const MpParams p = MpParams::make(1.0, alpha);
    for (double eps = 0.1; eps <= 0.91; eps += 0.2) {
      const double h = 1e-4;
      const double fd =
          (mplaw::asymptotic_ratio(eps + h, p) - mplaw::asymptotic_ratio(eps - h, p)) /
          (2.0 * h);
      CHECK(std::fabs(mplaw::rho_derivative(eps, p) - fd) <= 1e-5);
    }
  }
  // alpha != 1: derivative vanishes as eps -> 0
  const MpParams p = MpParams::make(1.0, 0.25);
  CHECK(std::fabs(mplaw::rho_derivative(1e-4, p)) <= 1e-3);
  // alpha = 1: |drho| * eps^(1/3) approaches a constant
  const MpParams one = MpParams::make(1.0, 1.0);
  const double c1 = std::fabs(mplaw::rho_derivative(1e-2, one)) * std::cbrt(1e-2);
  const double c2 = std::fabs(mplaw::rho_derivative(1e-3, one)) * std::cbrt(1e-3);
  const double c3 = std::fabs(mplaw::rho_derivative(1e-4, one)) * std::cbrt(1e-4);
  CHECK(std::fabs(c2 - c3) < std::fabs(c1 - c2));
  CHECK(std::fabs(c3 - c2) <= 1e-3 * c3);
  // the limit constant is 2 / (3 pi / 2)^(2/3)
  CHECK(c3 == doctest::Approx(2.0 / std::pow(1.5 * M_PI, 2.0 / 3.0)).epsilon(1e-3));
}

TEST_CASE("best_k_error: endpoints and inverse relationship") {
  const MpParams p = MpParams::make(1.0, 0.25);
  CHECK(mplaw::best_k_error(0.0, p) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mplaw::best_k_error(1.0, p) == 0.0);
  for (double eps : {0.05, 0.1, 0.3}) {
    const double rho = mplaw::asymptotic_ratio(eps, p);
    CHECK(mplaw::best_k_error(rho, p) == doctest::Approx(eps).epsilon(1e-8));
  }
  // alpha > 1: atom contributes full variance at k=0; k/n >= 1/alpha is lossless
  const MpParams four = MpParams::make(1.0, 4.0);
  CHECK(mplaw::best_k_error(0.0, four) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mplaw::best_k_error(0.25, four) == 0.0);
  CHECK(mplaw::best_k_error(0.6, four) == 0.0);
  for (double eps : {0.1, 0.3}) {
    const double rho = mplaw::asymptotic_ratio(eps, four);
    CHECK(mplaw::best_k_error(rho, four) == doctest::Approx(eps).epsilon(1e-8));
  }
  CHECK_THROWS_AS(mplaw::best_k_error(-0.1, p), error);
  CHECK_THROWS_AS(mplaw::best_k_error(1.1, p), error);
}
