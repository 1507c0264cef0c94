#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fieldrank/ensembles.hpp"
#include "fieldrank/kernels.hpp"
#include "fieldrank/spectra.hpp"

namespace fieldrank::harness {

struct Options {
  int threads = 1;
  std::size_t max_points = kernels::kDefaultMaxPoints;
  std::size_t max_entries = ensembles::kDefaultMaxEntries;
};

/// One (instance, eps) measurement of a kernel-matrix sweep.
struct SweepRow {
  std::string experiment_id;
  kernels::Family family = kernels::Family::squared_exponential;
  kernels::DomainTag domain = kernels::DomainTag::interval;
  double sigma = 0.0;
  double r = 0.0;  // points per sigma
  double eps = 0.0;
  int n = 0;
  int n_under = 0;
  int n_over = 0;
  double lower_bound = 0.0;
  double wall_time = 0.0;  // seconds spent on this instance's decomposition
};

struct FitResult {
  enum class Model { log_log_linear, log_vs_loglog };
  Model model = Model::log_log_linear;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
  std::string label;
};

std::string fit_model_name(FitResult::Model m);

/// The squared-exponential with geodesic distance is mildly indefinite on the
/// sphere; every other (kernel, domain) pair is numerically PSD.
spectra::NegativePolicy negative_policy_for(kernels::Family family, kernels::DomainTag domain);

/// Ordinary least squares y = slope*x + intercept with r^2; needs >= 4 points.
FitResult fit_ols(std::span<const double> xs, std::span<const double> ys,
                  FitResult::Model model, std::string label);

/// Fixed sigma, varying resolution r (h = sigma/r for interval/square; the
/// sphere lattice is sized so its mean spacing matches h).
std::vector<SweepRow> resolution_sweep(kernels::Family family, kernels::DomainTag domain,
                                       double sigma, std::span<const double> r_list,
                                       std::span<const double> eps_list,
                                       const Options& opts = {});

struct SigmaSweepResult {
  std::vector<SweepRow> rows;
  std::vector<FitResult> fits;  // one log-log fit of n_under vs 1/sigma per eps
};

SigmaSweepResult sigma_sweep(kernels::Family family, kernels::DomainTag domain, double r,
                             std::span<const double> sigma_list,
                             std::span<const double> eps_list, const Options& opts = {});

struct EpsSweepResult {
  std::vector<SweepRow> rows;
  FitResult fit;  // n_under against |log eps|^d
};

EpsSweepResult eps_sweep(kernels::Family family, kernels::DomainTag domain, double sigma,
                         double r, std::span<const double> eps_list, const Options& opts = {});

/// Single-realization embedding dimensions vs the Marchenko-Pastur
/// predictions, at aspect ratio alpha = n/d.
struct MpRow {
  std::string experiment_id;
  ensembles::Dist dist = ensembles::Dist::gaussian;
  int n = 0;
  int d = 0;
  double alpha = 0.0;
  double eps = 0.0;
  int n_under_emp = 0;
  double n_under_pred = 0.0;  // n * rho(eps)
  int eps_rank_emp = 0;       // #{ sqrt(lambda(V^T V)) >= eps }
  double eps_rank_pred = 0.0;
  double abs_gap_n_under = 0.0;
  double rel_gap_n_under = 0.0;
  double abs_gap_rank = 0.0;
  double wall_time = 0.0;
};

std::vector<MpRow> mp_comparison(ensembles::Dist dist, std::span<const int> n_list,
                                 double alpha, std::span<const double> eps_list,
                                 std::uint64_t seed, const Options& opts = {});

/// Four-way comparison for the exponential covariance family
/// C[i][j] = exp(-|i-j|/sigma_idx): closed-form limit, analytic finite-n
/// ratio, dense-eigensolver ratio, and the correlated-ensemble ratio, plus
/// the i.i.d. MP prediction the ensemble approaches as sigma_idx -> 0.
struct ExpCompareRow {
  std::string experiment_id;
  int n = 0;
  double sigma_idx = 0.0;  // correlation length in index units (= 1/tau)
  double tau = 0.0;
  double eps = 0.0;
  int d = 0;
  double t_asymptotic = 0.0;
  double ratio_analytic = 0.0;
  double ratio_dense = 0.0;
  double ratio_ensemble = 0.0;
  double mp_iid_ratio = 0.0;
  double wall_time = 0.0;
};

std::vector<ExpCompareRow> exp_kernel_comparison(std::span<const int> n_list,
                                                 std::span<const double> tau_list, double eps,
                                                 double d_over_n, std::uint64_t seed,
                                                 const Options& opts = {});

}  // namespace fieldrank::harness
