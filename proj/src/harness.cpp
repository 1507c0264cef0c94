#include "fieldrank/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include "fieldrank/expanalytic.hpp"
#include "fieldrank/mplaw.hpp"
#include "fieldrank/rng.hpp"

namespace fieldrank::harness {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Run fn(i) for i in [0, count) on the requested number of threads. Work is
// indexed, so results land in preassigned slots and the output never depends
// on scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Instance {
  spectra::Spectrum spectrum;
  int n = 0;
  double wall_time = 0.0;
};

Instance kernel_instance(kernels::Family family, kernels::DomainTag domain, double sigma,
                         double r, const Options& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const double h = sigma / r;
  kernels::PointCloud cloud;
  if (domain == kernels::DomainTag::sphere)
    cloud = kernels::build_sphere(kernels::sphere_points_for_spacing(h, opts.max_points),
                                  opts.max_points);
  else
    cloud = kernels::build_domain(domain, h, opts.max_points);
  const kernels::KernelSpec kernel{family, sigma};
  const SymMatrix m = kernels::assemble_covariance(kernel, cloud, opts.max_points);
  Instance inst;
  inst.spectrum = spectra::sym_eig_values(m, negative_policy_for(family, domain));
  inst.n = m.n();
  inst.wall_time = seconds_since(t0);
  return inst;
}

std::vector<SweepRow> rows_for_instance(const Instance& inst, const std::string& id,
                                        kernels::Family family, kernels::DomainTag domain,
                                        double sigma, double r,
                                        std::span<const double> eps_list) {
  std::vector<SweepRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    const spectra::ComplexityReport rep = spectra::analyze(inst.spectrum, eps);
    SweepRow row;
    row.experiment_id = id;
    row.family = family;
    row.domain = domain;
    row.sigma = sigma;
    row.r = r;
    row.eps = eps;
    row.n = inst.n;
    row.n_under = rep.n_under;
    row.n_over = rep.n_over;
    row.lower_bound = rep.lower_bound;
    row.wall_time = inst.wall_time;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

spectra::NegativePolicy negative_policy_for(kernels::Family family,
                                            kernels::DomainTag domain) {
  return (family == kernels::Family::squared_exponential &&
          domain == kernels::DomainTag::sphere)
             ? spectra::NegativePolicy::keep_small
             : spectra::NegativePolicy::reject;
}

std::string fit_model_name(FitResult::Model m) {
  return m == FitResult::Model::log_log_linear ? "log_log_linear" : "log_vs_loglog";
}

FitResult fit_ols(std::span<const double> xs, std::span<const double> ys,
                  FitResult::Model model, std::string label) {
  const int m = static_cast<int>(xs.size());
  if (m != static_cast<int>(ys.size())) throw error("harness: fit needs matching x/y sizes");
  if (m < 4) throw error("harness: fit needs at least 4 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw error("harness: degenerate fit abscissa");
  FitResult fit;
  fit.model = model;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / m;
  for (int i = 0; i < m; ++i) {
    const double pred = fit.slope * xs[i] + fit.intercept;
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  fit.r_squared = (ss_tot > 0.0) ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0)
                                 : (ss_res == 0.0 ? 1.0 : 0.0);
  fit.points = m;
  fit.label = std::move(label);
  return fit;
}

std::vector<SweepRow> resolution_sweep(kernels::Family family, kernels::DomainTag domain,
                                       double sigma, std::span<const double> r_list,
                                       std::span<const double> eps_list, const Options& opts) {
  for (double r : r_list)
    if (!(r >= 2.0)) throw error("harness: resolution sweep needs r >= 2");
  const std::string id = "sweep-res/" + kernels::family_name(family) + "/" +
                         kernels::domain_name(domain) + "/sigma=" + fmt(sigma);

  std::vector<Instance> instances(r_list.size());
  parallel_for(static_cast<int>(r_list.size()), opts.threads, [&](int i) {
    instances[i] = kernel_instance(family, domain, sigma, r_list[i], opts);
  });

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    auto batch = rows_for_instance(instances[i], id, family, domain, sigma, r_list[i], eps_list);
    rows.insert(rows.end(), batch.begin(), batch.end());
  }
  return rows;
}

SigmaSweepResult sigma_sweep(kernels::Family family, kernels::DomainTag domain, double r,
                             std::span<const double> sigma_list,
                             std::span<const double> eps_list, const Options& opts) {
  const std::string id = "sweep-sigma/" + kernels::family_name(family) + "/" +
                         kernels::domain_name(domain) + "/r=" + fmt(r);

  std::vector<Instance> instances(sigma_list.size());
  parallel_for(static_cast<int>(sigma_list.size()), opts.threads, [&](int i) {
    instances[i] = kernel_instance(family, domain, sigma_list[i], r, opts);
  });

  SigmaSweepResult out;
  for (std::size_t i = 0; i < sigma_list.size(); ++i) {
    auto batch =
        rows_for_instance(instances[i], id, family, domain, sigma_list[i], r, eps_list);
    out.rows.insert(out.rows.end(), batch.begin(), batch.end());
  }

  for (double eps : eps_list) {
    std::vector<double> xs, ys;
    for (const SweepRow& row : out.rows)
      if (row.eps == eps && row.n_under >= 1) {
        xs.push_back(std::log(1.0 / row.sigma));
        ys.push_back(std::log(static_cast<double>(row.n_under)));
      }
    out.fits.push_back(
        fit_ols(xs, ys, FitResult::Model::log_log_linear, "eps=" + fmt(eps)));
  }
  return out;
}

EpsSweepResult eps_sweep(kernels::Family family, kernels::DomainTag domain, double sigma,
                         double r, std::span<const double> eps_list, const Options& opts) {
  if (eps_list.size() < 2) throw error("harness: eps sweep needs at least 2 tolerances");
  const auto [min_it, max_it] = std::minmax_element(eps_list.begin(), eps_list.end());
  if (!(*max_it / *min_it >= 100.0))
    throw error("harness: eps sweep must span at least two decades");

  const std::string id = "sweep-eps/" + kernels::family_name(family) + "/" +
                         kernels::domain_name(domain) + "/sigma=" + fmt(sigma);
  const Instance inst = kernel_instance(family, domain, sigma, r, opts);

  EpsSweepResult out;
  out.rows = rows_for_instance(inst, id, family, domain, sigma, r, eps_list);

  const int d = (domain == kernels::DomainTag::interval) ? 1 : 2;
  std::vector<double> xs, ys;
  for (const SweepRow& row : out.rows) {
    xs.push_back(std::pow(std::fabs(std::log(row.eps)), d));
    ys.push_back(static_cast<double>(row.n_under));
  }
  out.fit = fit_ols(xs, ys, FitResult::Model::log_vs_loglog, "sigma=" + fmt(sigma));
  return out;
}

std::vector<MpRow> mp_comparison(ensembles::Dist dist, std::span<const int> n_list,
                                 double alpha, std::span<const double> eps_list,
                                 std::uint64_t seed, const Options& opts) {
  const std::string id = "mp/" + ensembles::dist_name(dist) + "/alpha=" + fmt(alpha);

  struct PerN {
    ensembles::GramResult gram;
    double wall_time = 0.0;
  };
  std::vector<PerN> grams(n_list.size());
  parallel_for(static_cast<int>(n_list.size()), opts.threads, [&](int i) {
    const auto t0 = std::chrono::steady_clock::now();
    ensembles::EnsembleSpec spec;
    spec.n = n_list[i];
    spec.d = static_cast<int>(std::lround(n_list[i] / alpha));
    spec.dist = dist;
    spec.seed = rng::derive_seed(seed, id, static_cast<std::uint64_t>(i));
    const Matrix v = ensembles::sample_iid(spec, opts.max_entries);
    grams[i].gram = ensembles::gram_spectrum(v);
    grams[i].wall_time = seconds_since(t0);
  });

  std::vector<MpRow> rows;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const ensembles::GramResult& g = grams[i].gram;
    const mplaw::MpParams p = mplaw::MpParams::make(1.0, static_cast<double>(g.n) / g.d);
    for (double eps : eps_list) {
      MpRow row;
      row.experiment_id = id;
      row.dist = dist;
      row.n = g.n;
      row.d = g.d;
      row.alpha = static_cast<double>(g.n) / g.d;
      row.eps = eps;
      row.n_under_emp = ensembles::empirical_embedding_dim(g, eps);
      row.n_under_pred = g.n * mplaw::asymptotic_ratio(eps, p);
      // eps-rank thresholds the unnormalized Gram matrix d*A_hat
      row.eps_rank_emp =
          spectra::n_over(std::span<const double>(g.eigenvalues_hat), eps / std::sqrt(g.d));
      row.eps_rank_pred = g.n * mplaw::asymptotic_eps_rank_ratio(eps, g.d, p);
      row.abs_gap_n_under = std::fabs(row.n_under_emp - row.n_under_pred);
      row.rel_gap_n_under = row.abs_gap_n_under / std::max(1.0, row.n_under_pred);
      row.abs_gap_rank = std::fabs(row.eps_rank_emp - row.eps_rank_pred);
      row.wall_time = grams[i].wall_time;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ExpCompareRow> exp_kernel_comparison(std::span<const int> n_list,
                                                 std::span<const double> tau_list, double eps,
                                                 double d_over_n, std::uint64_t seed,
                                                 const Options& opts) {
  if (!(d_over_n > 0.0)) throw error("harness: d_over_n must be positive");
  const std::string id = "exp-compare/eps=" + fmt(eps);

  struct Task {
    int n;
    double tau;
  };
  std::vector<Task> tasks;
  for (int n : n_list)
    for (double tau : tau_list) tasks.push_back({n, tau});

  std::vector<ExpCompareRow> rows(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), opts.threads, [&](int i) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = tasks[i].n;
    const double tau = tasks[i].tau;

    ExpCompareRow row;
    row.experiment_id = id;
    row.n = n;
    row.tau = tau;
    row.sigma_idx = 1.0 / tau;
    row.eps = eps;
    row.d = static_cast<int>(std::lround(n * d_over_n));
    row.t_asymptotic = expanalytic::asymptotic_t(eps, tau);
    row.ratio_analytic = expanalytic::empirical_ratio(n, tau, eps);

    const SymMatrix c = expanalytic::covariance_matrix(n, tau);
    const spectra::Spectrum dense = spectra::sym_eig_values(c);
    row.ratio_dense = static_cast<double>(spectra::n_under(dense, eps)) / n;

    ensembles::EnsembleSpec spec;
    spec.n = n;
    spec.d = row.d;
    spec.dist = ensembles::Dist::gaussian;
    spec.seed = rng::derive_seed(seed, id, static_cast<std::uint64_t>(i));
    spec.covariance = c;
    const Matrix v = ensembles::sample_correlated(spec, opts.max_entries);
    row.ratio_ensemble =
        static_cast<double>(ensembles::empirical_embedding_dim(ensembles::gram_spectrum(v), eps)) /
        n;
    row.mp_iid_ratio =
        mplaw::asymptotic_ratio(eps, mplaw::MpParams::make(1.0, static_cast<double>(n) / row.d));
    row.wall_time = seconds_since(t0);
    rows[i] = std::move(row);
  });
  return rows;
}

}  // namespace fieldrank::harness
