#include "fieldrank/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "fieldrank/expanalytic.hpp"
#include "fieldrank/harness.hpp"
#include "fieldrank/kernels.hpp"
#include "fieldrank/mplaw.hpp"
#include "fieldrank/spectra.hpp"
#include "fieldrank/table.hpp"
#include "fieldrank/types.hpp"

namespace fieldrank::cli {

namespace {

using nlohmann::ordered_json;
using table::Cell;
using table::Document;
using table::Table;

struct CommonOpts {
  std::string format;  // per-subcommand default, "csv" unless stated
  std::string out;     // empty = stdout
  int threads = 0;     // 0 = available parallelism
  std::size_t max_points = kernels::kDefaultMaxPoints;
  bool timings = false;
  std::uint64_t seed = 1u;

  harness::Options harness_opts() const {
    harness::Options o;
    o.threads = threads > 0 ? threads
                            : std::max(1u, std::thread::hardware_concurrency());
    o.max_points = max_points;
    return o;
  }
};

void add_common(CLI::App* cmd, CommonOpts& c, const std::string& default_format = "csv") {
  // long-form help only, so --h stays available as the grid-spacing flag
  cmd->set_help_flag("--help", "print this help message");
  c.format = default_format;
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("FIELDRANK_FORMAT")
      ->capture_default_str();
  cmd->add_option("--out,-o", c.out, "output path (default: stdout)")
      ->envname("FIELDRANK_OUT");
  cmd->add_option("--threads", c.threads,
                  "worker threads (0 = available parallelism, 1 = serial)")
      ->envname("FIELDRANK_THREADS")
      ->capture_default_str();
  cmd->add_option("--max-points", c.max_points, "dense-matrix point cap")
      ->envname("FIELDRANK_MAX_POINTS")
      ->capture_default_str();
  cmd->add_flag("--timings", c.timings, "include wall_time columns in outputs");
  cmd->add_option("--seed", c.seed, "master seed for randomized commands")
      ->envname("FIELDRANK_SEED")
      ->capture_default_str();
}

struct KernelArgs {
  std::string kernel = "sq-exp";
  std::string domain = "interval";
  double sigma = 0.1;
  double r = 0.0;
  double h = 0.0;
  int points = 0;  // sphere only
};

void add_kernel_args(CLI::App* cmd, KernelArgs& k, bool need_resolution = true) {
  cmd->set_help_flag("--help", "print this help message");
  cmd->add_option("--kernel", k.kernel, "sq-exp or exp")
      ->envname("FIELDRANK_KERNEL")
      ->capture_default_str();
  cmd->add_option("--domain", k.domain, "interval, square or sphere")
      ->envname("FIELDRANK_DOMAIN")
      ->capture_default_str();
  cmd->add_option("--sigma", k.sigma, "correlation length (domain units)")
      ->envname("FIELDRANK_SIGMA")
      ->capture_default_str();
  if (need_resolution) {
    auto* r_opt = cmd->add_option("--r", k.r, "points per sigma (h = sigma/r)");
    auto* h_opt = cmd->add_option("--h", k.h, "grid spacing");
    r_opt->excludes(h_opt);
    h_opt->excludes(r_opt);
    cmd->add_option("--points", k.points, "sphere lattice size (overrides --r/--h)");
  }
}

kernels::PointCloud make_cloud(const KernelArgs& k, const CommonOpts& c) {
  const kernels::DomainTag tag = kernels::domain_from_name(k.domain);
  double h = k.h;
  if (h <= 0.0) {
    if (!(k.r > 0.0) && !(tag == kernels::DomainTag::sphere && k.points > 0))
      throw error("cli: one of --r, --h or (sphere) --points is required");
    if (k.r > 0.0) h = k.sigma / k.r;
  }
  if (tag == kernels::DomainTag::sphere) {
    const int n = k.points > 0 ? k.points
                               : kernels::sphere_points_for_spacing(h, c.max_points);
    return kernels::build_sphere(n, c.max_points);
  }
  return kernels::build_domain(tag, h, c.max_points);
}

ordered_json base_config(const std::string& subcommand, const CommonOpts& c) {
  ordered_json cfg;
  cfg["tool"] = "fieldrank";
  cfg["version"] = kVersion;
  cfg["subcommand"] = subcommand;
  cfg["format"] = c.format;
  cfg["threads"] = c.threads;
  cfg["max_points"] = c.max_points;
  return cfg;
}

void emit(const Document& doc, const CommonOpts& c) {
  const std::string content = (c.format == "json") ? table::to_json(doc) : table::to_csv(doc);
  if (c.out.empty())
    std::cout << content;
  else
    table::write_file_atomic(c.out, content);
}

Table sweep_table(const std::vector<harness::SweepRow>& rows, bool timings) {
  Table t;
  t.columns = {"experiment_id", "kernel", "domain", "sigma", "r",
               "eps",           "n",      "n_under", "n_over", "lower_bound"};
  if (timings) t.columns.push_back("wall_time");
  for (const auto& row : rows) {
    std::vector<Cell> cells = {row.experiment_id,
                               kernels::family_name(row.family),
                               kernels::domain_name(row.domain),
                               row.sigma,
                               row.r,
                               row.eps,
                               std::int64_t{row.n},
                               std::int64_t{row.n_under},
                               std::int64_t{row.n_over},
                               row.lower_bound};
    if (timings) cells.emplace_back(row.wall_time);
    t.add_row(std::move(cells));
  }
  return t;
}

Table fits_table(const std::vector<harness::FitResult>& fits) {
  Table t;
  t.columns = {"label", "model", "slope", "intercept", "r_squared", "points"};
  for (const auto& f : fits)
    t.add_row({f.label, harness::fit_model_name(f.model), f.slope, f.intercept, f.r_squared,
               std::int64_t{f.points}});
  return t;
}

int cmd_spectrum(const KernelArgs& k, const CommonOpts& c, int top) {
  const kernels::PointCloud cloud = make_cloud(k, c);
  const kernels::KernelSpec kernel{kernels::family_from_name(k.kernel), k.sigma};
  const SymMatrix m = kernels::assemble_covariance(kernel, cloud, c.max_points);
  const spectra::Spectrum s =
      spectra::sym_eig_values(m, harness::negative_policy_for(kernel.family, cloud.domain));

  Document doc;
  doc.config = base_config("spectrum", c);
  doc.config["kernel"] = kernels::family_name(kernel.family);
  doc.config["domain"] = kernels::domain_name(cloud.domain);
  doc.config["sigma"] = k.sigma;
  doc.config["n"] = m.n();
  doc.config["h"] = cloud.h;
  doc.config["trace"] = s.trace;
  doc.config["frobenius_sq"] = s.frobenius_sq;
  doc.rows.columns = {"index", "lambda"};
  const int count = top > 0 ? std::min(top, s.n()) : s.n();
  for (int i = 0; i < count; ++i)
    doc.rows.add_row({std::int64_t{i + 1}, s.eigenvalues[i]});
  emit(doc, c);
  return 0;
}

int cmd_complexity(const KernelArgs& k, const CommonOpts& c, const std::vector<double>& eps) {
  const kernels::PointCloud cloud = make_cloud(k, c);
  const kernels::KernelSpec kernel{kernels::family_from_name(k.kernel), k.sigma};
  const SymMatrix m = kernels::assemble_covariance(kernel, cloud, c.max_points);
  const spectra::Spectrum s =
      spectra::sym_eig_values(m, harness::negative_policy_for(kernel.family, cloud.domain));

  Document doc;
  doc.config = base_config("complexity", c);
  doc.config["kernel"] = kernels::family_name(kernel.family);
  doc.config["domain"] = kernels::domain_name(cloud.domain);
  doc.config["sigma"] = k.sigma;
  doc.config["n"] = m.n();
  doc.config["h"] = cloud.h;
  doc.rows.columns = {"eps",        "n",          "n_under",
                      "n_over",     "lower_bound", "upper_bound_nover",
                      "tail_energy_fraction"};
  for (double e : eps) {
    const spectra::ComplexityReport rep = spectra::analyze(s, e);
    doc.rows.add_row({e, std::int64_t{m.n()}, std::int64_t{rep.n_under},
                      std::int64_t{rep.n_over}, rep.lower_bound, rep.upper_bound_nover,
                      rep.tail_energy_fraction});
  }
  emit(doc, c);
  return 0;
}

int cmd_sweep_res(const KernelArgs& k, const CommonOpts& c, const std::vector<double>& r_list,
                  const std::vector<double>& eps) {
  const auto rows = harness::resolution_sweep(kernels::family_from_name(k.kernel),
                                              kernels::domain_from_name(k.domain), k.sigma,
                                              r_list, eps, c.harness_opts());
  Document doc;
  doc.config = base_config("sweep-res", c);
  doc.config["kernel"] = k.kernel;
  doc.config["domain"] = k.domain;
  doc.config["sigma"] = k.sigma;
  doc.config["r_list"] = r_list;
  doc.config["eps"] = eps;
  doc.rows = sweep_table(rows, c.timings);
  emit(doc, c);
  return 0;
}

int cmd_sweep_sigma(const KernelArgs& k, const CommonOpts& c, double r,
                    const std::vector<double>& sigma_list, const std::vector<double>& eps) {
  const auto res = harness::sigma_sweep(kernels::family_from_name(k.kernel),
                                        kernels::domain_from_name(k.domain), r, sigma_list,
                                        eps, c.harness_opts());
  Document doc;
  doc.config = base_config("sweep-sigma", c);
  doc.config["kernel"] = k.kernel;
  doc.config["domain"] = k.domain;
  doc.config["r"] = r;
  doc.config["sigma_list"] = sigma_list;
  doc.config["eps"] = eps;
  doc.rows = sweep_table(res.rows, c.timings);
  doc.fits = fits_table(res.fits);
  emit(doc, c);
  return 0;
}

int cmd_sweep_eps(const KernelArgs& k, const CommonOpts& c, double r,
                  const std::vector<double>& eps) {
  const auto res = harness::eps_sweep(kernels::family_from_name(k.kernel),
                                      kernels::domain_from_name(k.domain), k.sigma, r, eps,
                                      c.harness_opts());
  Document doc;
  doc.config = base_config("sweep-eps", c);
  doc.config["kernel"] = k.kernel;
  doc.config["domain"] = k.domain;
  doc.config["sigma"] = k.sigma;
  doc.config["r"] = r;
  doc.config["eps"] = eps;
  doc.rows = sweep_table(res.rows, c.timings);
  doc.fits = fits_table({res.fit});
  emit(doc, c);
  return 0;
}

int cmd_mp(const CommonOpts& c, double alpha, double sigma2, const std::vector<double>& eps,
           double d) {
  const mplaw::MpParams p = mplaw::MpParams::make(sigma2, alpha);
  Document doc;
  doc.config = base_config("mp", c);
  doc.config["alpha"] = alpha;
  doc.config["sigma2"] = sigma2;
  doc.config["lambda_minus"] = p.lambda_minus;
  doc.config["lambda_plus"] = p.lambda_plus;
  if (d > 0.0) doc.config["d"] = d;
  doc.rows.columns = {"eps", "y", "rho", "drho_deps", "best_k_error_roundtrip"};
  if (d > 0.0) doc.rows.columns.push_back("eps_rank_ratio");
  for (double e : eps) {
    const double y = (e < 1.0) ? mplaw::solve_quantile(e, p) : p.lambda_plus;
    const double rho = mplaw::asymptotic_ratio(e, p);
    const double drho = (e < 1.0) ? mplaw::rho_derivative(e, p) : 0.0;
    std::vector<Cell> cells = {e, y, rho, drho, mplaw::best_k_error(rho, p)};
    if (d > 0.0) cells.emplace_back(mplaw::asymptotic_eps_rank_ratio(e, d, p));
    doc.rows.add_row(std::move(cells));
  }
  emit(doc, c);
  return 0;
}

int cmd_exp_analytic(const CommonOpts& c, int n, double tau, const std::vector<double>& eps) {
  const expanalytic::ExpSpectrum s = expanalytic::solve_thetas(n, tau);
  double max_residual = 0.0;
  for (int k = 0; k < n; ++k)
    max_residual = std::max(max_residual, std::fabs(expanalytic::theta_residual(s, k)));

  Document doc;
  doc.config = base_config("exp-analytic", c);
  doc.config["n"] = n;
  doc.config["tau"] = tau;
  doc.config["lambda_max"] = s.lambdas.front();
  doc.config["lambda_min"] = s.lambdas.back();
  doc.config["theta_residual_max"] = max_residual;
  doc.rows.columns = {"eps", "n", "tau", "n_under", "ratio", "t_asymptotic"};
  for (double e : eps) {
    const int nu = spectra::n_under(std::span<const double>(s.lambdas), e);
    doc.rows.add_row({e, std::int64_t{n}, tau, std::int64_t{nu},
                      static_cast<double>(nu) / n, expanalytic::asymptotic_t(e, tau)});
  }
  emit(doc, c);
  return 0;
}

int cmd_embed(const CommonOpts& c, std::vector<int> n_list, double alpha, double d_opt,
              const std::string& dist, const std::vector<double>& eps,
              const std::vector<double>& cov_sigmas) {
  if (n_list.empty()) throw error("cli: embed needs at least one --n");
  if (d_opt > 0.0) {
    if (n_list.size() != 1) throw error("cli: --d requires a single --n");
    alpha = n_list[0] / d_opt;
  }
  if (!(alpha > 0.0)) throw error("cli: embed needs --alpha or --d");

  Document doc;
  doc.config = base_config("embed", c);
  doc.config["dist"] = dist;
  doc.config["n_list"] = n_list;
  doc.config["alpha"] = alpha;
  doc.config["eps"] = eps;
  doc.config["seed"] = c.seed;

  if (!cov_sigmas.empty()) {
    if (eps.size() != 1)
      throw error("cli: embed with --cov-exp-sigma needs exactly one --eps");
    doc.config["cov_exp_sigma"] = cov_sigmas;
    std::vector<double> taus;
    for (double sig : cov_sigmas) taus.push_back(1.0 / sig);
    const auto rows = harness::exp_kernel_comparison(n_list, taus, eps[0], 1.0 / alpha,
                                                     c.seed, c.harness_opts());
    doc.rows.columns = {"experiment_id", "n",  "sigma_idx",      "tau",
                        "eps",           "d",  "t_asymptotic",   "ratio_analytic",
                        "ratio_dense",   "ratio_ensemble", "mp_iid_ratio"};
    if (c.timings) doc.rows.columns.push_back("wall_time");
    for (const auto& row : rows) {
      std::vector<Cell> cells = {row.experiment_id, std::int64_t{row.n}, row.sigma_idx,
                                 row.tau,           row.eps,             std::int64_t{row.d},
                                 row.t_asymptotic,  row.ratio_analytic,  row.ratio_dense,
                                 row.ratio_ensemble, row.mp_iid_ratio};
      if (c.timings) cells.emplace_back(row.wall_time);
      doc.rows.add_row(std::move(cells));
    }
  } else {
    const auto rows = harness::mp_comparison(ensembles::dist_from_name(dist), n_list, alpha,
                                             eps, c.seed, c.harness_opts());
    doc.rows.columns = {"experiment_id", "dist", "n",          "d",
                        "alpha",         "eps",  "n_under_emp", "n_under_pred",
                        "eps_rank_emp",  "eps_rank_pred", "abs_gap_n_under",
                        "rel_gap_n_under", "abs_gap_rank"};
    if (c.timings) doc.rows.columns.push_back("wall_time");
    for (const auto& row : rows) {
      std::vector<Cell> cells = {row.experiment_id,
                                 ensembles::dist_name(row.dist),
                                 std::int64_t{row.n},
                                 std::int64_t{row.d},
                                 row.alpha,
                                 row.eps,
                                 std::int64_t{row.n_under_emp},
                                 row.n_under_pred,
                                 std::int64_t{row.eps_rank_emp},
                                 row.eps_rank_pred,
                                 row.abs_gap_n_under,
                                 row.rel_gap_n_under,
                                 row.abs_gap_rank};
      if (c.timings) cells.emplace_back(row.wall_time);
      doc.rows.add_row(std::move(cells));
    }
  }
  emit(doc, c);
  return 0;
}

int cmd_field_sample(const KernelArgs& k, const CommonOpts& c, int terms, int samples) {
  const kernels::PointCloud cloud = make_cloud(k, c);
  const kernels::KernelSpec kernel{kernels::family_from_name(k.kernel), k.sigma};
  const SymMatrix m = kernels::assemble_covariance(kernel, cloud, c.max_points);
  const spectra::EigenDecomposition eig =
      spectra::sym_eig(m, harness::negative_policy_for(kernel.family, cloud.domain));
  const int n_terms = terms >= 0 ? std::min(terms, m.n()) : m.n();
  const Matrix field = ensembles::sample_kl_field(eig, n_terms, samples, c.seed);

  Document doc;
  doc.config = base_config("field-sample", c);
  doc.config["kernel"] = kernels::family_name(kernel.family);
  doc.config["domain"] = kernels::domain_name(cloud.domain);
  doc.config["sigma"] = k.sigma;
  doc.config["n"] = m.n();
  doc.config["terms"] = n_terms;
  doc.config["samples"] = samples;
  doc.config["seed"] = c.seed;

  doc.rows.columns = {"point"};
  const char* coords[3] = {"x", "y", "z"};
  for (int a = 0; a < cloud.ambient; ++a) doc.rows.columns.push_back(coords[a]);
  for (int s = 0; s < samples; ++s) doc.rows.columns.push_back("sample_" + std::to_string(s));
  for (int i = 0; i < m.n(); ++i) {
    std::vector<Cell> cells = {std::int64_t{i}};
    for (int a = 0; a < cloud.ambient; ++a) cells.emplace_back(cloud.points[i][a]);
    for (int s = 0; s < samples; ++s) cells.emplace_back(field(i, s));
    doc.rows.add_row(std::move(cells));
  }
  emit(doc, c);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"covariance-spectrum complexity toolkit"};
  app.set_config("--config", "", "read defaults from an INI/TOML file");
  app.require_subcommand(1);
  app.fallthrough();  // lets --config appear after the subcommand name

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "eigenvalues of a discretized covariance kernel");
  KernelArgs sp_k;
  CommonOpts sp_c;
  int sp_top = 0;
  add_kernel_args(sp, sp_k);
  add_common(sp, sp_c);
  sp->add_option("--top", sp_top, "emit only the top K eigenvalues");

  // complexity
  auto* cx = app.add_subcommand("complexity", "truncation dimensions and bounds at given eps");
  KernelArgs cx_k;
  CommonOpts cx_c;
  std::vector<double> cx_eps{0.1};
  add_kernel_args(cx, cx_k);
  add_common(cx, cx_c);
  cx->add_option("--eps", cx_eps, "tolerance list")->delimiter(',');

  // sweep-res
  auto* sr = app.add_subcommand("sweep-res", "resolution sweep at fixed sigma");
  KernelArgs sr_k;
  CommonOpts sr_c;
  std::vector<double> sr_r{2, 4, 8}, sr_eps{0.1};
  add_kernel_args(sr, sr_k, /*need_resolution=*/false);
  add_common(sr, sr_c);
  sr->add_option("--r-list", sr_r, "resolutions (points per sigma)")->delimiter(',');
  sr->add_option("--eps", sr_eps, "tolerance list")->delimiter(',');

  // sweep-sigma
  auto* ss = app.add_subcommand("sweep-sigma", "correlation-length sweep at fixed resolution");
  KernelArgs ss_k;
  CommonOpts ss_c;
  double ss_r = 4.0;
  std::vector<double> ss_sigma, ss_eps{0.1};
  add_kernel_args(ss, ss_k, /*need_resolution=*/false);
  add_common(ss, ss_c);
  ss->add_option("--r", ss_r, "points per sigma")->capture_default_str();
  ss->add_option("--sigma-list", ss_sigma, "correlation lengths")->delimiter(',')->required();
  ss->add_option("--eps", ss_eps, "tolerance list")->delimiter(',');

  // sweep-eps
  auto* se = app.add_subcommand("sweep-eps", "tolerance sweep on one decomposition");
  KernelArgs se_k;
  CommonOpts se_c;
  double se_r = 4.0;
  std::vector<double> se_eps;
  add_kernel_args(se, se_k, /*need_resolution=*/false);
  add_common(se, se_c);
  se->add_option("--r", se_r, "points per sigma")->capture_default_str();
  se->add_option("--eps", se_eps, "tolerance list (>= 2 decades)")->delimiter(',')->required();

  // mp
  auto* mp = app.add_subcommand("mp", "Marchenko-Pastur embedding analytics");
  CommonOpts mp_c;
  double mp_alpha = 0.25, mp_sigma2 = 1.0, mp_d = 0.0;
  std::vector<double> mp_eps{0.1};
  add_common(mp, mp_c, /*default_format=*/"json");
  mp->add_option("--alpha", mp_alpha, "aspect ratio n/d")->capture_default_str();
  mp->add_option("--sigma2", mp_sigma2, "entry variance")->capture_default_str();
  mp->add_option("--eps", mp_eps, "tolerance list")->delimiter(',');
  mp->add_option("--d", mp_d, "ambient dimension, enables eps_rank_ratio");

  // exp-analytic
  auto* ea = app.add_subcommand("exp-analytic",
                                "analytic spectrum of C[i][j] = exp(-tau|i-j|)");
  CommonOpts ea_c;
  int ea_n = 100;
  double ea_tau = 1.0;
  std::vector<double> ea_eps{0.1};
  add_common(ea, ea_c);
  ea->add_option("--n", ea_n, "matrix size")->capture_default_str();
  ea->add_option("--tau", ea_tau, "inverse correlation length (index units)")
      ->capture_default_str();
  ea->add_option("--eps", ea_eps, "tolerance list")->delimiter(',');

  // embed
  auto* em = app.add_subcommand("embed",
                                "empirical embedding dimensions vs asymptotic predictions");
  CommonOpts em_c;
  std::vector<int> em_n{500};
  double em_alpha = 0.0, em_d = 0.0;
  std::string em_dist = "gaussian";
  std::vector<double> em_eps{0.1};
  std::vector<double> em_cov;
  add_common(em, em_c);
  em->add_option("--n", em_n, "ensemble sizes")->delimiter(',');
  em->add_option("--alpha", em_alpha, "aspect ratio n/d");
  em->add_option("--d", em_d, "ambient dimension (single --n only)");
  em->add_option("--dist", em_dist, "gaussian or rademacher")->capture_default_str();
  em->add_option("--eps", em_eps, "tolerance list")->delimiter(',');
  em->add_option("--cov-exp-sigma", em_cov,
                 "exponential-covariance correlation lengths (index units)")
      ->delimiter(',');

  // field-sample
  auto* fs = app.add_subcommand("field-sample", "truncated-KL field realizations");
  KernelArgs fs_k;
  CommonOpts fs_c;
  int fs_terms = -1, fs_samples = 1;
  add_kernel_args(fs, fs_k);
  add_common(fs, fs_c);
  fs->add_option("--terms", fs_terms, "KL terms (-1 = all)")->capture_default_str();
  fs->add_option("--samples", fs_samples, "number of realizations")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(sp)) return cmd_spectrum(sp_k, sp_c, sp_top);
    if (app.got_subcommand(cx)) return cmd_complexity(cx_k, cx_c, cx_eps);
    if (app.got_subcommand(sr)) return cmd_sweep_res(sr_k, sr_c, sr_r, sr_eps);
    if (app.got_subcommand(ss)) return cmd_sweep_sigma(ss_k, ss_c, ss_r, ss_sigma, ss_eps);
    if (app.got_subcommand(se)) return cmd_sweep_eps(se_k, se_c, se_r, se_eps);
    if (app.got_subcommand(mp)) return cmd_mp(mp_c, mp_alpha, mp_sigma2, mp_eps, mp_d);
    if (app.got_subcommand(ea)) return cmd_exp_analytic(ea_c, ea_n, ea_tau, ea_eps);
    if (app.got_subcommand(em))
      return cmd_embed(em_c, em_n, em_alpha, em_d, em_dist, em_eps, em_cov);
    if (app.got_subcommand(fs)) return cmd_field_sample(fs_k, fs_c, fs_terms, fs_samples);
    std::cerr << "fieldrank: no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fieldrank: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace fieldrank::cli
