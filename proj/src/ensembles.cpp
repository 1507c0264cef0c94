#include "fieldrank/ensembles.hpp"

#include <cmath>
#include <cstddef>

#include "fieldrank/rng.hpp"

namespace fieldrank::ensembles {

std::string dist_name(Dist d) {
  return d == Dist::gaussian ? "gaussian" : "rademacher";
}

Dist dist_from_name(const std::string& name) {
  if (name == "gaussian" || name == "normal") return Dist::gaussian;
  if (name == "rademacher" || name == "bernoulli") return Dist::rademacher;
  throw error("ensembles: unknown distribution '" + name + "'");
}

namespace {

void check_spec(const EnsembleSpec& spec, std::size_t max_entries) {
  if (spec.n < 1 || spec.d < 1) throw error("ensembles: n and d must be >= 1");
  const std::size_t entries = static_cast<std::size_t>(spec.n) * static_cast<std::size_t>(spec.d);
  if (entries > max_entries)
    throw error("ensembles: " + std::to_string(entries) + " entries exceed the cap of " +
                std::to_string(max_entries));
}

double draw(const rng::CounterRng& g, Dist dist, std::uint64_t counter) {
  return dist == Dist::gaussian ? g.normal(counter) : g.rademacher(counter);
}

}  // namespace

Matrix sample_iid(const EnsembleSpec& spec, std::size_t max_entries) {
  check_spec(spec, max_entries);
  if (spec.covariance)
    throw error("ensembles: sample_iid takes a spec without a covariance");
  Matrix v(spec.d, spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const rng::CounterRng g(spec.seed, static_cast<std::uint64_t>(i));
    for (int a = 0; a < spec.d; ++a) v(a, i) = draw(g, spec.dist, static_cast<std::uint64_t>(a));
  }
  return v;
}

Matrix cholesky(const SymMatrix& c) {
  const int n = c.n();
  auto attempt = [&](double jitter, Matrix& l) -> bool {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = c(i, j) + (i == j ? jitter : 0.0);
        for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
        if (i == j) {
          if (!(s > 0.0)) return false;
          l(i, i) = std::sqrt(s);
        } else {
          l(i, j) = s / l(j, j);
        }
      }
    }
    return true;
  };

  Matrix l(n, n);
  if (attempt(0.0, l)) return l;
  // squared-exponential covariances are routinely semidefinite to rounding
  const double jitter = 1e-12 * (c.trace() / n);
  Matrix l2(n, n);
  if (attempt(jitter, l2)) return l2;
  throw error("ensembles: Cholesky failed even with diagonal jitter; covariance is not SPD");
}

Matrix sample_correlated(const EnsembleSpec& spec, std::size_t max_entries) {
  if (!spec.covariance) throw error("ensembles: sample_correlated needs a covariance");
  const SymMatrix& c = *spec.covariance;
  if (c.n() != spec.n) throw error("ensembles: covariance must be n x n");
  EnsembleSpec iid = spec;
  iid.covariance.reset();
  const Matrix x = sample_iid(iid, max_entries);
  const Matrix l = cholesky(c);

  Matrix v(spec.d, spec.n);
  for (int a = 0; a < spec.d; ++a) {
    const double* xr = x.row(a);
    double* vr = v.row(a);
    for (int i = 0; i < spec.n; ++i) {
      const double* lr = l.row(i);
      double s = 0.0;
      for (int k = 0; k <= i; ++k) s += xr[k] * lr[k];
      vr[i] = s;
    }
  }
  return v;
}

GramResult gram_spectrum(const Matrix& v) {
  const int d = v.rows();
  const int n = v.cols();
  // transpose so each vector is a contiguous row
  Matrix vt(n, d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < n; ++i) vt(i, a) = v(a, i);

  SymMatrix a(n);
  const double inv_d = 1.0 / d;
  for (int i = 0; i < n; ++i) {
    const double* ri = vt.row(i);
    for (int j = i; j < n; ++j) {
      const double* rj = vt.row(j);
      double s0 = 0.0, s1 = 0.0;
      int k = 0;
      for (; k + 2 <= d; k += 2) {
        s0 += ri[k] * rj[k];
        s1 += ri[k + 1] * rj[k + 1];
      }
      for (; k < d; ++k) s0 += ri[k] * rj[k];
      a.set(i, j, (s0 + s1) * inv_d);
    }
  }

  const spectra::Spectrum s = spectra::sym_eig_values(a);
  GramResult g;
  g.eigenvalues_hat = s.eigenvalues;
  g.trace_hat = s.trace;
  g.n = n;
  g.d = d;
  return g;
}

int empirical_embedding_dim(const GramResult& g, double eps) {
  return spectra::n_under(std::span<const double>(g.eigenvalues_hat), eps);
}

Matrix sample_kl_field(const spectra::EigenDecomposition& eig, int n_terms, int n_samples,
                       std::uint64_t seed) {
  const int n = eig.n;
  if (n_terms < 0 || n_terms > n)
    throw error("ensembles: n_terms must be in [0, n]");
  if (n_samples < 1) throw error("ensembles: n_samples must be >= 1");
  Matrix field(n, n_samples);
  for (int s = 0; s < n_samples; ++s) {
    const rng::CounterRng g(seed, static_cast<std::uint64_t>(s));
    for (int t = 0; t < n_terms; ++t) {
      const double amp = std::sqrt(std::max(eig.spectrum.eigenvalues[t], 0.0)) *
                         g.normal(static_cast<std::uint64_t>(t));
      const double* vt = eig.vectors.data() + static_cast<std::size_t>(t) * n;
      for (int i = 0; i < n; ++i) field(i, s) += amp * vt[i];
    }
  }
  return field;
}

}  // namespace fieldrank::ensembles
