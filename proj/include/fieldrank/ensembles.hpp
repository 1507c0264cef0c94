#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fieldrank/spectra.hpp"
#include "fieldrank/types.hpp"

namespace fieldrank::ensembles {

enum class Dist { gaussian, rademacher };

std::string dist_name(Dist d);
Dist dist_from_name(const std::string& name);

/// n column vectors in R^d, entries mean 0 / variance 1, drawn from the
/// counter-based generator: column i is stream i of the given seed, so the
/// same spec always reproduces the same matrix bit for bit.
struct EnsembleSpec {
  int n = 1;
  int d = 1;
  Dist dist = Dist::gaussian;
  std::uint64_t seed = 0;
  std::optional<SymMatrix> covariance;  // n x n population covariance
};

inline constexpr std::size_t kDefaultMaxEntries = 50'000'000;

/// V (d x n) with i.i.d. entries; spec.covariance must be absent.
Matrix sample_iid(const EnsembleSpec& spec, std::size_t max_entries = kDefaultMaxEntries);

/// V = X L^T with X i.i.d. (same streams as sample_iid) and C = L L^T.
/// If the Cholesky factorization fails, 1e-12*(trace/n) is added to the
/// diagonal once before giving up.
Matrix sample_correlated(const EnsembleSpec& spec,
                         std::size_t max_entries = kDefaultMaxEntries);

/// Lower-triangular Cholesky factor of an SPD matrix (jitter policy above).
Matrix cholesky(const SymMatrix& c);

/// Eigenvalues of A_hat = (1/d) V^T V, descending.
struct GramResult {
  std::vector<double> eigenvalues_hat;
  double trace_hat = 0.0;
  int n = 0;
  int d = 0;
};

GramResult gram_spectrum(const Matrix& v);

/// n_under of the Gram spectrum; invariant under scaling of V.
int empirical_embedding_dim(const GramResult& g, double eps);

/// Truncated-KL synthesis: realization s is sum_t sqrt(lambda_t) e_t Y_{t,s}
/// with Y i.i.d. standard normal (stream = sample index). Returns the
/// points x samples matrix of field values.
Matrix sample_kl_field(const spectra::EigenDecomposition& eig, int n_terms, int n_samples,
                       std::uint64_t seed);

}  // namespace fieldrank::ensembles
