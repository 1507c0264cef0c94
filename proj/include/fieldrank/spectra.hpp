#pragma once

#include <span>
#include <vector>

#include "fieldrank/types.hpp"

namespace fieldrank::spectra {

/// Full eigenvalue set of a symmetric PSD matrix, sorted non-increasing.
/// trace is the diagonal sum of the input matrix; frobenius_sq is the sum of
/// squared eigenvalues. Tiny negative eigenvalues (within -n*u*lambda_1, u =
/// machine precision) are clamped to zero at construction.
struct Spectrum {
  std::vector<double> eigenvalues;
  double trace = 0.0;
  double frobenius_sq = 0.0;

  int n() const { return static_cast<int>(eigenvalues.size()); }
  /// Sum of eigenvalues, accumulated smallest-first.
  double total() const;
};

/// Spectrum plus orthonormal eigenvectors. Vectors are stored column-major:
/// vector(k) is contiguous and satisfies M v_k = lambda_k v_k.
struct EigenDecomposition {
  Spectrum spectrum;
  int n = 0;
  std::vector<double> vectors;  // n*n, vectors[k*n + i]

  std::span<const double> vector(int k) const {
    return {vectors.data() + static_cast<std::size_t>(k) * n, static_cast<std::size_t>(n)};
  }
};

/// reject: roundoff negatives (within -n*u*lambda_1) are clamped to zero,
/// anything lower is an error flagging a broken input matrix. keep_small:
/// eigenvalues down to -1e-6*lambda_1 are kept as computed, for kernels that
/// are only approximately positive definite (the squared-exponential with
/// geodesic distance is the known case); keeping them preserves the trace
/// identity that clamping would break.
enum class NegativePolicy { reject, keep_small };

/// Householder tridiagonalization followed by implicit-shift QL, 50 sweeps
/// per eigenvalue. Throws on non-convergence and on negative eigenvalues
/// beyond what the policy tolerates.
Spectrum sym_eig_values(const SymMatrix& m, NegativePolicy policy = NegativePolicy::reject);
EigenDecomposition sym_eig(const SymMatrix& m, NegativePolicy policy = NegativePolicy::reject);

/// Smallest N with sum_{i>N} lambda_i <= eps^2 * sum lambda_i  (eps in (0,1]).
int n_under(std::span<const double> evals_desc, double eps);
int n_under(const Spectrum& s, double eps);

/// Number of eigenvalues with sqrt(lambda) >= eps (inclusive threshold).
int n_over(std::span<const double> evals_desc, double eps);
int n_over(const Spectrum& s, double eps);

/// (1-eps^2)^2 * trace^2 / frobenius_sq; a lower bound on n_under.
double lower_bound(double trace, double frobenius_sq, double eps);

/// eps^-4 * frobenius_sq; an upper bound on n_over.
double upper_bound_nover(double frobenius_sq, double eps);

/// sqrt(sum_{i>N} lambda_i / sum lambda_i), the relative rms truncation error.
double truncation_error(std::span<const double> evals_desc, int N);

enum class DecayModel { power, stretched_exp };

/// Least-squares decay-rate fit over eigenvalues 2..last above 1e-14*lambda_1
/// (at least 8 values must clear the floor).
///   power:         lambda_n ~ C n^-p        -> returns p  (log lambda vs log n)
///   stretched_exp: lambda_n ~ C exp(-c n^(1/d)) -> returns c  (log lambda vs n^(1/d))
double decay_fit(std::span<const double> evals_desc, DecayModel model, int d);

/// Truncation-complexity summary at a given eps. Construction enforces the
/// lower/upper bound inequalities as hard assertions (throws on violation).
struct ComplexityReport {
  int n_under = 0;
  int n_over = 0;
  double lower_bound = 0.0;
  double upper_bound_nover = 0.0;
  double tail_energy_fraction = 0.0;
  double eps = 0.0;
};

ComplexityReport analyze(const Spectrum& s, double eps);

}  // namespace fieldrank::spectra
