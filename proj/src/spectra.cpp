#include "fieldrank/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

namespace fieldrank::spectra {

namespace {

constexpr int kQlSweepCap = 50;

// Dot product with four accumulators; keeps the dependency chains short
// without changing the deterministic summation order across runs.
double dot(const double* x, const double* y, int n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += x[k] * y[k];
    s1 += x[k + 1] * y[k + 1];
    s2 += x[k + 2] * y[k + 2];
    s3 += x[k + 3] * y[k + 3];
  }
  for (; k < n; ++k) s0 += x[k] * y[k];
  return (s0 + s1) + (s2 + s3);
}

// Householder reduction to tridiagonal form. `a` is n x n row-major and fully
// symmetric on entry; it is destroyed. On exit d holds the diagonal, e the
// subdiagonal (e[i] = T(i,i-1), e[0] = 0). When hvec is non-null the scaled
// Householder vectors stay in the rows of `a` with their h factors in hvec,
// for later accumulation of the orthogonal transform.
//
// Both triangles of the active block are updated at every step so the A*u
// product runs on contiguous rows.
void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                    std::vector<double>& e, std::vector<double>* hvec) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  if (hvec) hvec->assign(n, 0.0);
  std::vector<double> q(n, 0.0);

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double* rowi = a.data() + static_cast<std::size_t>(i) * n;
    if (l == 0) {
      e[i] = rowi[l];
      continue;
    }
    double scale = 0.0;
    for (int k = 0; k <= l; ++k) scale += std::fabs(rowi[k]);
    if (scale == 0.0) {
      e[i] = rowi[l];
      continue;
    }
    double h = 0.0;
    for (int k = 0; k <= l; ++k) {
      rowi[k] /= scale;
      h += rowi[k] * rowi[k];
    }
    double f = rowi[l];
    const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
    e[i] = scale * g;
    h -= f * g;
    rowi[l] = f - g;

    // q = A u / h, then q -= (u.q / 2h) u, so that A' = A - u q^T - q u^T.
    f = 0.0;
    for (int j = 0; j <= l; ++j) {
      const double* rowj = a.data() + static_cast<std::size_t>(j) * n;
      q[j] = dot(rowj, rowi, l + 1) / h;
      f += q[j] * rowi[j];
    }
    const double hh = f / (h + h);
    for (int j = 0; j <= l; ++j) q[j] -= hh * rowi[j];

    for (int j = 0; j <= l; ++j) {
      const double uj = rowi[j];
      const double qj = q[j];
      double* rowj = a.data() + static_cast<std::size_t>(j) * n;
      for (int k = 0; k <= l; ++k) rowj[k] -= uj * q[k] + qj * rowi[k];
    }
    if (hvec) (*hvec)[i] = h;
  }
  for (int i = 0; i < n; ++i) d[i] = a[static_cast<std::size_t>(i) * n + i];
}

// Accumulate Q = P_{n-1} ... P_1 from the stored Householder vectors; the
// reflection for step i only touches rows/columns [0, i).
void accumulate_q(const std::vector<double>& a, const std::vector<double>& hvec, int n,
                  std::vector<double>& qmat) {
  qmat.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) qmat[static_cast<std::size_t>(i) * n + i] = 1.0;
  std::vector<double> s(n, 0.0);
  for (int i = 1; i < n; ++i) {
    const double h = hvec[i];
    if (h == 0.0) continue;
    const double* u = a.data() + static_cast<std::size_t>(i) * n;
    const int m = i;
    std::fill(s.begin(), s.begin() + m, 0.0);
    for (int r = 0; r < m; ++r) {
      const double ur = u[r];
      if (ur == 0.0) continue;
      const double* qr = qmat.data() + static_cast<std::size_t>(r) * n;
      for (int c = 0; c < m; ++c) s[c] += ur * qr[c];
    }
    for (int c = 0; c < m; ++c) s[c] /= h;
    for (int r = 0; r < m; ++r) {
      const double ur = u[r];
      if (ur == 0.0) continue;
      double* qr = qmat.data() + static_cast<std::size_t>(r) * n;
      for (int c = 0; c < m; ++c) qr[c] -= ur * s[c];
    }
  }
}

// Implicit-shift QL on the tridiagonal (d, e). e[i] = T(i,i+1) here, e[n-1]
// unused. vcols, when non-null, is the orthogonal basis stored column-major
// (vcols[k*n + i]); plane rotations are applied to adjacent columns.
void tql_implicit(std::vector<double>& d, std::vector<double>& e, int n,
                  std::vector<double>* vcols) {
  const double eps = std::numeric_limits<double>::epsilon();
  e[n - 1] = 0.0;
  // Deflate against the global matrix scale. Rank-deficient kernel matrices
  // produce whole sub-blocks at roundoff level; a local relative test would
  // chase noise there forever, while eps*||T|| is the accuracy a dense
  // symmetric solver can promise anyway.
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::fabs(d[i]) + std::fabs(e[i]);
    if (i > 0) row += std::fabs(e[i - 1]);
    anorm = std::max(anorm, row);
  }
  const double thresh = eps * anorm;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        if (std::fabs(e[m]) <= thresh) break;
      }
      if (m != l) {
        if (iter++ == kQlSweepCap)
          throw error("spectra: QL iteration failed to converge within 50 sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (vcols) {
            double* vi = vcols->data() + static_cast<std::size_t>(i) * n;
            double* vi1 = vcols->data() + static_cast<std::size_t>(i + 1) * n;
            for (int k = 0; k < n; ++k) {
              f = vi1[k];
              vi1[k] = s * vi[k] + c * f;
              vi[k] = c * vi[k] - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

// Apply the negative-eigenvalue policy: clamp roundoff negatives and flag
// real ones (reject), or keep small genuine negatives intact (keep_small).
void clamp_psd(std::vector<double>& evals, int n, NegativePolicy policy) {
  double lmax = 0.0;
  for (double v : evals) lmax = std::max(lmax, v);
  if (policy == NegativePolicy::keep_small) {
    const double floor = -1e-6 * std::max(lmax, 1e-300);
    for (double v : evals)
      if (v < floor)
        throw error("spectra: eigenvalue " + std::to_string(v) +
                    " below the indefiniteness allowance " + std::to_string(floor));
    return;
  }
  const double floor = -static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                       std::max(lmax, 1e-300);
  for (double& v : evals) {
    if (v < 0.0) {
      if (v < floor)
        throw error("spectra: eigenvalue " + std::to_string(v) +
                    " below the PSD roundoff floor " + std::to_string(floor) +
                    "; input matrix is not positive semidefinite");
      v = 0.0;
    }
  }
}

// Every decomposition must conserve the trace to 1e-10 and the squared
// Frobenius norm to 1e-8, relative; a violation means the solver (or the
// caller's matrix) is broken, so it is a hard error.
Spectrum finish_spectrum(std::vector<double> evals, double input_trace, double input_frob) {
  Spectrum s;
  s.eigenvalues = std::move(evals);
  s.trace = input_trace;
  double sum = 0.0, f = 0.0;
  for (auto it = s.eigenvalues.rbegin(); it != s.eigenvalues.rend(); ++it) {
    sum += *it;
    f += *it * *it;
  }
  s.frobenius_sq = f;
  if (std::fabs(sum - input_trace) > 1e-10 * std::fabs(input_trace))
    throw error("spectra: trace identity violated (sum " + std::to_string(sum) +
                " vs trace " + std::to_string(input_trace) + ")");
  if (std::fabs(f - input_frob) > 1e-8 * input_frob)
    throw error("spectra: frobenius identity violated (sum " + std::to_string(f) + " vs " +
                std::to_string(input_frob) + ")");
  return s;
}

}  // namespace

double Spectrum::total() const {
  double t = 0.0;
  for (auto it = eigenvalues.rbegin(); it != eigenvalues.rend(); ++it) t += *it;
  return t;
}

Spectrum sym_eig_values(const SymMatrix& m, NegativePolicy policy) {
  const int n = m.n();
  std::vector<double> a = m.data();
  std::vector<double> d, e;
  tridiagonalize(a, n, d, e, nullptr);
  if (n > 1) {
    // shift subdiagonal to e[i] = T(i,i+1)
    for (int i = 0; i < n - 1; ++i) e[i] = e[i + 1];
  }
  e[n - 1] = 0.0;
  if (n > 1) tql_implicit(d, e, n, nullptr);
  std::sort(d.begin(), d.end(), std::greater<double>());
  clamp_psd(d, n, policy);
  return finish_spectrum(std::move(d), m.trace(), m.frobenius_sq());
}

EigenDecomposition sym_eig(const SymMatrix& m, NegativePolicy policy) {
  const int n = m.n();
  std::vector<double> a = m.data();
  std::vector<double> d, e, hvec;
  tridiagonalize(a, n, d, e, &hvec);

  std::vector<double> qrow;
  accumulate_q(a, hvec, n, qrow);
  // transpose to column-major so QL rotations touch contiguous columns
  std::vector<double> vcols(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      vcols[static_cast<std::size_t>(c) * n + r] = qrow[static_cast<std::size_t>(r) * n + c];

  if (n > 1) {
    for (int i = 0; i < n - 1; ++i) e[i] = e[i + 1];
  }
  e[n - 1] = 0.0;
  if (n > 1) tql_implicit(d, e, n, &vcols);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] > d[y]; });

  EigenDecomposition out;
  out.n = n;
  out.vectors.resize(static_cast<std::size_t>(n) * n);
  std::vector<double> sorted(n);
  for (int k = 0; k < n; ++k) {
    sorted[k] = d[order[k]];
    std::copy_n(vcols.data() + static_cast<std::size_t>(order[k]) * n, n,
                out.vectors.data() + static_cast<std::size_t>(k) * n);
  }
  clamp_psd(sorted, n, policy);
  out.spectrum = finish_spectrum(std::move(sorted), m.trace(), m.frobenius_sq());
  return out;
}

int n_under(std::span<const double> evals_desc, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw error("spectra: n_under needs eps in (0,1]");
  const int n = static_cast<int>(evals_desc.size());
  double total = 0.0;
  for (int i = n - 1; i >= 0; --i) total += evals_desc[i];
  if (!(total > 0.0)) throw error("spectra: n_under on a zero-trace spectrum");
  const double target = eps * eps * total;
  double tail = 0.0;
  int result = n;
  for (int k = n - 1; k >= 0; --k) {
    tail += evals_desc[k];
    if (tail <= target)
      result = k;
    else
      break;
  }
  return result;
}

int n_under(const Spectrum& s, double eps) { return n_under(std::span(s.eigenvalues), eps); }

int n_over(std::span<const double> evals_desc, double eps) {
  if (!(eps > 0.0)) throw error("spectra: n_over needs eps > 0");
  int count = 0;
  for (double v : evals_desc) {
    if (std::sqrt(std::max(v, 0.0)) >= eps)
      ++count;
    else
      break;
  }
  return count;
}

int n_over(const Spectrum& s, double eps) { return n_over(std::span(s.eigenvalues), eps); }

double lower_bound(double trace, double frobenius_sq, double eps) {
  if (!(trace > 0.0)) throw error("spectra: lower_bound needs trace > 0");
  if (!(frobenius_sq > 0.0)) throw error("spectra: lower_bound needs frobenius_sq > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw error("spectra: lower_bound needs eps in (0,1)");
  const double c = 1.0 - eps * eps;
  return c * c * trace * trace / frobenius_sq;
}

double upper_bound_nover(double frobenius_sq, double eps) {
  if (!(eps > 0.0)) throw error("spectra: upper_bound_nover needs eps > 0");
  const double e2 = eps * eps;
  return frobenius_sq / (e2 * e2);
}

double truncation_error(std::span<const double> evals_desc, int N) {
  const int n = static_cast<int>(evals_desc.size());
  if (N < 0 || N > n) throw error("spectra: truncation_error needs 0 <= N <= n");
  double total = 0.0, tail = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    total += evals_desc[i];
    if (i >= N) tail = total;
  }
  if (!(total > 0.0)) throw error("spectra: truncation_error on a zero-trace spectrum");
  return std::sqrt(std::max(tail, 0.0) / total);
}

double decay_fit(std::span<const double> evals_desc, DecayModel model, int d) {
  if (d < 1) throw error("spectra: decay_fit needs d >= 1");
  const int n = static_cast<int>(evals_desc.size());
  if (n < 2) throw error("spectra: decay_fit needs at least 2 eigenvalues");
  const double floor = 1e-14 * evals_desc[0];
  int usable = 0;
  for (double v : evals_desc) {
    if (v >= floor && v > 0.0)
      ++usable;
    else
      break;
  }
  if (usable < 8)
    throw error("spectra: decay_fit needs >= 8 eigenvalues above the 1e-14*lambda_1 floor");

  // fit over 1-indexed positions 2..usable; lambda_1 carries boundary effects
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (int k = 1; k < usable; ++k) {
    const double idx = static_cast<double>(k + 1);
    const double x = (model == DecayModel::power) ? std::log(idx) : std::pow(idx, 1.0 / d);
    const double y = std::log(evals_desc[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw error("spectra: decay_fit is degenerate");
  const double slope = (m * sxy - sx * sy) / denom;
  return -slope;
}

ComplexityReport analyze(const Spectrum& s, double eps) {
  ComplexityReport r;
  r.eps = eps;
  r.n_under = n_under(s, eps);
  r.n_over = n_over(s, eps);
  const double total = s.total();
  const double frob = s.frobenius_sq;
  r.upper_bound_nover = upper_bound_nover(frob, eps);
  r.lower_bound = (eps < 1.0) ? lower_bound(total, frob, eps) : 0.0;
  r.tail_energy_fraction = [&] {
    double t = truncation_error(std::span(s.eigenvalues), r.n_under);
    return t * t;
  }();

  // Hard bound checks; the 1e-9 slack only absorbs floating-point rounding.
  if (static_cast<double>(r.n_under) < r.lower_bound - 1e-9 * (1.0 + r.lower_bound))
    throw error("spectra: lower-bound inequality violated (n_under=" +
                std::to_string(r.n_under) + " < " + std::to_string(r.lower_bound) + ")");
  if (static_cast<double>(r.n_over) > r.upper_bound_nover * (1.0 + 1e-12) + 1e-9)
    throw error("spectra: upper-bound inequality violated (n_over=" +
                std::to_string(r.n_over) + " > " + std::to_string(r.upper_bound_nover) + ")");
  return r;
}

}  // namespace fieldrank::spectra
