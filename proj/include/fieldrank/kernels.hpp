#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "fieldrank/types.hpp"

namespace fieldrank::kernels {

enum class Family { squared_exponential, exponential };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Stationary covariance kernel with correlation length sigma:
///   squared_exponential: exp(-|x-y|^2 / sigma^2)
///   exponential:         exp(-|x-y| / sigma)
/// Both equal 1 at zero distance and take values in (0,1].
struct KernelSpec {
  Family family = Family::squared_exponential;
  double sigma = 1.0;

  static KernelSpec squared_exponential(double sigma);
  static KernelSpec exponential(double sigma);
  /// Half-width convention exp(-|x-y|^2 / (2 sigma^2)), expressed through the
  /// standard family with correlation length sigma*sqrt(2). The two forms are
  /// identical functions; this constructor exists so call sites can say which
  /// convention they mean.
  static KernelSpec squared_exponential_halfwidth(double sigma);

  double operator()(double dist) const;
};

enum class DomainTag { interval, square, sphere };
enum class Metric { euclidean, geodesic };

std::string domain_name(DomainTag d);
DomainTag domain_from_name(const std::string& name);

/// Discretized spatial domain: n points with a metric and a spacing h.
/// interval/square: cell-centered uniform grid on [0,1]^d, points (k+1/2)*h
/// with h = 1/m and n = m^d. sphere: Fibonacci lattice on S^2 with h set to
/// the mean nearest-neighbor geodesic spacing.
struct PointCloud {
  std::vector<std::array<double, 3>> points;
  int ambient = 1;  // coordinates used per point (1, 2 or 3)
  int d = 1;        // intrinsic dimension (1 or 2)
  Metric metric = Metric::euclidean;
  DomainTag domain = DomainTag::interval;
  double h = 0.0;

  int n() const { return static_cast<int>(points.size()); }
};

/// Dense n*n storage guardrail; override via the caller-facing flags.
inline constexpr std::size_t kDefaultMaxPoints = 12000;

PointCloud build_interval(double h, std::size_t max_points = kDefaultMaxPoints);
PointCloud build_square(double h, std::size_t max_points = kDefaultMaxPoints);
PointCloud build_sphere(int n, std::size_t max_points = kDefaultMaxPoints);

/// h_or_n: grid spacing for interval/square, point count for sphere.
PointCloud build_domain(DomainTag tag, double h_or_n,
                        std::size_t max_points = kDefaultMaxPoints);

/// Lattice size whose mean nearest-neighbor spacing is close to h, using the
/// 1/sqrt(n) scaling of the Fibonacci lattice against a fixed probe.
int sphere_points_for_spacing(double h, std::size_t max_points = kDefaultMaxPoints);

double distance(const std::array<double, 3>& x, const std::array<double, 3>& y,
                Metric metric, int ambient = 3);

/// M[i][j] = kernel(distance(p_i, p_j)). Exactly symmetric, unit diagonal,
/// no quadrature weights.
SymMatrix assemble_covariance(const KernelSpec& kernel, const PointCloud& cloud,
                              std::size_t max_points = kDefaultMaxPoints);

}  // namespace fieldrank::kernels
