#include "fieldrank/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fieldrank::kernels {

std::string family_name(Family f) {
  switch (f) {
    case Family::squared_exponential: return "squared_exponential";
    case Family::exponential: return "exponential";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "squared_exponential" || name == "sq-exp" || name == "gaussian")
    return Family::squared_exponential;
  if (name == "exponential" || name == "exp") return Family::exponential;
  throw error("kernels: unknown kernel family '" + name + "'");
}

std::string domain_name(DomainTag d) {
  switch (d) {
    case DomainTag::interval: return "interval";
    case DomainTag::square: return "square";
    case DomainTag::sphere: return "sphere";
  }
  return "?";
}

DomainTag domain_from_name(const std::string& name) {
  if (name == "interval") return DomainTag::interval;
  if (name == "square") return DomainTag::square;
  if (name == "sphere") return DomainTag::sphere;
  throw error("kernels: unknown domain '" + name + "'");
}

static void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw error("kernels: correlation length sigma must be positive");
}

KernelSpec KernelSpec::squared_exponential(double sigma) {
  check_sigma(sigma);
  return {Family::squared_exponential, sigma};
}

KernelSpec KernelSpec::exponential(double sigma) {
  check_sigma(sigma);
  return {Family::exponential, sigma};
}

KernelSpec KernelSpec::squared_exponential_halfwidth(double sigma) {
  check_sigma(sigma);
  return {Family::squared_exponential, sigma * std::sqrt(2.0)};
}

double KernelSpec::operator()(double dist) const {
  const double u = dist / sigma;
  return family == Family::squared_exponential ? std::exp(-u * u) : std::exp(-u);
}

static void check_cap(std::size_t n, std::size_t max_points) {
  if (n > max_points)
    throw error("kernels: " + std::to_string(n) + " points exceed the cap of " +
                std::to_string(max_points) + " (dense n^2 storage); raise the cap to proceed");
}

PointCloud build_interval(double h, std::size_t max_points) {
  if (!(h > 0.0) || h > 0.5) throw error("kernels: interval spacing h must be in (0, 0.5]");
  const int m = static_cast<int>(std::lround(1.0 / h));
  check_cap(static_cast<std::size_t>(m), max_points);
  PointCloud cloud;
  cloud.ambient = 1;
  cloud.d = 1;
  cloud.metric = Metric::euclidean;
  cloud.domain = DomainTag::interval;
  cloud.h = 1.0 / m;
  cloud.points.reserve(m);
  for (int i = 0; i < m; ++i) cloud.points.push_back({(i + 0.5) / m, 0.0, 0.0});
  return cloud;
}

PointCloud build_square(double h, std::size_t max_points) {
  if (!(h > 0.0) || h > 0.5) throw error("kernels: square spacing h must be in (0, 0.5]");
  const int m = static_cast<int>(std::lround(1.0 / h));
  check_cap(static_cast<std::size_t>(m) * m, max_points);
  PointCloud cloud;
  cloud.ambient = 2;
  cloud.d = 2;
  cloud.metric = Metric::euclidean;
  cloud.domain = DomainTag::square;
  cloud.h = 1.0 / m;
  cloud.points.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      cloud.points.push_back({(i + 0.5) / m, (j + 0.5) / m, 0.0});
  return cloud;
}

PointCloud build_sphere(int n, std::size_t max_points) {
  if (n < 16) throw error("kernels: sphere lattice needs at least 16 points");
  check_cap(static_cast<std::size_t>(n), max_points);
  PointCloud cloud;
  cloud.ambient = 3;
  cloud.d = 2;
  cloud.metric = Metric::geodesic;
  cloud.domain = DomainTag::sphere;
  cloud.points.reserve(n);

  // Fibonacci lattice: latitudes at z = 1 - (2i+1)/n, longitudes advanced by
  // the golden angle pi*(3 - sqrt(5)).
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    cloud.points.push_back({rad * std::cos(phi), rad * std::sin(phi), z});
  }

  // h := mean nearest-neighbor geodesic spacing, brute force.
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      best = std::min(best, distance(cloud.points[i], cloud.points[j], Metric::geodesic, 3));
    }
    total += best;
  }
  cloud.h = total / n;
  return cloud;
}

PointCloud build_domain(DomainTag tag, double h_or_n, std::size_t max_points) {
  switch (tag) {
    case DomainTag::interval: return build_interval(h_or_n, max_points);
    case DomainTag::square: return build_square(h_or_n, max_points);
    case DomainTag::sphere: {
      const int n = static_cast<int>(std::lround(h_or_n));
      return build_sphere(n, max_points);
    }
  }
  throw error("kernels: bad domain tag");
}

int sphere_points_for_spacing(double h, std::size_t max_points) {
  if (!(h > 0.0)) throw error("kernels: sphere spacing must be positive");
  static const double probe_h = build_sphere(1000).h;
  const long n = std::lround(1000.0 * (probe_h / h) * (probe_h / h));
  if (n < 16) return 16;
  check_cap(static_cast<std::size_t>(n), max_points);
  return static_cast<int>(n);
}

double distance(const std::array<double, 3>& x, const std::array<double, 3>& y,
                Metric metric, int ambient) {
  if (metric == Metric::euclidean) {
    double s = 0.0;
    for (int k = 0; k < ambient; ++k) {
      const double dk = x[k] - y[k];
      s += dk * dk;
    }
    return std::sqrt(s);
  }
  // Geodesic on the unit sphere; clamping absorbs rounding at +-1.
  const double dot = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

SymMatrix assemble_covariance(const KernelSpec& kernel, const PointCloud& cloud,
                              std::size_t max_points) {
  const int n = cloud.n();
  if (n == 0) throw error("kernels: cannot assemble covariance on an empty cloud");
  check_sigma(kernel.sigma);
  check_cap(static_cast<std::size_t>(n), max_points);

  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, 1.0);
    for (int j = i + 1; j < n; ++j) {
      const double dist = distance(cloud.points[i], cloud.points[j], cloud.metric, cloud.ambient);
      m.set(i, j, kernel(dist));
    }
  }
  return m;
}

}  // namespace fieldrank::kernels
