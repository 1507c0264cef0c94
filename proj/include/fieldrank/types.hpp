#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fieldrank {

inline constexpr const char* kVersion = "0.1.0";

/// Thrown for contract violations and runtime failures. Messages carry the
/// originating module as a "module: ..." prefix.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Dense symmetric n-by-n matrix, full row-major storage.
/// Symmetry is maintained by construction (set() writes both triangles).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 1) throw error("types: SymMatrix size must be >= 1");
  }

  int n() const { return n_; }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
  }

  const double* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * n_; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& mutable_data() { return a_; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Sum of squared entries.
  double frobenius_sq() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return s;
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Dense rows-by-cols matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {
    if (rows < 1 || cols < 1) throw error("types: Matrix dimensions must be >= 1");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const double* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * cols_; }
  double* row(int i) { return a_.data() + static_cast<std::size_t>(i) * cols_; }
  const std::vector<double>& data() const { return a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

}  // namespace fieldrank
