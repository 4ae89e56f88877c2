#pragma once

#include <span>
#include <vector>

#include "ddvv/common.hpp"

namespace ddvv {

/// Dense row-major real matrix, sized for desk-scale problems (n <= 8 basis
/// dimension, compound sizes up to a few hundred).
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols);
  Mat(int rows, int cols, std::vector<double> entries);

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> entries() const { return data_; }

  Mat transposed() const;
  double trace() const;
  double frob_sq() const;
  double max_abs() const;

  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);
  Mat& operator*=(double s);

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(double s, Mat a) { return a *= s; }
  friend Mat operator*(const Mat& a, const Mat& b);

  friend bool operator==(const Mat& a, const Mat& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// [a, b] = ab - ba; antisymmetric whenever a, b are both symmetric.
Mat commutator(const Mat& a, const Mat& b);

/// ||ab - ba||^2 without materializing the commutator.
double commutator_frob_sq(const Mat& a, const Mat& b);

double frob_sq(const Mat& a);

/// max |a_ij - a_ji|
double asymmetry_defect(const Mat& a);

/// Determinant by partial-pivot elimination; used only for orientation fixes.
double det(const Mat& a);

bool is_orthogonal(const Mat& q, double tol = kOrthoTol);

/// Fill columns [have, n) so the square matrix becomes orthogonal, by
/// Gram-Schmidt over the standard basis; deterministic.
void complete_orthonormal_columns(Mat& q, int have);

/// Symmetric matrix: construction symmetrizes via (a + a^t)/2 and records the
/// asymmetry defect; a defect above kMaxAsymmetryDefect is an input error, not
/// a silent repair.
class SymMatrix {
 public:
  explicit SymMatrix(Mat m);

  int dim() const { return mat_.rows(); }
  const Mat& mat() const { return mat_; }
  double defect() const { return defect_; }

  double operator()(int i, int j) const { return mat_(i, j); }

 private:
  Mat mat_;
  double defect_ = 0.0;
};

/// Ordered family (B_1, ..., B_m) of symmetric n x n matrices.
struct SymFamily {
  explicit SymFamily(std::vector<SymMatrix> members);

  int n = 0;
  int m = 0;
  std::vector<SymMatrix> members;
};

SymFamily make_family(const std::vector<Mat>& mats);

}  // namespace ddvv
