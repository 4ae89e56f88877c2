#include "ddvv/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "ddvv/kernels.hpp"

namespace ddvv {

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw input_error("matrix dimensions must be nonnegative");
  data_.assign(static_cast<size_t>(rows) * cols, 0.0);
}

Mat::Mat(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != static_cast<size_t>(rows) * cols) {
    throw input_error("matrix entry count does not match dimensions");
  }
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Mat::trace() const {
  double s = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Mat::frob_sq() const {
  return kernels::active().frob_sq(data_.data(), static_cast<int>(data_.size()));
}

double Mat::max_abs() const {
  double s = 0.0;
  for (double v : data_) s = std::max(s, std::abs(v));
  return s;
}

Mat& Mat::operator+=(const Mat& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw input_error("matrix shape mismatch in +");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw input_error("matrix shape mismatch in -");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw input_error("matrix shape mismatch in *");
  Mat c(a.rows(), b.cols());
  kernels::active().gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Mat commutator(const Mat& a, const Mat& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) {
    throw input_error("commutator requires square matrices of equal dimension");
  }
  Mat ab = a * b;
  ab -= b * a;
  return ab;
}

double commutator_frob_sq(const Mat& a, const Mat& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) {
    throw input_error("commutator requires square matrices of equal dimension");
  }
  return kernels::active().commutator_frob_sq(a.data(), b.data(), a.rows());
}

double frob_sq(const Mat& a) { return a.frob_sq(); }

double asymmetry_defect(const Mat& a) {
  double d = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - a(j, i)));
  return d;
}

double det(const Mat& a) {
  if (!a.square()) throw input_error("determinant requires a square matrix");
  const int n = a.rows();
  Mat lu = a;
  double d = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      d = -d;
    }
    d *= lu(k, k);
    if (lu(k, k) == 0.0) return 0.0;
    for (int i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      for (int j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return d;
}

bool is_orthogonal(const Mat& q, double tol) {
  if (!q.square()) return false;
  Mat g = q.transposed() * q;
  for (int i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return g.max_abs() <= tol;
}

void complete_orthonormal_columns(Mat& q, int have) {
  if (!q.square()) throw input_error("orthonormal completion needs a square matrix");
  const int n = q.rows();
  std::vector<double> v(n);
  std::vector<double> best(n);
  for (int col = have; col < n; ++col) {
    // take the standard basis vector with the largest residual; its square
    // sum over candidates is n - col, so the best is bounded away from zero
    double best_norm_sq = -1.0;
    for (int cand = 0; cand < n; ++cand) {
      std::fill(v.begin(), v.end(), 0.0);
      v[cand] = 1.0;
      for (int prev = 0; prev < col; ++prev) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += q(i, prev) * v[i];
        for (int i = 0; i < n; ++i) v[i] -= dot * q(i, prev);
      }
      double norm_sq = 0.0;
      for (double t : v) norm_sq += t * t;
      if (norm_sq > best_norm_sq) {
        best_norm_sq = norm_sq;
        best = v;
      }
    }
    if (best_norm_sq <= 0.0) throw internal_error("orthonormal completion degenerated");
    const double inv = 1.0 / std::sqrt(best_norm_sq);
    for (int i = 0; i < n; ++i) q(i, col) = best[i] * inv;
  }
}

SymMatrix::SymMatrix(Mat m) {
  if (!m.square()) throw input_error("symmetric matrix must be square");
  defect_ = asymmetry_defect(m);
  if (defect_ > kMaxAsymmetryDefect) {
    throw input_error("matrix declared symmetric has asymmetry defect " + std::to_string(defect_));
  }
  const int n = m.rows();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  mat_ = std::move(m);
}

SymFamily::SymFamily(std::vector<SymMatrix> mems) : members(std::move(mems)) {
  if (members.empty()) throw input_error("family must contain at least one matrix");
  n = members.front().dim();
  m = static_cast<int>(members.size());
  for (const SymMatrix& b : members) {
    if (b.dim() != n) throw input_error("family members must share one dimension");
  }
}

SymFamily make_family(const std::vector<Mat>& mats) {
  std::vector<SymMatrix> members;
  members.reserve(mats.size());
  for (const Mat& m : mats) members.emplace_back(m);
  return SymFamily(std::move(members));
}

}  // namespace ddvv
