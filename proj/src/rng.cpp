#include "ddvv/rng.hpp"

#include <cmath>
#include <numbers>

namespace ddvv {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Mat Rng::gaussian_mat(int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gaussian();
  return m;
}

SymMatrix Rng::random_symmetric(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = gaussian();
    for (int j = i + 1; j < n; ++j) {
      const double v = gaussian();
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return SymMatrix(std::move(m));
}

Mat Rng::random_antisymmetric(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = gaussian();
      m(i, j) = v;
      m(j, i) = -v;
    }
  }
  return m;
}

Mat Rng::haar_orthogonal(int n) {
  // Modified Gram-Schmidt on Gaussian columns, re-drawing a column in the
  // (measure-zero) degenerate case.
  Mat q(n, n);
  for (int col = 0; col < n; ++col) {
    for (int attempt = 0;; ++attempt) {
      for (int i = 0; i < n; ++i) q(i, col) = gaussian();
      for (int prev = 0; prev < col; ++prev) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += q(i, prev) * q(i, col);
        for (int i = 0; i < n; ++i) q(i, col) -= dot * q(i, prev);
      }
      double norm_sq = 0.0;
      for (int i = 0; i < n; ++i) norm_sq += q(i, col) * q(i, col);
      if (norm_sq > 1e-20) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (int i = 0; i < n; ++i) q(i, col) *= inv;
        break;
      }
      if (attempt > 8) throw internal_error("degenerate draws while sampling a rotation");
    }
  }
  return q;
}

Mat Rng::haar_special_orthogonal(int n) {
  Mat q = haar_orthogonal(n);
  if (det(q) < 0.0) {
    for (int i = 0; i < n; ++i) q(i, n - 1) = -q(i, n - 1);
  }
  return q;
}

std::vector<double> Rng::simplex_uniform(int n) {
  std::vector<double> x(n);
  double sum = 0.0;
  for (double& v : x) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    v = -std::log(u);
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace ddvv
