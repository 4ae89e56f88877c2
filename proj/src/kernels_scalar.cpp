#include "ddvv/kernels.hpp"

#include <vector>

namespace ddvv::kernels {
namespace {

void gemm_scalar(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<long>(i) * n;
    for (int j = 0; j < n; ++j) ci[j] = 0.0;
    const double* ai = a + static_cast<long>(i) * k;
    for (int p = 0; p < k; ++p) {
      const double aip = ai[p];
      const double* bp = b + static_cast<long>(p) * n;
      for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

double frob_sq_scalar(const double* a, int len) {
  double s = 0.0;
  for (int i = 0; i < len; ++i) s += a[i] * a[i];
  return s;
}

constexpr int kStackDim = 32;

double commutator_frob_sq_scalar(const double* a, const double* b, int n) {
  // rows of ab and ba, one i at a time
  double buf[2 * kStackDim];
  std::vector<double> heap;
  double* row_ab = buf;
  double* row_ba = buf + n;
  if (n > kStackDim) {
    heap.assign(2 * static_cast<size_t>(n), 0.0);
    row_ab = heap.data();
    row_ba = heap.data() + n;
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      row_ab[j] = 0.0;
      row_ba[j] = 0.0;
    }
    const double* ai = a + static_cast<long>(i) * n;
    const double* bi = b + static_cast<long>(i) * n;
    for (int p = 0; p < n; ++p) {
      const double aip = ai[p];
      const double bip = bi[p];
      const double* bp = b + static_cast<long>(p) * n;
      const double* ap = a + static_cast<long>(p) * n;
      for (int j = 0; j < n; ++j) {
        row_ab[j] += aip * bp[j];
        row_ba[j] += bip * ap[j];
      }
    }
    for (int j = 0; j < n; ++j) {
      const double d = row_ab[j] - row_ba[j];
      s += d * d;
    }
  }
  return s;
}

double sym_commutator_frob_sq_scalar(const double* a, const double* b, int n) {
  double buf[kStackDim * kStackDim];
  std::vector<double> heap;
  double* p = buf;
  if (n > kStackDim) {
    heap.assign(static_cast<size_t>(n) * n, 0.0);
    p = heap.data();
  }
  gemm_scalar(a, b, p, n, n, n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = p[i * n + j] - p[j * n + i];
      s += 2.0 * d * d;
    }
  }
  return s;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend{
      "scalar",
      gemm_scalar,
      frob_sq_scalar,
      commutator_frob_sq_scalar,
      sym_commutator_frob_sq_scalar,
  };
  return backend;
}

}  // namespace ddvv::kernels
