// AVX2+FMA kernel lane. Compiled with -mavx2 -mfma; only reached when the
// running CPU reports both (see dispatch in kernels.cpp).

#include "ddvv/kernels.hpp"

#include <immintrin.h>

#include <vector>

namespace ddvv::kernels {
namespace {

inline __m256i tail_mask(int rem) {
  alignas(32) static const long long kMask[8] = {-1, -1, -1, -1, 0, 0, 0, 0};
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(kMask + 4 - rem));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void gemm_avx2(const double* a, const double* b, double* c, int m, int k, int n) {
  const int n4 = n & ~3;
  const int rem = n - n4;
  const __m256i mask = tail_mask(rem);
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<long>(i) * n;
    for (int j = 0; j < n4; j += 4) _mm256_storeu_pd(ci + j, _mm256_setzero_pd());
    if (rem) _mm256_maskstore_pd(ci + n4, mask, _mm256_setzero_pd());
    const double* ai = a + static_cast<long>(i) * k;
    for (int p = 0; p < k; ++p) {
      const __m256d aip = _mm256_set1_pd(ai[p]);
      const double* bp = b + static_cast<long>(p) * n;
      for (int j = 0; j < n4; j += 4) {
        __m256d cj = _mm256_loadu_pd(ci + j);
        cj = _mm256_fmadd_pd(aip, _mm256_loadu_pd(bp + j), cj);
        _mm256_storeu_pd(ci + j, cj);
      }
      if (rem) {
        __m256d cj = _mm256_maskload_pd(ci + n4, mask);
        cj = _mm256_fmadd_pd(aip, _mm256_maskload_pd(bp + n4, mask), cj);
        _mm256_maskstore_pd(ci + n4, mask, cj);
      }
    }
  }
}

double frob_sq_avx2(const double* a, int len) {
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d v = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < len; ++i) s += a[i] * a[i];
  return s;
}

constexpr int kStackDim = 32;

double commutator_frob_sq_avx2(const double* a, const double* b, int n) {
  double buf[2 * kStackDim];
  std::vector<double> heap;
  double* row_ab = buf;
  double* row_ba = buf + n;
  if (n > kStackDim) {
    heap.assign(2 * static_cast<size_t>(n), 0.0);
    row_ab = heap.data();
    row_ba = heap.data() + n;
  }
  const int n4 = n & ~3;
  const int rem = n - n4;
  const __m256i mask = tail_mask(rem);
  __m256d acc = _mm256_setzero_pd();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      row_ab[j] = 0.0;
      row_ba[j] = 0.0;
    }
    const double* ai = a + static_cast<long>(i) * n;
    const double* bi = b + static_cast<long>(i) * n;
    for (int p = 0; p < n; ++p) {
      const __m256d aip = _mm256_set1_pd(ai[p]);
      const __m256d bip = _mm256_set1_pd(bi[p]);
      const double* bp = b + static_cast<long>(p) * n;
      const double* ap = a + static_cast<long>(p) * n;
      for (int j = 0; j < n4; j += 4) {
        _mm256_storeu_pd(row_ab + j,
                         _mm256_fmadd_pd(aip, _mm256_loadu_pd(bp + j), _mm256_loadu_pd(row_ab + j)));
        _mm256_storeu_pd(row_ba + j,
                         _mm256_fmadd_pd(bip, _mm256_loadu_pd(ap + j), _mm256_loadu_pd(row_ba + j)));
      }
      for (int j = n4; j < n; ++j) {
        row_ab[j] += ai[p] * bp[j];
        row_ba[j] += bi[p] * ap[j];
      }
    }
    for (int j = 0; j < n4; j += 4) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(row_ab + j), _mm256_loadu_pd(row_ba + j));
      acc = _mm256_fmadd_pd(d, d, acc);
    }
    for (int j = n4; j < n; ++j) {
      const double d = row_ab[j] - row_ba[j];
      s += d * d;
    }
  }
  (void)mask;
  return s + hsum(acc);
}

double sym_commutator_frob_sq_avx2(const double* a, const double* b, int n) {
  double buf[kStackDim * kStackDim];
  std::vector<double> heap;
  double* p = buf;
  if (n > kStackDim) {
    heap.assign(static_cast<size_t>(n) * n, 0.0);
    p = heap.data();
  }
  gemm_avx2(a, b, p, n, n, n);
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

const Backend& avx2_backend_impl() {
  static const Backend backend{
      "avx2",
      gemm_avx2,
      frob_sq_avx2,
      commutator_frob_sq_avx2,
      sym_commutator_frob_sq_avx2,
  };
  return backend;
}

}  // namespace ddvv::kernels
