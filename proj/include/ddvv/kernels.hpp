#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ddvv::kernels {

// Dense row-major double kernels. Every entry point has a scalar reference
// implementation; an AVX2+FMA variant is selected at startup when the build
// and the CPU support it. Set DDVV_KERNELS=scalar (or =avx2) to override.
struct Backend {
  const char* name;

  // c = a * b, a is m x k, b is k x n, c is m x n (overwritten).
  void (*gemm)(const double* a, const double* b, double* c, int m, int k, int n);

  // sum of squares of len doubles
  double (*frob_sq)(const double* a, int len);

  // ||ab - ba||^2 for general square a, b of dim n
  double (*commutator_frob_sq)(const double* a, const double* b, int n);

  // ||ab - (ab)^t||^2; equals ||[a,b]||^2 when a, b are both symmetric or
  // both antisymmetric (then ba = (ab)^t). One product instead of two.
  double (*sym_commutator_frob_sq)(const double* a, const double* b, int n);
};

const Backend& scalar_backend();

/// Currently selected backend (initialized on first use).
const Backend& active();

/// Force a backend by name; returns false if it is not available here.
bool set_active(std::string_view name);

std::vector<std::string> available();

}  // namespace ddvv::kernels
