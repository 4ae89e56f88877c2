#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ddvv/matrix.hpp"

namespace ddvv {

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic random source. Gaussians come from an explicit Box-Muller so
/// streams do not depend on the standard library's normal_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Independent stream for a worker index; stable across thread schedules.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
  }

  double uniform();   // [0, 1)
  double gaussian();  // standard normal

  Mat gaussian_mat(int rows, int cols);
  SymMatrix random_symmetric(int n);
  Mat random_antisymmetric(int n);

  /// Haar-distributed via Gram-Schmidt of a Gaussian matrix.
  Mat haar_orthogonal(int n);
  Mat haar_special_orthogonal(int n);

  /// Uniform point of the standard simplex (Dirichlet(1,...,1)).
  std::vector<double> simplex_uniform(int n);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ddvv
