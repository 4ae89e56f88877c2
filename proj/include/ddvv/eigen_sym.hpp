#pragma once

#include <vector>

#include "ddvv/matrix.hpp"

namespace ddvv {

/// Eigendecomposition a = vectors * diag(values) * vectors^t with orthonormal
/// columns; values sorted descending, ties keep the sweep output order.
struct EigenSym {
  std::vector<double> values;
  Mat vectors;
};

/// Cyclic Jacobi for small dense symmetric matrices (the scales here stay at
/// or below 36 x 36). Deterministic: fixed sweep order, no pivot search.
EigenSym eigen_sym(const Mat& a);

}  // namespace ddvv
