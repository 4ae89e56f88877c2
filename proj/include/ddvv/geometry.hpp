#pragma once

#include <optional>
#include <vector>

#include "ddvv/ddvv.hpp"
#include "ddvv/matrix.hpp"

namespace ddvv::geom {

/// Pointwise data of an immersed submanifold: shape operators in an
/// orthonormal normal frame plus the ambient curvature constant.
struct CurvaturePoint {
  CurvaturePoint(double c, std::vector<SymMatrix> shape_ops);

  int n = 0;  // tangent dimension
  int m = 0;  // codimension
  double c = 0.0;
  std::vector<SymMatrix> shape_ops;
};

struct CurvatureReport {
  double rho = 0.0;       // normalized scalar curvature
  double rho_perp = 0.0;  // normal scalar curvature, always >= 0
  double h_sq = 0.0;      // squared mean curvature norm
  double gap = 0.0;       // h_sq + c - rho - rho_perp
  bool wintgen = false;   // gap within tolerance of zero
};

/// Componentwise evaluation through the curvature tensors: sectional terms
/// c + sum_r (A_ii A_jj - A_ij^2) and normal-bundle terms ([A_r, A_s])_ij.
CurvatureReport curvature_report(const CurvaturePoint& point, double tol = kEqTol);

/// The point's algebraic side: rotate the normal frame so the first direction
/// is the mean curvature direction (identity frame when H = 0), then subtract
/// |H| I from the first shape operator.
struct ShiftedFamily {
  SymFamily family;
  Mat frame;      // m x m rotation applied to the normal frame
  double h_norm;  // |H|
};

ShiftedFamily shift_family(const CurvaturePoint& point);

/// Tangent basis, normal frame and the (lambda, mu) parameters in which the
/// shape operators take the equality normal form
///   A_1 = lambda_1 I + mu (E_01 + E_10),
///   A_2 = lambda_2 I + mu (E_00 - E_11),
///   A_r = lambda_r I for r > 2.
struct WintgenFrame {
  Mat tangent_basis;  // n x n orthogonal, columns e_i
  Mat normal_frame;   // m x m rotation, columns express the new frame
  std::vector<double> lambda;
  double mu = 0.0;
  double residual = 0.0;
};

std::optional<WintgenFrame> wintgen_detect(const CurvaturePoint& point, double tol = kEqTol);

}  // namespace ddvv::geom
