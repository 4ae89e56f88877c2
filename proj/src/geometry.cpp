#include "ddvv/geometry.hpp"

#include <cmath>

namespace ddvv::geom {

CurvaturePoint::CurvaturePoint(double c_in, std::vector<SymMatrix> ops)
    : c(c_in), shape_ops(std::move(ops)) {
  if (shape_ops.empty()) throw input_error("a curvature point needs at least one shape operator");
  n = shape_ops.front().dim();
  m = static_cast<int>(shape_ops.size());
  if (n < 2) throw input_error("tangent dimension must be at least 2");
  for (const SymMatrix& a : shape_ops) {
    if (a.dim() != n) throw input_error("shape operators must share one dimension");
  }
}

CurvatureReport curvature_report(const CurvaturePoint& point, double tol) {
  const int n = point.n;
  const int m = point.m;
  const double pair_norm = 2.0 / (static_cast<double>(n) * (n - 1));

  CurvatureReport rep;
  for (int r = 0; r < m; ++r) {
    const double h_r = point.shape_ops[r].mat().trace() / n;
    rep.h_sq += h_r * h_r;
  }

  // tangent curvature: sectional terms of the Gauss equation, pair by pair
  double sectional_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double term = point.c;
      for (int r = 0; r < m; ++r) {
        const SymMatrix& a = point.shape_ops[r];
        term += a(i, i) * a(j, j) - a(i, j) * a(i, j);
      }
      sectional_sum += term;
    }
  }
  rep.rho = pair_norm * sectional_sum;

  // normal curvature: Ricci-equation components ([A_r, A_s])_ij
  double normal_sum = 0.0;
  for (int r = 0; r < m; ++r) {
    for (int s = r + 1; s < m; ++s) {
      const Mat k = commutator(point.shape_ops[r].mat(), point.shape_ops[s].mat());
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) normal_sum += k(i, j) * k(i, j);
      }
    }
  }
  rep.rho_perp = pair_norm * std::sqrt(normal_sum);

  rep.gap = rep.h_sq + point.c - rep.rho - rep.rho_perp;
  const double scale =
      std::max(1.0, rep.h_sq + std::abs(point.c) + std::abs(rep.rho) + rep.rho_perp);
  rep.wintgen = rep.gap <= tol * scale;
  if (rep.gap < -tol * scale) {
    throw internal_error("negative geometric gap: curvature arithmetic is broken");
  }
  return rep;
}

ShiftedFamily shift_family(const CurvaturePoint& point) {
  const int n = point.n;
  const int m = point.m;
  std::vector<double> h(m);
  double h_norm_sq = 0.0;
  for (int r = 0; r < m; ++r) {
    h[r] = point.shape_ops[r].mat().trace() / n;
    h_norm_sq += h[r] * h[r];
  }
  const double h_norm = std::sqrt(h_norm_sq);

  Mat frame = Mat::identity(m);
  if (h_norm > 0.0) {
    frame = Mat(m, m);
    for (int r = 0; r < m; ++r) frame(r, 0) = h[r] / h_norm;
    complete_orthonormal_columns(frame, 1);
  }

  std::vector<SymMatrix> members;
  members.reserve(m);
  for (int r = 0; r < m; ++r) {
    Mat acc(n, n);
    for (int s = 0; s < m; ++s) {
      const double w = frame(s, r);
      if (w == 0.0) continue;
      const Mat& as = point.shape_ops[s].mat();
      for (int t = 0; t < n * n; ++t) acc.data()[t] += w * as.data()[t];
    }
    if (r == 0) {
      for (int i = 0; i < n; ++i) acc(i, i) -= h_norm;
    }
    members.emplace_back(std::move(acc));
  }
  return ShiftedFamily{SymFamily(std::move(members)), std::move(frame), h_norm};
}

std::optional<WintgenFrame> wintgen_detect(const CurvaturePoint& point, double tol) {
  const CurvatureReport rep = curvature_report(point, tol);
  if (!rep.wintgen) return std::nullopt;

  const int n = point.n;
  const int m = point.m;
  double ops_norm_sq = 0.0;
  for (const SymMatrix& a : point.shape_ops) ops_norm_sq += a.mat().frob_sq();
  const double scale = std::max(1.0, std::sqrt(ops_norm_sq));
  const double residual_bound = 10.0 * std::max(tol, kEqTol);

  const ShiftedFamily shifted = shift_family(point);
  double traceless_sq = 0.0;
  for (const SymMatrix& b : shifted.family.members) traceless_sq += b.mat().frob_sq();

  WintgenFrame out;
  if (std::sqrt(traceless_sq) <= residual_bound * scale) {
    // umbilic: every operator is within tolerance of a multiple of I
    out.tangent_basis = Mat::identity(n);
    out.normal_frame = Mat::identity(m);
    out.mu = 0.0;
    out.lambda.resize(m);
    for (int r = 0; r < m; ++r) {
      out.lambda[r] = point.shape_ops[r].mat().trace() / n;
      Mat diff = point.shape_ops[r].mat();
      for (int i = 0; i < n; ++i) diff(i, i) -= out.lambda[r];
      out.residual = std::max(out.residual, std::sqrt(diff.frob_sq()) / scale);
    }
    if (out.residual > residual_bound) {
      throw internal_error("umbilic reconstruction exceeded its residual bound");
    }
    return out;
  }

  // force a certificate attempt at whatever relative gap the shift produced;
  // the structural checks inside detect_equality stay authoritative
  const GapReport alg = ddvv_gap(shifted.family);
  double tol_alg = std::max(tol, kEqTol);
  if (alg.rhs > 0.0) tol_alg = std::max(tol_alg, 2.0 * std::max(alg.gap, 0.0) / alg.rhs);
  const std::optional<EqualityCertificate> cert = detect_equality(shifted.family, tol_alg);
  if (!cert) {
    throw internal_error("geometric equality within tolerance but no algebraic certificate");
  }

  out.tangent_basis = cert->conjugation;
  out.normal_frame = shifted.frame * cert->rotation;
  out.mu = cert->mu;
  out.lambda.resize(m);
  for (int r = 0; r < m; ++r) out.lambda[r] = shifted.h_norm * cert->rotation(0, r);

  // rebuild the shape operators the frame claims and measure the mismatch
  const Mat pt = out.tangent_basis.transposed();
  for (int r = 0; r < m; ++r) {
    Mat rotated(n, n);
    for (int s = 0; s < m; ++s) {
      const double w = out.normal_frame(s, r);
      if (w == 0.0) continue;
      const Mat& as = point.shape_ops[s].mat();
      for (int t = 0; t < n * n; ++t) rotated.data()[t] += w * as.data()[t];
    }
    Mat in_frame = pt * rotated * out.tangent_basis;
    for (int i = 0; i < n; ++i) in_frame(i, i) -= out.lambda[r];
    if (r == cert->pair_indices[0]) {
      in_frame(0, 1) -= out.mu;
      in_frame(1, 0) -= out.mu;
    } else if (r == cert->pair_indices[1]) {
      in_frame(0, 0) -= out.mu;
      in_frame(1, 1) += out.mu;
    }
    out.residual = std::max(out.residual, std::sqrt(in_frame.frob_sq()) / scale);
  }
  if (out.residual > residual_bound) {
    throw internal_error("equality frame failed to reconstruct the shape operators");
  }
  return out;
}

}  // namespace ddvv::geom
