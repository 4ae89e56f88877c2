#pragma once

#include <span>
#include <vector>

#include "ddvv/index_scheme.hpp"
#include "ddvv/matrix.hpp"

namespace ddvv {

/// Orthonormal basis of the symmetric matrices: E_ii on the diagonal slots,
/// (E_ij + E_ji)/sqrt(2) off the diagonal, ordered by the scheme.
std::vector<SymMatrix> build_basis(const IndexScheme& scheme);

/// ||[E^_alpha, E^_beta]||^2 in closed form; the value is always 0, 1/2 or 1.
double basis_commutator_norm_sq(const IndexScheme& scheme, int alpha, int beta);

/// sum_gamma <[E^_alpha, E^_gamma], [E^_beta, E^_gamma]>, computed numerically
/// and cross-checked against n*delta_ab - delta_a*delta_b before returning.
double basis_gram_row_sum(const IndexScheme& scheme, int alpha, int beta);

/// Coordinates of a symmetric matrix in the ordered basis.
std::vector<double> sym_coefficients(const IndexScheme& scheme, const SymMatrix& a);

SymMatrix sym_from_coefficients(const IndexScheme& scheme, std::span<const double> coeffs);

/// N x m coefficient matrix: column r holds the coordinates of B_r.
Mat family_coefficients(const SymFamily& family);

/// Entry map from a coefficient column to its symmetric matrix:
/// out_ij = q_{beta,alpha} on diagonal beta = (i,i), q_{beta,alpha}/sqrt(2)
/// on off-diagonal beta = (i,j). Defined for any coefficient matrix.
void qhat_from_column(const IndexScheme& scheme, const Mat& q, int alpha, Mat& out);

/// An orthonormal basis {Q^_alpha} of the symmetric matrices, encoded by the
/// orthogonal coefficient matrix q against the standard basis.
class BasisExpansion {
 public:
  BasisExpansion(IndexScheme scheme, Mat q);

  static BasisExpansion identity(const IndexScheme& scheme);

  const IndexScheme& scheme() const { return scheme_; }
  const Mat& q() const { return q_; }

  /// Entry map: qhat^alpha_ij = q_{beta,alpha} on diagonal beta = (i,i),
  /// q_{beta,alpha}/sqrt(2) on off-diagonal beta = (i,j).
  void qhat_fill(int alpha, Mat& out) const;
  SymMatrix qhat(int alpha) const;
  std::vector<SymMatrix> qhat_all() const;

 private:
  IndexScheme scheme_;
  Mat q_;
};

/// G_ab = ||[M_a, M_b]||^2 for a list of symmetric matrices; symmetric with
/// zero diagonal.
Mat pair_commutator_gram(const std::vector<SymMatrix>& mats);
Mat pair_commutator_gram(const BasisExpansion& q);

}  // namespace ddvv
