#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "ddvv/basis.hpp"
#include "ddvv/matrix.hpp"

namespace ddvv {

/// lhs = sum over ordered pairs (r, s) of ||[B_r, B_s]||^2 (each unordered
/// commutator counted twice), rhs = (sum_r ||B_r||^2)^2.
struct GapReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool equality = false;  // gap <= tol * max(1, rhs)
};

/// Gap of a symmetric family. Throws internal_error if gap < -tol*max(1,rhs),
/// which valid symmetric input cannot produce.
GapReport ddvv_gap(const SymFamily& family, double tol = kEqTol);

/// Same arithmetic with no symmetry requirement; the gap may legitimately be
/// negative for families mixing symmetric and antisymmetric members.
GapReport mixed_gap(const std::vector<Mat>& family, double tol = kEqTol);

/// Spectral reduction: BB^t = q diag(x) q^t with x sorted descending,
/// x_alpha >= 0, det(q) = +1.
struct ReducedForm {
  std::vector<double> x;
  BasisExpansion q;
};

ReducedForm reduce(const SymFamily& family);

/// The commutator square-sum computed through three algebraically equal
/// routes; they must agree to 1e-9 relative or the library is wrong.
struct CommutatorSumRoutes {
  double direct = 0.0;         // pairwise commutators of the members
  double via_compound = 0.0;   // 2 tr( compound(B^t) C(E) compound(B) )
  double via_reduction = 0.0;  // sum_ab x_a x_b ||[Q^_a, Q^_b]||^2
};

CommutatorSumRoutes commutator_sum_routes(const SymFamily& family);

/// f_Q(x) = sum_ab x_a x_b ||[Q^_a, Q^_b]||^2 - (sum_a x_a)^2. Nonpositive on
/// the nonnegative cone; zero exactly at the equality configurations.
double objective(const BasisExpansion& q, std::span<const double> x);
double objective_from_gram(const Mat& gram, std::span<const double> x);

/// Same formula on a raw coefficient matrix, no orthogonality requirement;
/// exists so derivative checks can probe arbitrary directions.
double objective_coefficients(const IndexScheme& scheme, const Mat& q, std::span<const double> x);

enum class CertificateKind { kZeroFamily, kWintgenPair };

/// Witness of the equality normal form: rotating the family by `rotation` and
/// conjugating every member by `conjugation^t` yields
/// (mu(E_01 + E_10), mu(E_00 - E_11), 0, ..., 0).
struct EqualityCertificate {
  CertificateKind kind = CertificateKind::kZeroFamily;
  Mat rotation;     // m x m orthogonal
  Mat conjugation;  // n x n orthogonal
  double mu = 0.0;
  std::array<int, 2> pair_indices{0, 1};  // surviving slots after rotation
  double residual = 0.0;                  // relative reconstruction error
};

/// Certificate when gap <= tol * rhs (zero families included), absent
/// otherwise. A family inside the threshold that fails to reconstruct to
/// residual <= 10*tol is an internal error.
std::optional<EqualityCertificate> detect_equality(const SymFamily& family, double tol = kEqTol);

/// Rebuild the family a certificate describes; inverse of the detection map.
SymFamily family_from_certificate(const EqualityCertificate& cert, int n, int m);

/// Rotation action: member r of the result is sum_s R_{sr} B_s.
SymFamily rotate_family(const SymFamily& family, const Mat& rotation);

/// Simultaneous conjugation B_r -> P B_r P^t.
SymFamily conjugate_family(const SymFamily& family, const Mat& p);

}  // namespace ddvv
