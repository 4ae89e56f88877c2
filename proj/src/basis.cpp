#include "ddvv/basis.hpp"

#include <cmath>
#include <numbers>

#include "ddvv/kernels.hpp"

namespace ddvv {

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

std::vector<SymMatrix> build_basis(const IndexScheme& scheme) {
  std::vector<SymMatrix> basis;
  basis.reserve(scheme.size());
  const int n = scheme.n();
  for (int alpha = 0; alpha < scheme.size(); ++alpha) {
    const IndexPair p = scheme.pair(alpha);
    Mat e(n, n);
    if (p.i == p.j) {
      e(p.i, p.i) = 1.0;
    } else {
      e(p.i, p.j) = kInvSqrt2;
      e(p.j, p.i) = kInvSqrt2;
    }
    basis.emplace_back(std::move(e));
  }
  return basis;
}

double basis_commutator_norm_sq(const IndexScheme& scheme, int alpha, int beta) {
  if (alpha == beta) return 0.0;
  if (alpha > beta) std::swap(alpha, beta);
  const auto [i, j] = scheme.pair(alpha);
  const auto [k, l] = scheme.pair(beta);
  if ((i == j && j == k && k < l) || (i < j && j == k && k == l)) return 1.0;
  if ((i < j && j == k && k < l) || (i == k && k < j && j < l) || (i < k && k < j && j == l)) {
    return 0.5;
  }
  return 0.0;
}

double basis_gram_row_sum(const IndexScheme& scheme, int alpha, int beta) {
  const std::vector<SymMatrix> basis = build_basis(scheme);
  if (alpha < 0 || alpha >= scheme.size() || beta < 0 || beta >= scheme.size()) {
    throw input_error("basis index out of range");
  }
  double sum = 0.0;
  for (int gamma = 0; gamma < scheme.size(); ++gamma) {
    const Mat ka = commutator(basis[alpha].mat(), basis[gamma].mat());
    const Mat kb = commutator(basis[beta].mat(), basis[gamma].mat());
    double inner = 0.0;
    for (size_t t = 0; t < ka.entries().size(); ++t) inner += ka.data()[t] * kb.data()[t];
    sum += inner;
  }
  const double expected = scheme.n() * (alpha == beta ? 1.0 : 0.0) -
                          (scheme.diagonal(alpha) ? 1.0 : 0.0) * (scheme.diagonal(beta) ? 1.0 : 0.0);
  if (std::abs(sum - expected) > 1e-12) {
    throw internal_error("basis commutator row sum disagrees with its closed form");
  }
  return sum;
}

std::vector<double> sym_coefficients(const IndexScheme& scheme, const SymMatrix& a) {
  if (a.dim() != scheme.n()) throw input_error("matrix dimension does not match scheme");
  std::vector<double> coeffs(scheme.size());
  for (int alpha = 0; alpha < scheme.size(); ++alpha) {
    const IndexPair p = scheme.pair(alpha);
    coeffs[alpha] = (p.i == p.j) ? a(p.i, p.i) : a(p.i, p.j) * std::numbers::sqrt2;
  }
  return coeffs;
}

SymMatrix sym_from_coefficients(const IndexScheme& scheme, std::span<const double> coeffs) {
  if (static_cast<int>(coeffs.size()) != scheme.size()) {
    throw input_error("coefficient count does not match scheme");
  }
  Mat a(scheme.n(), scheme.n());
  for (int alpha = 0; alpha < scheme.size(); ++alpha) {
    const IndexPair p = scheme.pair(alpha);
    if (p.i == p.j) {
      a(p.i, p.i) = coeffs[alpha];
    } else {
      a(p.i, p.j) = coeffs[alpha] * kInvSqrt2;
      a(p.j, p.i) = a(p.i, p.j);
    }
  }
  return SymMatrix(std::move(a));
}

Mat family_coefficients(const SymFamily& family) {
  const IndexScheme scheme(family.n);
  Mat b(scheme.size(), family.m);
  for (int r = 0; r < family.m; ++r) {
    const std::vector<double> col = sym_coefficients(scheme, family.members[r]);
    for (int alpha = 0; alpha < scheme.size(); ++alpha) b(alpha, r) = col[alpha];
  }
  return b;
}

BasisExpansion::BasisExpansion(IndexScheme scheme, Mat q)
    : scheme_(std::move(scheme)), q_(std::move(q)) {
  if (q_.rows() != scheme_.size() || q_.cols() != scheme_.size()) {
    throw input_error("basis expansion matrix must be N x N");
  }
  if (!is_orthogonal(q_)) throw input_error("basis expansion matrix must be orthogonal");
}

BasisExpansion BasisExpansion::identity(const IndexScheme& scheme) {
  return BasisExpansion(scheme, Mat::identity(scheme.size()));
}

void qhat_from_column(const IndexScheme& scheme, const Mat& q, int alpha, Mat& out) {
  const int n = scheme.n();
  if (out.rows() != n || out.cols() != n) out = Mat(n, n);
  for (int beta = 0; beta < scheme.size(); ++beta) {
    const IndexPair p = scheme.pair(beta);
    const double v = q(beta, alpha);
    if (p.i == p.j) {
      out(p.i, p.i) = v;
    } else {
      out(p.i, p.j) = v * kInvSqrt2;
      out(p.j, p.i) = out(p.i, p.j);
    }
  }
}

void BasisExpansion::qhat_fill(int alpha, Mat& out) const {
  qhat_from_column(scheme_, q_, alpha, out);
}

SymMatrix BasisExpansion::qhat(int alpha) const {
  Mat out(scheme_.n(), scheme_.n());
  qhat_fill(alpha, out);
  return SymMatrix(std::move(out));
}

std::vector<SymMatrix> BasisExpansion::qhat_all() const {
  std::vector<SymMatrix> out;
  out.reserve(scheme_.size());
  for (int alpha = 0; alpha < scheme_.size(); ++alpha) out.push_back(qhat(alpha));
  return out;
}

Mat pair_commutator_gram(const std::vector<SymMatrix>& mats) {
  const int count = static_cast<int>(mats.size());
  Mat g(count, count);
  const auto& kernel = kernels::active();
  for (int a = 0; a < count; ++a) {
    const int n = mats[a].dim();
    for (int b = a + 1; b < count; ++b) {
      const double v = kernel.sym_commutator_frob_sq(mats[a].mat().data(), mats[b].mat().data(), n);
      g(a, b) = v;
      g(b, a) = v;
    }
  }
  return g;
}

Mat pair_commutator_gram(const BasisExpansion& q) { return pair_commutator_gram(q.qhat_all()); }

}  // namespace ddvv
