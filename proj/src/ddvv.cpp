#include "ddvv/ddvv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ddvv/compound.hpp"
#include "ddvv/eigen_sym.hpp"
#include "ddvv/kernels.hpp"

namespace ddvv {

namespace {

GapReport gap_from_pairs(double pair_sum, double norm_sum, double tol) {
  GapReport rep;
  rep.lhs = 2.0 * pair_sum;
  rep.rhs = norm_sum * norm_sum;
  rep.gap = rep.rhs - rep.lhs;
  rep.equality = rep.gap <= tol * std::max(1.0, rep.rhs);
  return rep;
}

}  // namespace

GapReport ddvv_gap(const SymFamily& family, double tol) {
  const auto& kernel = kernels::active();
  double pair_sum = 0.0;
  double norm_sum = 0.0;
  for (int r = 0; r < family.m; ++r) {
    const Mat& br = family.members[r].mat();
    norm_sum += br.frob_sq();
    for (int s = r + 1; s < family.m; ++s) {
      pair_sum += kernel.sym_commutator_frob_sq(br.data(), family.members[s].mat().data(), family.n);
    }
  }
  const GapReport rep = gap_from_pairs(pair_sum, norm_sum, tol);
  if (rep.gap < -tol * std::max(1.0, rep.rhs)) {
    throw internal_error("negative gap for a symmetric family: commutator arithmetic is broken");
  }
  return rep;
}

GapReport mixed_gap(const std::vector<Mat>& family, double tol) {
  if (family.empty()) throw input_error("family must contain at least one matrix");
  const int n = family.front().rows();
  for (const Mat& b : family) {
    if (!b.square() || b.rows() != n) throw input_error("family members must be square, one dimension");
  }
  const auto& kernel = kernels::active();
  double pair_sum = 0.0;
  double norm_sum = 0.0;
  for (size_t r = 0; r < family.size(); ++r) {
    norm_sum += family[r].frob_sq();
    for (size_t s = r + 1; s < family.size(); ++s) {
      pair_sum += kernel.commutator_frob_sq(family[r].data(), family[s].data(), n);
    }
  }
  return gap_from_pairs(pair_sum, norm_sum, tol);
}

ReducedForm reduce(const SymFamily& family) {
  const IndexScheme scheme(family.n);
  const Mat b = family_coefficients(family);
  const Mat bt = b.transposed();
  Mat bbt(scheme.size(), scheme.size());
  kernels::active().gemm(b.data(), bt.data(), bbt.data(), scheme.size(), family.m, scheme.size());

  EigenSym es = eigen_sym(bbt);
  const double top = std::max(1.0, es.values.empty() ? 0.0 : es.values.front());
  for (double& v : es.values) {
    if (v < -1e-9 * top) throw internal_error("BB^t produced a negative eigenvalue");
    v = std::max(v, 0.0);
  }
  if (det(es.vectors) < 0.0) {
    const int last = es.vectors.cols() - 1;
    for (int i = 0; i < es.vectors.rows(); ++i) es.vectors(i, last) = -es.vectors(i, last);
  }
  return ReducedForm{std::move(es.values), BasisExpansion(scheme, std::move(es.vectors))};
}

CommutatorSumRoutes commutator_sum_routes(const SymFamily& family) {
  CommutatorSumRoutes routes;
  routes.direct = ddvv_gap(family).lhs;

  const IndexScheme scheme(family.n);
  if (family.m >= 2 && scheme.size() >= 2) {
    const Mat b = family_coefficients(family);
    const Mat ce = commutator_gram_basis(scheme);
    const Mat phi_b = compound(b);
    const Mat phi_bt = compound(b.transposed());
    routes.via_compound = 2.0 * (phi_bt * ce * phi_b).trace();
  } else {
    routes.via_compound = 0.0;  // no strict pairs on either side
  }

  const ReducedForm red = reduce(family);
  const Mat gram = pair_commutator_gram(red.q);
  double quad = 0.0;
  for (int a = 0; a < gram.rows(); ++a) {
    double row = 0.0;
    for (int c = 0; c < gram.cols(); ++c) row += gram(a, c) * red.x[c];
    quad += red.x[a] * row;
  }
  routes.via_reduction = quad;

  const double scale = std::max({1.0, std::abs(routes.direct), std::abs(routes.via_compound),
                                 std::abs(routes.via_reduction)});
  const double spread = std::max({std::abs(routes.direct - routes.via_compound),
                                  std::abs(routes.direct - routes.via_reduction),
                                  std::abs(routes.via_compound - routes.via_reduction)});
  if (spread > 1e-9 * scale) {
    throw internal_error("commutator square-sum routes disagree beyond tolerance");
  }
  return routes;
}

double objective_from_gram(const Mat& gram, std::span<const double> x) {
  const int count = gram.rows();
  if (static_cast<int>(x.size()) != count) throw input_error("weight count does not match gram size");
  double quad = 0.0;
  double total = 0.0;
  for (int a = 0; a < count; ++a) {
    total += x[a];
    double row = 0.0;
    for (int b = 0; b < count; ++b) row += gram(a, b) * x[b];
    quad += x[a] * row;
  }
  return quad - total * total;
}

double objective(const BasisExpansion& q, std::span<const double> x) {
  for (double v : x) {
    if (v < 0.0) throw input_error("objective weights must be nonnegative");
  }
  return objective_from_gram(pair_commutator_gram(q), x);
}

double objective_coefficients(const IndexScheme& scheme, const Mat& q, std::span<const double> x) {
  if (q.rows() != scheme.size() || q.cols() != scheme.size()) {
    throw input_error("coefficient matrix must be N x N");
  }
  std::vector<Mat> qhats(scheme.size(), Mat(scheme.n(), scheme.n()));
  for (int alpha = 0; alpha < scheme.size(); ++alpha) {
    qhat_from_column(scheme, q, alpha, qhats[alpha]);
  }
  const auto& kernel = kernels::active();
  Mat gram(scheme.size(), scheme.size());
  for (int a = 0; a < scheme.size(); ++a) {
    for (int b = a + 1; b < scheme.size(); ++b) {
      const double v = kernel.sym_commutator_frob_sq(qhats[a].data(), qhats[b].data(), scheme.n());
      gram(a, b) = v;
      gram(b, a) = v;
    }
  }
  return objective_from_gram(gram, x);
}

SymFamily rotate_family(const SymFamily& family, const Mat& rotation) {
  if (rotation.rows() != family.m || rotation.cols() != family.m) {
    throw input_error("rotation must be m x m");
  }
  if (!is_orthogonal(rotation)) throw input_error("rotation must be orthogonal");
  std::vector<SymMatrix> rotated;
  rotated.reserve(family.m);
  for (int r = 0; r < family.m; ++r) {
    Mat acc(family.n, family.n);
    for (int s = 0; s < family.m; ++s) {
      const double w = rotation(s, r);
      if (w == 0.0) continue;
      const Mat& bs = family.members[s].mat();
      for (int t = 0; t < family.n * family.n; ++t) acc.data()[t] += w * bs.data()[t];
    }
    rotated.emplace_back(std::move(acc));
  }
  return SymFamily(std::move(rotated));
}

SymFamily conjugate_family(const SymFamily& family, const Mat& p) {
  if (p.rows() != family.n || p.cols() != family.n) throw input_error("conjugation must be n x n");
  if (!is_orthogonal(p)) throw input_error("conjugation must be orthogonal");
  const Mat pt = p.transposed();
  std::vector<SymMatrix> out;
  out.reserve(family.m);
  for (const SymMatrix& b : family.members) out.emplace_back(p * b.mat() * pt);
  return SymFamily(std::move(out));
}

namespace {

double family_scale(const SymFamily& family) {
  double s = 0.0;
  for (const SymMatrix& b : family.members) s += b.mat().frob_sq();
  return std::max(1.0, std::sqrt(s));
}

double reconstruction_residual(const SymFamily& family, const EqualityCertificate& cert) {
  const SymFamily rebuilt = family_from_certificate(cert, family.n, family.m);
  double worst = 0.0;
  for (int r = 0; r < family.m; ++r) {
    const Mat diff = family.members[r].mat() - rebuilt.members[r].mat();
    worst = std::max(worst, std::sqrt(diff.frob_sq()));
  }
  return worst / family_scale(family);
}

}  // namespace

SymFamily family_from_certificate(const EqualityCertificate& cert, int n, int m) {
  Mat off(n, n);
  Mat diag(n, n);
  if (cert.kind == CertificateKind::kWintgenPair) {
    off(0, 1) = cert.mu;
    off(1, 0) = cert.mu;
    diag(0, 0) = cert.mu;
    diag(1, 1) = -cert.mu;
  }
  const Mat pt = cert.conjugation.transposed();
  std::vector<Mat> canonical(m, Mat(n, n));
  canonical[cert.pair_indices[0]] = cert.conjugation * off * pt;
  canonical[cert.pair_indices[1]] = cert.conjugation * diag * pt;

  std::vector<SymMatrix> members;
  members.reserve(m);
  for (int r = 0; r < m; ++r) {
    Mat acc(n, n);
    for (int s = 0; s < m; ++s) {
      const double w = cert.rotation(r, s);
      if (w == 0.0) continue;
      for (int t = 0; t < n * n; ++t) acc.data()[t] += w * canonical[s].data()[t];
    }
    members.emplace_back(std::move(acc));
  }
  return SymFamily(std::move(members));
}

std::optional<EqualityCertificate> detect_equality(const SymFamily& family, double tol) {
  const GapReport rep = ddvv_gap(family, tol);
  if (rep.gap > tol * rep.rhs) return std::nullopt;

  EqualityCertificate cert;
  cert.rotation = Mat::identity(family.m);
  cert.conjugation = Mat::identity(family.n);

  if (rep.rhs == 0.0) {
    cert.kind = CertificateKind::kZeroFamily;
    cert.mu = 0.0;
    cert.residual = reconstruction_residual(family, cert);
    return cert;
  }

  const ReducedForm red = reduce(family);
  const int big_n = red.q.scheme().size();
  const Mat b = family_coefficients(family);

  // exactly two equal nonzero weights
  if (big_n < 2 || family.m < 2) {
    throw internal_error("equality within tolerance but the family cannot carry the pair form");
  }
  const double x1 = red.x[0];
  const double x2 = red.x[1];
  if (x1 <= 0.0 || std::abs(x1 - x2) > 1e-8 * x1) {
    throw internal_error("equality within tolerance but top weights are not a matched pair");
  }
  for (int k = 2; k < big_n; ++k) {
    if (red.x[k] > 1e-8 * x1) {
      throw internal_error("equality within tolerance but more than two weights are active");
    }
  }

  const SymMatrix qh1 = red.q.qhat(0);
  const SymMatrix qh2 = red.q.qhat(1);

  // pair structure: traceless, anticommuting, rank 2
  if (std::abs(qh1.mat().trace()) > 1e-9 || std::abs(qh2.mat().trace()) > 1e-9) {
    throw internal_error("equality pair is not traceless");
  }
  Mat anti = qh1.mat() * qh2.mat();
  anti += qh2.mat() * qh1.mat();
  if (std::sqrt(anti.frob_sq()) > 1e-8) {
    throw internal_error("equality pair does not anticommute");
  }
  const EigenSym es1 = eigen_sym(qh1.mat());
  if (family.n >= 3) {
    for (const SymMatrix* member : {&qh1, &qh2}) {
      std::vector<double> abs_vals;
      for (double v : eigen_sym(member->mat()).values) abs_vals.push_back(std::abs(v));
      std::sort(abs_vals.begin(), abs_vals.end(), std::greater<>());
      if (abs_vals[2] > 1e-8) throw internal_error("equality pair member is not rank 2");
    }
  }

  // conjugation from the eigenvectors of the first pair member: +1/sqrt(2)
  // eigenvector first, -1/sqrt(2) eigenvector second, kernel after
  Mat p(family.n, family.n);
  for (int i = 0; i < family.n; ++i) {
    p(i, 0) = es1.vectors(i, 0);
    p(i, 1) = es1.vectors(i, family.n - 1);
    for (int k = 2; k < family.n; ++k) p(i, k) = es1.vectors(i, k - 1);
  }
  Mat w2 = p.transposed() * qh2.mat() * p;
  if (std::abs(w2(0, 1)) < 0.5) {
    // a genuine pair couples the two eigendirections with weight 1/sqrt(2)
    throw internal_error("equality pair members do not share an invariant plane");
  }
  if (w2(0, 1) < 0.0) {
    for (int i = 0; i < family.n; ++i) p(i, 1) = -p(i, 1);
  }

  // rotation columns: family-coordinate singular directions of the top pair,
  // swapped so the off-diagonal form lands in the first slot
  Mat rot(family.m, family.m);
  for (int r = 0; r < 2; ++r) {
    const double inv = 1.0 / std::sqrt(red.x[r]);
    for (int s = 0; s < family.m; ++s) {
      double dot = 0.0;
      for (int alpha = 0; alpha < big_n; ++alpha) dot += b(alpha, s) * red.q.q()(alpha, r);
      rot(s, 1 - r) = dot * inv;
    }
  }
  complete_orthonormal_columns(rot, 2);
  if (!is_orthogonal(rot)) throw internal_error("recovered rotation is not orthogonal");

  cert.kind = CertificateKind::kWintgenPair;
  cert.rotation = std::move(rot);
  cert.conjugation = std::move(p);
  cert.mu = std::sqrt(x1 / 2.0);
  cert.pair_indices = {0, 1};
  cert.residual = reconstruction_residual(family, cert);
  if (cert.residual > 10.0 * std::max(tol, 1e-9)) {
    throw internal_error("equality certificate failed to reconstruct the family");
  }
  return cert;
}

}  // namespace ddvv
