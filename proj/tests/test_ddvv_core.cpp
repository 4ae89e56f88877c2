#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ddvv/ddvv.hpp"
#include "ddvv/rng.hpp"

using namespace ddvv;

namespace {

SymFamily random_family(Rng& rng, int n, int m) {
  std::vector<SymMatrix> members;
  for (int r = 0; r < m; ++r) members.push_back(rng.random_symmetric(n));
  return SymFamily(std::move(members));
}

SymFamily constructed_equality(Rng& rng, int n, int m, double mu) {
  EqualityCertificate plan;
  plan.kind = CertificateKind::kWintgenPair;
  plan.rotation = rng.haar_orthogonal(m);
  plan.conjugation = rng.haar_orthogonal(n);
  plan.mu = mu;
  return family_from_certificate(plan, n, m);
}

const Mat kOffdiag(2, 2, {0, 1, 1, 0});
const Mat kDiag(2, 2, {1, 0, 0, -1});

}  // namespace

TEST_CASE("gap report on the hand-checked families") {
  Rng rng(41);

  // a single matrix commutes with itself
  const SymFamily single = make_family({rng.random_symmetric(3).mat()});
  const GapReport gs = ddvv_gap(single);
  CHECK(gs.lhs == 0.0);
  const double norm_sq = single.members[0].mat().frob_sq();
  CHECK(gs.rhs == doctest::Approx(norm_sq * norm_sq).epsilon(1e-14));
  CHECK(gs.gap == doctest::Approx(gs.rhs));
  CHECK_FALSE(gs.equality);

  // the mu = 1 normal form pair
  const SymFamily pair = make_family({kOffdiag, kDiag});
  const GapReport gp = ddvv_gap(pair);
  CHECK(gp.lhs == 16.0);
  CHECK(gp.rhs == 16.0);
  CHECK(gp.gap == 0.0);
  CHECK(gp.equality);

  // generic families sit strictly inside
  const GapReport gr = ddvv_gap(random_family(rng, 4, 3));
  CHECK(gr.gap > 0.0);
  CHECK_FALSE(gr.equality);
  CHECK_FALSE(detect_equality(random_family(rng, 4, 3)).has_value());
}

TEST_CASE("mixed families: the counterexample and the antisymmetric bound") {
  const Mat b3(2, 2, {0, 1, -1, 0});
  const GapReport rep = mixed_gap({kDiag, kOffdiag, b3});
  CHECK(rep.lhs == 48.0);
  CHECK(rep.rhs == 36.0);
  CHECK(rep.gap == -12.0);

  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 5;  // up to 6
    const int m = 1 + trial % 4;
    std::vector<Mat> family;
    for (int r = 0; r < m; ++r) family.push_back(rng.random_antisymmetric(n));
    const GapReport g = mixed_gap(family);
    CHECK(g.gap >= -1e-9 * std::max(1.0, g.rhs));
  }

  const GapReport zero = mixed_gap({Mat(3, 3)});
  CHECK(zero.gap == 0.0);
  CHECK(zero.equality);

  CHECK_THROWS_AS(mixed_gap({Mat(2, 2), Mat(3, 3)}), input_error);
}

TEST_CASE("nonnegativity, scaling and invariance properties of the gap") {
  Rng rng(43);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + trial % 5;
    const int m = 1 + trial % 6;
    const GapReport g = ddvv_gap(random_family(rng, n, m));
    CHECK(g.gap >= -1e-9 * std::max(1.0, g.rhs));
  }

  for (int trial = 0; trial < 200; ++trial) {
    const SymFamily family = random_family(rng, 3, 3);
    const GapReport base = ddvv_gap(family);

    const double t = 0.1 + 4.0 * rng.uniform();
    std::vector<Mat> scaled;
    for (const SymMatrix& b : family.members) {
      Mat m = b.mat();
      m *= t;
      scaled.push_back(std::move(m));
    }
    const GapReport gs = ddvv_gap(make_family(scaled));
    const double t4 = t * t * t * t;
    CHECK(gs.gap == doctest::Approx(t4 * base.gap).epsilon(1e-10));

    const Mat rot = rng.haar_orthogonal(family.m);
    const GapReport grot = ddvv_gap(rotate_family(family, rot));
    CHECK(grot.lhs == doctest::Approx(base.lhs).epsilon(1e-10));
    CHECK(grot.rhs == doctest::Approx(base.rhs).epsilon(1e-10));

    const Mat p = rng.haar_orthogonal(family.n);
    const GapReport gconj = ddvv_gap(conjugate_family(family, p));
    CHECK(gconj.lhs == doctest::Approx(base.lhs).epsilon(1e-10));
    CHECK(gconj.rhs == doctest::Approx(base.rhs).epsilon(1e-10));
  }

  const SymFamily family = random_family(rng, 3, 2);
  CHECK(rotate_family(family, Mat::identity(2)).members[0].mat() == family.members[0].mat());
  Mat skewed = Mat::identity(2);
  skewed(0, 1) = 0.3;
  CHECK_THROWS_AS(rotate_family(family, skewed), input_error);
}

TEST_CASE("spectral reduction round-trips BB^t") {
  // rank-one basis element: BB^t is already diagonal, so q stays the identity
  const Mat e00(2, 2, {1, 0, 0, 0});
  const ReducedForm r1 = reduce(make_family({e00}));
  CHECK(r1.x[0] == doctest::Approx(1.0));
  CHECK(r1.x[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r1.x[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r1.q.q() == Mat::identity(3));

  // normal form pair: x = (2, 2, 0), leading directions span the traceless
  // plane {E01+E10, E00-E11}
  const ReducedForm r2 = reduce(make_family({kOffdiag, kDiag}));
  CHECK(r2.x[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r2.x[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r2.x[2] == doctest::Approx(0.0).epsilon(1e-12));
  const double s = 1.0 / std::sqrt(2.0);
  const Mat u(2, 2, {0, s, s, 0});
  const Mat v(2, 2, {s, 0, 0, -s});
  for (int k : {0, 1}) {
    const Mat qh = r2.q.qhat(k).mat();
    double cu = 0.0, cv = 0.0;
    for (size_t t = 0; t < qh.entries().size(); ++t) {
      cu += qh.data()[t] * u.data()[t];
      cv += qh.data()[t] * v.data()[t];
    }
    Mat proj = cu * u + cv * v;
    CHECK((qh - proj).max_abs() <= 1e-12);
  }

  Rng rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 4;
    const int m = 1 + trial % 5;
    const SymFamily family = random_family(rng, n, m);
    const ReducedForm red = reduce(family);

    CHECK(det(red.q.q()) == doctest::Approx(1.0).epsilon(1e-9));
    for (size_t k = 0; k + 1 < red.x.size(); ++k) CHECK(red.x[k] >= red.x[k + 1]);

    double total = 0.0;
    for (double v : red.x) {
      CHECK(v >= 0.0);
      total += v;
    }
    double norm_sum = 0.0;
    for (const SymMatrix& b : family.members) norm_sum += b.mat().frob_sq();
    CHECK(total == doctest::Approx(norm_sum).epsilon(1e-10));

    const Mat b = family_coefficients(family);
    const Mat bbt = b * b.transposed();
    Mat diag(red.q.scheme().size(), red.q.scheme().size());
    for (int k = 0; k < diag.rows(); ++k) diag(k, k) = red.x[k];
    const Mat rebuilt = red.q.q() * diag * red.q.q().transposed();
    CHECK((rebuilt - bbt).max_abs() <= 1e-10 * std::max(1.0, bbt.max_abs()));
  }
}

TEST_CASE("the three commutator-sum routes agree") {
  const SymFamily zero = make_family({Mat(3, 3), Mat(3, 3)});
  const CommutatorSumRoutes z = commutator_sum_routes(zero);
  CHECK(z.direct == 0.0);
  CHECK(z.via_compound == 0.0);
  CHECK(z.via_reduction == doctest::Approx(0.0).epsilon(1e-14));

  const CommutatorSumRoutes p = commutator_sum_routes(make_family({kOffdiag, kDiag}));
  CHECK(p.direct == doctest::Approx(16.0));
  CHECK(p.via_compound == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(p.via_reduction == doctest::Approx(16.0).epsilon(1e-12));

  Rng rng(45);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;  // up to 5
    const int m = 1 + trial % 5;
    const CommutatorSumRoutes routes = commutator_sum_routes(random_family(rng, n, m));
    const double scale = std::max(1.0, routes.direct);
    CHECK(std::abs(routes.direct - routes.via_compound) <= 1e-10 * scale);
    CHECK(std::abs(routes.direct - routes.via_reduction) <= 1e-10 * scale);
  }
}

TEST_CASE("objective values at the reference configurations") {
  const IndexScheme scheme(2);
  const BasisExpansion id = BasisExpansion::identity(scheme);

  const std::vector<double> vertex{1.0, 0.0, 0.0};
  CHECK(objective(id, vertex) == doctest::Approx(-1.0));

  // basis adapted to the equality pair
  const double s = 1.0 / std::sqrt(2.0);
  Mat q(3, 3);
  q(1, 0) = 1.0;  // Q^_0 = (E01+E10)/sqrt(2)
  q(0, 1) = s;    // Q^_1 = (E00-E11)/sqrt(2)
  q(2, 1) = -s;
  q(0, 2) = s;  // Q^_2 = (E00+E11)/sqrt(2)
  q(2, 2) = s;
  const BasisExpansion wintgen(scheme, q);
  const std::vector<double> half{0.5, 0.5, 0.0};
  CHECK(objective(wintgen, half) == doctest::Approx(0.0).epsilon(1e-14));

  Rng rng(46);
  for (int n : {2, 3, 4}) {
    const IndexScheme sc(n);
    const BasisExpansion e = BasisExpansion::identity(sc);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> x = rng.simplex_uniform(sc.size());
      for (double& v : x) v = 0.9 * v + 0.1 / sc.size();  // keep strictly interior
      CHECK(objective(e, x) < 0.0);
    }
  }

  const std::vector<double> negative{-0.1, 0.6, 0.5};
  CHECK_THROWS_AS(objective(id, negative), input_error);
}

TEST_CASE("equality certificates: construct, hide, recover") {
  Rng rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;        // up to 6
    const int m = 2 + trial % 4;        // up to 5
    const double mu = 0.1 + 9.9 * rng.uniform();
    const SymFamily family = constructed_equality(rng, n, m, mu);

    const GapReport g = ddvv_gap(family);
    CHECK(g.gap <= 1e-10 * g.rhs);

    const std::optional<EqualityCertificate> cert = detect_equality(family);
    REQUIRE(cert.has_value());
    CHECK(cert->kind == CertificateKind::kWintgenPair);
    CHECK(std::abs(cert->mu - mu) <= 1e-8 * mu);
    CHECK(cert->residual <= 1e-8);

    // the certified transformations really do land on the normal form
    const SymFamily rotated = rotate_family(family, cert->rotation);
    const Mat pt = cert->conjugation.transposed();
    for (int r = 0; r < m; ++r) {
      Mat canon = pt * rotated.members[r].mat() * cert->conjugation;
      if (r == cert->pair_indices[0]) {
        canon(0, 1) -= mu;
        canon(1, 0) -= mu;
      } else if (r == cert->pair_indices[1]) {
        canon(0, 0) -= mu;
        canon(1, 1) += mu;
      }
      CHECK(canon.max_abs() <= 1e-8 * std::max(1.0, mu));
    }
  }

  // zero family: the mu = 0 limit
  const std::optional<EqualityCertificate> zc = detect_equality(make_family({Mat(3, 3), Mat(3, 3)}));
  REQUIRE(zc.has_value());
  CHECK(zc->kind == CertificateKind::kZeroFamily);
  CHECK(zc->mu == 0.0);
  CHECK(zc->residual == 0.0);

  // far-from-equality family
  Rng rng2(48);
  const SymFamily generic = random_family(rng2, 4, 3);
  const GapReport gg = ddvv_gap(generic);
  CHECK(gg.gap > gg.rhs / 4.0);  // generic families sit well inside
  CHECK_FALSE(detect_equality(generic).has_value());

  // slightly perturbed equality families land above the threshold and come
  // back absent, never as an internal failure
  for (int trial = 0; trial < 20; ++trial) {
    const SymFamily family = constructed_equality(rng2, 4, 3, 1.0);
    std::vector<Mat> nudged;
    for (const SymMatrix& b : family.members) {
      Mat m = b.mat();
      m += 1e-5 * rng2.random_symmetric(4).mat();
      nudged.push_back(std::move(m));
    }
    CHECK_FALSE(detect_equality(make_family(nudged)).has_value());
  }

  // top of the supported size range
  const SymFamily big = constructed_equality(rng2, 8, 8, 3.5);
  const std::optional<EqualityCertificate> bc = detect_equality(big);
  REQUIRE(bc.has_value());
  CHECK(std::abs(bc->mu - 3.5) <= 1e-8 * 3.5);
  CHECK(bc->residual <= 1e-8);
}
