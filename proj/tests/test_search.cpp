#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ddvv/ddvv.hpp"
#include "ddvv/rng.hpp"
#include "ddvv/search.hpp"

using namespace ddvv;
using namespace ddvv::search;

namespace {

BasisExpansion wintgen_pair_basis() {
  const IndexScheme scheme(2);
  const double s = 1.0 / std::sqrt(2.0);
  Mat q(3, 3);
  q(1, 0) = 1.0;
  q(0, 1) = s;
  q(2, 1) = -s;
  q(0, 2) = s;
  q(2, 2) = s;
  return BasisExpansion(scheme, q);
}

}  // namespace

TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(71);
  for (int n : {2, 3}) {
    const IndexScheme scheme(n);
    const int big_n = scheme.size();
    const Mat q0 = rng.haar_special_orthogonal(big_n);
    const BasisExpansion q(scheme, q0);
    std::vector<double> x = rng.simplex_uniform(big_n);

    // weights gradient against the quadratic form itself
    const std::vector<double> gx = objective_x_gradient(q, x);
    const double h = 1e-6;
    for (int a = 0; a < big_n; ++a) {
      std::vector<double> plus = x;
      std::vector<double> minus = x;
      plus[a] += h;
      minus[a] -= h;
      const double fd = (objective_coefficients(scheme, q0, plus) -
                         objective_coefficients(scheme, q0, minus)) /
                        (2.0 * h);
      CHECK(gx[a] == doctest::Approx(fd).epsilon(1e-6));
    }

    // coefficient gradient probed entry by entry, off the manifold too
    const Mat gq = objective_q_gradient(q, x);
    for (int gamma = 0; gamma < big_n; ++gamma) {
      for (int alpha = 0; alpha < big_n; ++alpha) {
        Mat plus = q0;
        Mat minus = q0;
        plus(gamma, alpha) += h;
        minus(gamma, alpha) -= h;
        const double fd = (objective_coefficients(scheme, plus, x) -
                           objective_coefficients(scheme, minus, x)) /
                          (2.0 * h);
        CHECK(gq(gamma, alpha) == doctest::Approx(fd).epsilon(5e-5));
      }
    }
  }
}

TEST_CASE("maximize reaches the zero supremum on the smallest case") {
  SearchConfig config;
  config.n = 2;
  config.restarts = 8;
  config.max_iters = 300;
  config.seed = 5;
  const SearchResult res = maximize(config);
  CHECK(res.best_f >= -1e-6);
  CHECK(res.best_f <= 1e-6);

  std::vector<double> sorted = res.x;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  CHECK(std::abs(sorted[0] - 0.5) <= 1e-3);
  CHECK(std::abs(sorted[1] - 0.5) <= 1e-3);
  CHECK(sorted[2] <= 1e-3);

  const MaximizerClassification cls = classify_maximizers(res);
  CHECK(cls.pass);
  CHECK(cls.active_count == 2);

  // certificate at the maximizer: a = 0 with a tight active face
  CHECK(std::abs(res.certificate.a) <= 1e-6);
  CHECK(res.certificate.active_spread <= 1e-6);
  CHECK(res.certificate.chain_lhs ==
        doctest::Approx(res.certificate.chain_rhs).epsilon(1e-6));
}

TEST_CASE("zero-iteration searches report the initial sample") {
  SearchConfig config;
  config.n = 3;
  config.restarts = 6;
  config.max_iters = 0;
  config.seed = 9;
  const SearchResult res = maximize(config);
  CHECK(res.best_f < 0.0);  // a random sample does not sit on the maximizer set
  for (const RestartSummary& s : res.restarts) {
    CHECK(s.iters == 0);
    CHECK(s.accepted_steps == 0);
  }

  // ascent from the same seeds can only improve every restart
  SearchConfig more = config;
  more.max_iters = 60;
  const SearchResult better = maximize(more);
  for (int r = 0; r < config.restarts; ++r) {
    CHECK(better.restarts[r].f >= res.restarts[r].f);
  }
}

TEST_CASE("stationarity certificates at the reference points") {
  const BasisExpansion pair = wintgen_pair_basis();
  const std::vector<double> half{0.5, 0.5, 0.0};
  const StationarityCertificate at_max = stationarity(pair, half, 1e-6);
  CHECK(at_max.active == std::vector<int>{0, 1});
  CHECK(std::abs(at_max.a) <= 1e-9);
  CHECK(at_max.active_spread <= 1e-9);
  CHECK(at_max.chain_lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(at_max.chain_rhs == doctest::Approx(1.0).epsilon(1e-9));

  const IndexScheme scheme(2);
  const BasisExpansion id = BasisExpansion::identity(scheme);
  const std::vector<double> barycenter(3, 1.0 / 3.0);
  const StationarityCertificate interior = stationarity(id, barycenter, 1e-6);
  CHECK(static_cast<int>(interior.active.size()) == 3);
  CHECK(interior.a < 0.0);

  const std::vector<double> vertex{1.0, 0.0, 0.0};
  const StationarityCertificate at_vertex = stationarity(id, vertex, 1e-6);
  CHECK(at_vertex.active == std::vector<int>{0});
  CHECK(at_vertex.a == doctest::Approx(-1.0));

  const std::vector<double> off_simplex{0.9, 0.0, 0.0};
  CHECK_THROWS_AS(stationarity(id, off_simplex, 1e-6), input_error);
}

TEST_CASE("classification thresholds and the precondition") {
  // hand-built perfect maximizer
  SearchResult res;
  res.n = 2;
  res.best_f = 0.0;
  res.x = {0.5, 0.5, 0.0};
  res.q = wintgen_pair_basis().q();
  const MaximizerClassification good = classify_maximizers(res);
  CHECK(good.pass);
  CHECK(good.weight_residual <= 1e-12);
  CHECK(good.trace_residual <= 1e-12);

  // perturbed weights: residuals surface and the verdict flips
  SearchResult off = res;
  off.x = {0.53, 0.47, 0.0};
  off.best_f = -0.01;
  const MaximizerClassification bad = classify_maximizers(off);
  CHECK_FALSE(bad.pass);
  CHECK(bad.weight_residual == doctest::Approx(0.03));

  SearchResult far = res;
  far.best_f = -0.2;
  CHECK_THROWS_AS(classify_maximizers(far), input_error);
}

TEST_CASE("classification is invariant under joint permutations and sign flips") {
  SearchConfig config;
  config.n = 2;
  config.restarts = 4;
  config.max_iters = 200;
  config.seed = 13;
  const SearchResult res = maximize(config);
  const MaximizerClassification base = classify_maximizers(res);
  REQUIRE(base.pass);

  const int big_n = 3;
  SearchResult permuted = res;
  const int perm[3] = {2, 0, 1};
  permuted.q = Mat(big_n, big_n);
  for (int c = 0; c < big_n; ++c) {
    permuted.x[c] = res.x[perm[c]];
    for (int r = 0; r < big_n; ++r) permuted.q(r, c) = res.q(r, perm[c]);
  }
  const MaximizerClassification after_perm = classify_maximizers(permuted);
  CHECK(after_perm.pass == base.pass);
  CHECK(after_perm.active_count == base.active_count);
  CHECK(after_perm.weight_residual == doctest::Approx(base.weight_residual).epsilon(1e-12));

  SearchResult flipped = res;
  for (int r = 0; r < big_n; ++r) flipped.q(r, 0) = -flipped.q(r, 0);
  const MaximizerClassification after_flip = classify_maximizers(flipped);
  CHECK(after_flip.pass == base.pass);
  CHECK(after_flip.anticommutator_residual ==
        doctest::Approx(base.anticommutator_residual).epsilon(1e-9));
}

TEST_CASE("objective symmetries: joint permutation, sign flips, homogeneity") {
  Rng rng(72);
  const IndexScheme scheme(3);
  const int big_n = scheme.size();
  const Mat q = rng.haar_special_orthogonal(big_n);
  const std::vector<double> x = rng.simplex_uniform(big_n);
  const double f = objective_coefficients(scheme, q, x);

  // joint permutation of weights and columns
  std::vector<int> perm(big_n);
  for (int i = 0; i < big_n; ++i) perm[i] = (i + 2) % big_n;
  Mat qp(big_n, big_n);
  std::vector<double> xp(big_n);
  for (int c = 0; c < big_n; ++c) {
    xp[c] = x[perm[c]];
    for (int r = 0; r < big_n; ++r) qp(r, c) = q(r, perm[c]);
  }
  CHECK(objective_coefficients(scheme, qp, xp) == doctest::Approx(f).epsilon(1e-12));

  // column sign flips
  Mat qs = q;
  for (int r = 0; r < big_n; ++r) {
    qs(r, 1) = -qs(r, 1);
    qs(r, 4) = -qs(r, 4);
  }
  CHECK(objective_coefficients(scheme, qs, x) == doctest::Approx(f).epsilon(1e-12));

  // degree-2 homogeneity of the unnormalized form
  for (double t : {0.25, 2.0, 7.5}) {
    std::vector<double> xt = x;
    for (double& v : xt) v *= t;
    CHECK(objective_coefficients(scheme, q, xt) == doctest::Approx(t * t * f).epsilon(1e-12));
  }
}

TEST_CASE("strict negativity at the identity expansion holds on the interior") {
  Rng rng(73);
  for (int n : {2, 3, 4}) {
    const IndexScheme scheme(n);
    const BasisExpansion id = BasisExpansion::identity(scheme);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<double> x = rng.simplex_uniform(scheme.size());
      for (double& v : x) v = 0.95 * v + 0.05 / scheme.size();
      CHECK(objective(id, x) < 0.0);
    }
  }
}

TEST_CASE("simplex projection: feasibility and fixed points") {
  Rng rng(74);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 12;
    std::vector<double> v(n);
    for (double& t : v) t = 4.0 * rng.gaussian();
    const std::vector<double> p = project_simplex(v);
    double sum = 0.0;
    for (double t : p) {
      CHECK(t >= 0.0);
      sum += t;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

    // projecting a feasible point changes nothing
    const std::vector<double> q = project_simplex(p);
    for (int i = 0; i < n; ++i) CHECK(q[i] == doctest::Approx(p[i]).epsilon(1e-12));
  }
}

TEST_CASE("search results are identical across runs and thread counts") {
  SearchConfig config;
  config.n = 3;
  config.restarts = 6;
  config.max_iters = 40;
  config.seed = 77;
  config.threads = 1;
  const SearchResult a = maximize(config);
  const SearchResult b = maximize(config);
  config.threads = 2;
  const SearchResult c = maximize(config);

  CHECK(a.best_f == b.best_f);
  CHECK(a.best_f == c.best_f);
  CHECK(a.x == b.x);
  CHECK(a.x == c.x);
  CHECK(a.q == b.q);
  CHECK(a.q == c.q);
  for (int r = 0; r < config.restarts; ++r) {
    CHECK(a.restarts[r].f == c.restarts[r].f);
    CHECK(a.restarts[r].accepted_steps == c.restarts[r].accepted_steps);
  }
}
