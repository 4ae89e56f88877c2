#include "ddvv/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "ddvv/ddvv.hpp"
#include "ddvv/eigen_sym.hpp"
#include "ddvv/kernels.hpp"
#include "ddvv/rng.hpp"

namespace ddvv::search {

namespace {

void fill_gram(const std::vector<Mat>& qhats, int n, Mat& gram) {
  const auto& kernel = kernels::active();
  const int count = static_cast<int>(qhats.size());
  for (int a = 0; a < count; ++a) {
    gram(a, a) = 0.0;
    for (int b = a + 1; b < count; ++b) {
      const double v = kernel.sym_commutator_frob_sq(qhats[a].data(), qhats[b].data(), n);
      gram(a, b) = v;
      gram(b, a) = v;
    }
  }
}

double eval_objective(const Mat& gram, std::span<const double> x) {
  double quad = 0.0;
  double total = 0.0;
  const int count = gram.rows();
  for (int a = 0; a < count; ++a) {
    total += x[a];
    double row = 0.0;
    for (int b = 0; b < count; ++b) row += gram(a, b) * x[b];
    quad += x[a] * row;
  }
  return quad - total * total;
}

// Gram-Schmidt retraction; input is a small perturbation of a rotation, so
// the determinant sign is preserved.
void orthonormalize_columns(Mat& q) {
  const int n = q.rows();
  for (int col = 0; col < n; ++col) {
    for (int prev = 0; prev < col; ++prev) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += q(i, prev) * q(i, col);
      for (int i = 0; i < n; ++i) q(i, col) -= dot * q(i, prev);
    }
    double norm_sq = 0.0;
    for (int i = 0; i < n; ++i) norm_sq += q(i, col) * q(i, col);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int i = 0; i < n; ++i) q(i, col) *= inv;
  }
}

struct AscentState {
  IndexScheme scheme;
  Mat q;
  std::vector<Mat> qhats;
  Mat gram;
  std::vector<double> x;
  double f = 0.0;

  explicit AscentState(int n)
      : scheme(n), q(Mat::identity(scheme.size())), gram(scheme.size(), scheme.size()) {
    qhats.assign(scheme.size(), Mat(n, n));
  }

  void rebuild_from_q() {
    for (int alpha = 0; alpha < scheme.size(); ++alpha) {
      qhat_from_column(scheme, q, alpha, qhats[alpha]);
    }
    fill_gram(qhats, scheme.n(), gram);
  }
};

Mat q_gradient_raw(const IndexScheme& scheme, const std::vector<Mat>& qhats,
                   std::span<const double> x) {
  const int big_n = scheme.size();
  const int n = scheme.n();
  Mat grad(big_n, big_n);
  Mat sum(n, n);
  for (int alpha = 0; alpha < big_n; ++alpha) {
    if (x[alpha] == 0.0) continue;
    for (int t = 0; t < n * n; ++t) sum.data()[t] = 0.0;
    for (int beta = 0; beta < big_n; ++beta) {
      if (x[beta] == 0.0 || beta == alpha) continue;
      const Mat k = commutator(qhats[alpha], qhats[beta]);
      Mat kb = k * qhats[beta];
      kb -= qhats[beta] * k;
      for (int t = 0; t < n * n; ++t) sum.data()[t] += x[beta] * kb.data()[t];
    }
    const double w = 4.0 * x[alpha];
    // coefficients of the symmetric matrix w*sum in the standard basis
    for (int beta = 0; beta < big_n; ++beta) {
      const IndexPair p = scheme.pair(beta);
      grad(beta, alpha) = w * (p.i == p.j ? sum(p.i, p.i) : sum(p.i, p.j) * std::numbers::sqrt2);
    }
  }
  return grad;
}

struct RestartOutcome {
  RestartSummary summary;
  std::vector<double> x;
  Mat q;
};

RestartOutcome run_restart(const SearchConfig& config, int restart_index) {
  Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(restart_index));
  AscentState st(config.n);
  const int big_n = st.scheme.size();
  st.x = rng.simplex_uniform(big_n);
  st.q = rng.haar_special_orthogonal(big_n);
  st.rebuild_from_q();
  st.f = eval_objective(st.gram, st.x);

  double sx = config.simplex_step;
  double sq = config.rotation_step;
  int accepted = 0;
  int iters = 0;
  bool converged = false;

  for (; iters < config.max_iters; ++iters) {
    bool improved = false;

    // simplex step: projected gradient with backtracking, gram unchanged
    {
      double total = 0.0;
      for (double v : st.x) total += v;
      std::vector<double> grad(big_n);
      for (int a = 0; a < big_n; ++a) {
        double row = 0.0;
        for (int b = 0; b < big_n; ++b) row += st.gram(a, b) * st.x[b];
        grad[a] = 2.0 * (row - total);
      }
      double step = sx;
      for (int tries = 0; tries < 30; ++tries) {
        std::vector<double> cand(big_n);
        for (int a = 0; a < big_n; ++a) cand[a] = st.x[a] + step * grad[a];
        cand = project_simplex(cand);
        const double fc = eval_objective(st.gram, cand);
        if (fc > st.f) {
          st.x = std::move(cand);
          st.f = fc;
          sx = std::min(step * 1.5, 64.0);
          ++accepted;
          improved = true;
          break;
        }
        step *= 0.5;
      }
    }

    // pair polish: the equality face is two equal weights, so jumping onto
    // the best pair face is often an exact improvement late in the ascent
    {
      int best_a = 0, best_b = 1;
      double best_g = -1.0;
      for (int a = 0; a < big_n; ++a) {
        for (int b = a + 1; b < big_n; ++b) {
          if (st.gram(a, b) > best_g) {
            best_g = st.gram(a, b);
            best_a = a;
            best_b = b;
          }
        }
      }
      const double fp = 0.5 * best_g - 1.0;
      if (fp > st.f) {
        std::fill(st.x.begin(), st.x.end(), 0.0);
        st.x[best_a] = 0.5;
        st.x[best_b] = 0.5;
        st.f = fp;
        ++accepted;
        improved = true;
      }
    }

    // rotation step: Riemannian ascent with Gram-Schmidt retraction
    {
      const Mat grad = q_gradient_raw(st.scheme, st.qhats, st.x);
      Mat a = st.q.transposed() * grad;
      Mat at = a.transposed();
      a -= at;
      a *= 0.5;  // tangent direction, skew
      if (a.max_abs() > 1e-14) {
        const Mat dir = st.q * a;
        double step = sq;
        AscentState cand = st;
        for (int tries = 0; tries < 30; ++tries) {
          cand.q = st.q;
          for (int t = 0; t < big_n * big_n; ++t) cand.q.data()[t] += step * dir.data()[t];
          orthonormalize_columns(cand.q);
          cand.rebuild_from_q();
          const double fc = eval_objective(cand.gram, st.x);
          if (fc > st.f) {
            st.q = cand.q;
            st.qhats = cand.qhats;
            st.gram = cand.gram;
            st.f = fc;
            sq = std::min(step * 1.5, 64.0);
            ++accepted;
            improved = true;
            break;
          }
          step *= 0.5;
        }
      }
    }

    if (!improved) {
      converged = true;
      ++iters;
      break;
    }
  }

  RestartOutcome out;
  out.summary = RestartSummary{restart_index, st.f, iters, accepted, converged};
  out.x = st.x;
  out.q = st.q;
  return out;
}

}  // namespace

std::vector<double> project_simplex(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> u(x.begin(), x.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  for (int k = 0; k < n; ++k) {
    running += u[k];
    const double candidate = (running - 1.0) / (k + 1);
    if (u[k] - candidate > 0.0) tau = candidate;
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = std::max(x[i] - tau, 0.0);
  return out;
}

SearchResult maximize(const SearchConfig& config) {
  if (config.n < 2) throw input_error("search needs n >= 2");
  if (config.restarts < 1) throw input_error("search needs at least one restart");
  if (config.max_iters < 0) throw input_error("max_iters must be nonnegative");

  std::vector<RestartOutcome> outcomes(config.restarts);
  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    for (int r = 0; r < config.restarts; ++r) outcomes[r] = run_restart(config, r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int r = t; r < config.restarts; r += threads) outcomes[r] = run_restart(config, r);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  SearchResult result;
  result.n = config.n;
  result.restarts.reserve(config.restarts);
  int best = 0;
  for (int r = 0; r < config.restarts; ++r) {
    result.restarts.push_back(outcomes[r].summary);
    if (outcomes[r].summary.f > outcomes[best].summary.f) best = r;
  }
  result.best_restart = best;
  result.best_f = outcomes[best].summary.f;
  result.x = outcomes[best].x;
  result.q = outcomes[best].q;

  if (result.best_f > config.tol_accept) {
    throw internal_error("search exceeded the zero supremum: objective code is wrong");
  }

  const IndexScheme scheme(config.n);
  double xmax = 0.0;
  for (double v : result.x) xmax = std::max(xmax, v);
  result.certificate = stationarity(BasisExpansion(scheme, result.q), result.x,
                                    config.active_threshold * std::max(xmax, 1e-300));
  return result;
}

StationarityCertificate stationarity(const BasisExpansion& q, std::span<const double> x,
                                     double active_threshold) {
  const int big_n = q.scheme().size();
  if (static_cast<int>(x.size()) != big_n) throw input_error("weight count does not match scheme");
  double total = 0.0;
  for (double v : x) {
    if (v < 0.0) throw input_error("weights must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) throw input_error("weights must lie on the unit simplex");

  const Mat gram = pair_commutator_gram(q);
  std::vector<double> residual(big_n);
  for (int a = 0; a < big_n; ++a) {
    double row = 0.0;
    for (int b = 0; b < big_n; ++b) row += gram(a, b) * x[b];
    residual[a] = row - 1.0;
  }

  StationarityCertificate cert;
  int heaviest = 0;
  for (int a = 0; a < big_n; ++a) {
    if (x[a] > active_threshold) {
      cert.active.push_back(a);
    } else {
      cert.inactive.push_back(a);
      cert.b.push_back(residual[a]);
    }
    if (x[a] > x[heaviest]) heaviest = a;
  }
  if (cert.active.empty()) throw input_error("active threshold excluded every coordinate");

  double sum_active = 0.0;
  for (int a : cert.active) sum_active += residual[a];
  cert.a = sum_active / static_cast<double>(cert.active.size());
  for (int a : cert.active) {
    cert.active_spread = std::max(cert.active_spread, std::abs(residual[a] - cert.a));
  }
  double sum_b = 0.0;
  for (double v : cert.b) sum_b += v;
  cert.normal_derivative = 2.0 * (cert.a * static_cast<double>(cert.active.size()) + sum_b);
  cert.chain_lhs = 1.0 + cert.a;
  cert.chain_rhs = residual[heaviest] + 1.0;  // sum_beta x_beta ||[Q^_h, Q^_beta]||^2
  return cert;
}

std::vector<double> objective_x_gradient(const BasisExpansion& q, std::span<const double> x) {
  const int big_n = q.scheme().size();
  if (static_cast<int>(x.size()) != big_n) throw input_error("weight count does not match scheme");
  const Mat gram = pair_commutator_gram(q);
  double total = 0.0;
  for (double v : x) total += v;
  std::vector<double> grad(big_n);
  for (int a = 0; a < big_n; ++a) {
    double row = 0.0;
    for (int b = 0; b < big_n; ++b) row += gram(a, b) * x[b];
    grad[a] = 2.0 * (row - total);
  }
  return grad;
}

Mat objective_q_gradient(const BasisExpansion& q, std::span<const double> x) {
  const IndexScheme& scheme = q.scheme();
  if (static_cast<int>(x.size()) != scheme.size()) {
    throw input_error("weight count does not match scheme");
  }
  std::vector<Mat> qhats(scheme.size(), Mat(scheme.n(), scheme.n()));
  for (int alpha = 0; alpha < scheme.size(); ++alpha) {
    qhat_from_column(scheme, q.q(), alpha, qhats[alpha]);
  }
  return q_gradient_raw(scheme, qhats, x);
}

MaximizerClassification classify_maximizers(const SearchResult& result) {
  if (result.best_f <= -0.1) {
    throw input_error("classification expects a near-maximizer, got f <= -0.1");
  }
  const IndexScheme scheme(result.n);
  const BasisExpansion q(scheme, result.q);

  double xmax = 0.0;
  for (double v : result.x) xmax = std::max(xmax, v);

  MaximizerClassification cls;
  std::vector<int> active;
  for (int a = 0; a < static_cast<int>(result.x.size()); ++a) {
    if (result.x[a] > 1e-6 * xmax) active.push_back(a);
  }
  cls.active_count = static_cast<int>(active.size());
  if (cls.active_count != 2) {
    cls.pass = false;
    return cls;
  }

  for (int a : active) cls.weight_residual = std::max(cls.weight_residual, std::abs(result.x[a] - 0.5));

  const SymMatrix qa = q.qhat(active[0]);
  const SymMatrix qb = q.qhat(active[1]);
  cls.trace_residual = std::max(std::abs(qa.mat().trace()), std::abs(qb.mat().trace()));
  Mat anti = qa.mat() * qb.mat();
  anti += qb.mat() * qa.mat();
  cls.anticommutator_residual = std::sqrt(anti.frob_sq());
  if (result.n >= 3) {
    for (const SymMatrix* member : {&qa, &qb}) {
      std::vector<double> abs_vals;
      for (double v : eigen_sym(member->mat()).values) abs_vals.push_back(std::abs(v));
      std::sort(abs_vals.begin(), abs_vals.end(), std::greater<>());
      cls.rank_residual = std::max(cls.rank_residual, abs_vals[2]);
    }
  }

  cls.pass = cls.weight_residual <= 1e-4 && cls.trace_residual <= 1e-4 &&
             cls.anticommutator_residual <= 1e-4 && cls.rank_residual <= 1e-4;
  return cls;
}

}  // namespace ddvv::search
