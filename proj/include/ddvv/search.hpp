#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ddvv/basis.hpp"
#include "ddvv/matrix.hpp"

namespace ddvv::search {

struct SearchConfig {
  int n = 2;
  int restarts = 64;
  int max_iters = 400;
  double simplex_step = 0.5;   // initial projected-gradient step on the simplex
  double rotation_step = 0.5;  // initial tangent step on the rotation manifold
  std::uint64_t seed = 0;
  int threads = 1;
  double tol_accept = 1e-6;         // a best value above this aborts the run
  double active_threshold = 1e-6;   // active coordinates: x > threshold * max(x)
};

struct RestartSummary {
  int restart = 0;
  double f = 0.0;
  int iters = 0;
  int accepted_steps = 0;
  bool converged = false;
};

/// First-order conditions at a simplex point: the weighted commutator sums
/// minus one share a common value `a` on the active face and read off the
/// boundary multipliers `b` elsewhere.
struct StationarityCertificate {
  std::vector<int> active;
  std::vector<int> inactive;
  double a = 0.0;
  double active_spread = 0.0;  // max deviation of active residuals from a
  std::vector<double> b;       // residuals at the inactive coordinates
  double normal_derivative = 0.0;
  // estimate chain at the heaviest active coordinate: 1 + a against the
  // weighted commutator row sum there; equal at a stationary maximum
  double chain_lhs = 0.0;
  double chain_rhs = 0.0;
};

struct SearchResult {
  int n = 0;
  double best_f = 0.0;
  std::vector<double> x;
  Mat q;
  int best_restart = 0;
  std::vector<RestartSummary> restarts;
  StationarityCertificate certificate;
};

/// Alternating maximization of the reduced objective over simplex x rotation
/// manifold; monotone in the accepted steps, deterministic in (seed, restarts)
/// regardless of thread count.
SearchResult maximize(const SearchConfig& config);

StationarityCertificate stationarity(const BasisExpansion& q, std::span<const double> x,
                                     double active_threshold);

/// d f / d x_alpha = 2 (sum_beta ||[Q^_a, Q^_b]||^2 x_beta - sum x).
std::vector<double> objective_x_gradient(const BasisExpansion& q, std::span<const double> x);

/// Euclidean gradient of the objective in the coefficient entries; column
/// alpha holds the basis coordinates of
/// 4 x_alpha sum_beta x_beta [[Q^_alpha, Q^_beta], Q^_beta].
Mat objective_q_gradient(const BasisExpansion& q, std::span<const double> x);

/// Structure check for a near-maximizer: two equal active weights whose basis
/// elements form a rank-2 traceless anticommuting pair.
struct MaximizerClassification {
  bool pass = false;
  int active_count = 0;
  double weight_residual = 0.0;        // max |x_active - 1/2|
  double trace_residual = 0.0;         // max |tr Q^| over the pair
  double anticommutator_residual = 0.0;
  double rank_residual = 0.0;          // third-largest |eigenvalue| over the pair
};

MaximizerClassification classify_maximizers(const SearchResult& result);

/// Euclidean projection onto {x >= 0, sum x = 1}.
std::vector<double> project_simplex(std::span<const double> x);

}  // namespace ddvv::search
