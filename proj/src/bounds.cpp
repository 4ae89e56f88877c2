#include "ddvv/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "ddvv/kernels.hpp"

namespace ddvv::bounds {

SpectrumProfile spectrum_profile(std::vector<double> lambda) {
  if (lambda.empty()) throw input_error("spectrum must be nonempty");
  double norm_sq = 0.0;
  for (double v : lambda) norm_sq += v * v;
  if (std::abs(norm_sq - 1.0) > 1e-10) {
    throw input_error("spectrum must have unit square sum");
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());

  SpectrumProfile p;
  const int n = static_cast<int>(lambda.size());
  for (int j = 0; j < n; ++j) {
    if (lambda[0] - lambda[j] > 1.0) p.top_partners.push_back(j);
  }
  for (int i = 0; i < n; ++i) {
    if (lambda[i] - lambda[n - 1] > 1.0) p.bottom_partners.push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (lambda[i] - lambda[j] > 1.0) p.wide_pairs.push_back({i, j});
    }
  }
  p.lambda = std::move(lambda);

  // the wide pairs must all share the top index or all share the bottom index
  bool top_form = true;
  bool bottom_form = true;
  for (const IndexPair& pair : p.wide_pairs) {
    top_form = top_form && pair.i == 0;
    bottom_form = bottom_form && pair.j == n - 1;
  }
  if (!top_form && !bottom_form) {
    throw internal_error("wide-gap pairs violate the extreme-row/column dichotomy");
  }
  return p;
}

double gap_excess_sum(const SpectrumProfile& profile) {
  double sum = 0.0;
  for (const IndexPair& pair : profile.wide_pairs) {
    const double d = profile.lambda[pair.i] - profile.lambda[pair.j];
    sum += d * d - 1.0;
  }
  return sum;
}

std::vector<double> gap_excess_witness(int n, int wide) {
  if (wide < 1 || wide >= n) throw input_error("witness needs 1 <= wide < n");
  std::vector<double> lambda(n, 0.0);
  lambda[0] = std::sqrt(static_cast<double>(wide) / (wide + 1));
  const double tail = -1.0 / std::sqrt(static_cast<double>(wide) * wide + wide);
  for (int k = n - wide; k < n; ++k) lambda[k] = tail;
  return lambda;
}

namespace {

std::vector<double> commutator_row(const BasisExpansion& q, int alpha) {
  const int big_n = q.scheme().size();
  if (alpha < 0 || alpha >= big_n) throw input_error("basis index out of range");
  const std::vector<SymMatrix> qhats = q.qhat_all();
  const auto& kernel = kernels::active();
  std::vector<double> row(big_n, 0.0);
  for (int beta = 0; beta < big_n; ++beta) {
    if (beta == alpha) continue;
    row[beta] = kernel.sym_commutator_frob_sq(qhats[alpha].mat().data(),
                                              qhats[beta].mat().data(), q.scheme().n());
  }
  return row;
}

}  // namespace

double commutator_excess_sum(const BasisExpansion& q, int alpha, std::span<const int> subset) {
  const std::vector<double> row = commutator_row(q, alpha);
  double sum = 0.0;
  for (int beta : subset) {
    if (beta < 0 || beta >= static_cast<int>(row.size())) {
      throw input_error("subset index out of range");
    }
    sum += row[beta] - 1.0;
  }
  return sum;
}

std::vector<int> greedy_excess_subset(const BasisExpansion& q, int alpha) {
  const std::vector<double> row = commutator_row(q, alpha);
  std::vector<int> subset;
  for (int beta = 0; beta < static_cast<int>(row.size()); ++beta) {
    if (row[beta] > 1.0) subset.push_back(beta);
  }
  return subset;
}

double commutator_row_sum(const BasisExpansion& q, int alpha) {
  const std::vector<double> row = commutator_row(q, alpha);
  double sum = 0.0;
  for (double v : row) sum += v;
  return sum;
}

}  // namespace ddvv::bounds
