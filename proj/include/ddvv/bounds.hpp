#pragma once

#include <span>
#include <vector>

#include "ddvv/basis.hpp"
#include "ddvv/index_scheme.hpp"

namespace ddvv::bounds {

/// Unit spectrum lambda_1 >= ... >= lambda_n with its wide-gap index sets:
/// top_partners = {j : lambda_1 - lambda_j > 1}, bottom_partners =
/// {i : lambda_i - lambda_n > 1}, wide_pairs = {(i,j) : lambda_i - lambda_j > 1}.
/// The wide pairs always collapse onto one extreme row or one extreme column;
/// construction verifies that dichotomy.
struct SpectrumProfile {
  std::vector<double> lambda;
  std::vector<int> top_partners;
  std::vector<int> bottom_partners;
  std::vector<IndexPair> wide_pairs;

  int wide_count() const { return static_cast<int>(wide_pairs.size()); }
};

/// Sorts descending if needed; requires sum lambda_i^2 = 1 within 1e-10.
SpectrumProfile spectrum_profile(std::vector<double> lambda);

/// sum over wide pairs of (lambda_i - lambda_j)^2 - 1; bounded by 1.
double gap_excess_sum(const SpectrumProfile& profile);

/// The unique spectrum attaining gap_excess_sum = 1 with `wide` wide pairs on
/// the top row: lambda_1 = sqrt(w/(w+1)), the last w entries -1/sqrt(w^2+w).
std::vector<double> gap_excess_witness(int n, int wide);

/// sum over beta in subset of (||[Q^_alpha, Q^_beta]||^2 - 1); bounded by 1.
double commutator_excess_sum(const BasisExpansion& q, int alpha, std::span<const int> subset);

/// The subset maximizing commutator_excess_sum: every beta whose commutator
/// norm square exceeds 1.
std::vector<int> greedy_excess_subset(const BasisExpansion& q, int alpha);

/// sum over all beta of ||[Q^_alpha, Q^_beta]||^2; equals n - tr(Q^_alpha)^2.
double commutator_row_sum(const BasisExpansion& q, int alpha);

}  // namespace ddvv::bounds
