#pragma once

#include <vector>

#include "ddvv/common.hpp"

namespace ddvv {

struct IndexPair {
  int i = 0;
  int j = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

namespace detail {
/// Pairs (i, j) with i <= j (or i < j when strict) of {0, ..., n-1} in
/// lexicographic order. Single source of the pair ordering for the whole
/// library: the symmetric basis, the compound map, and the commutator Gram
/// matrices all index through tables built here.
std::vector<IndexPair> lex_pairs(int n, bool strict);
}  // namespace detail

/// The ordered index set S = {(i, j) : 0 <= i <= j < n} with both lookup
/// directions materialized. N = n(n+1)/2.
class IndexScheme {
 public:
  explicit IndexScheme(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }

  int flat(int i, int j) const;
  IndexPair pair(int alpha) const;

  /// delta_alpha: 1 exactly when alpha is a diagonal index (i == j).
  bool diagonal(int alpha) const;

 private:
  int n_;
  std::vector<IndexPair> pairs_;
  std::vector<int> flat_;  // n*n lookup, -1 below the diagonal
};

/// Strict pairs (i < j) of {0, ..., count-1} in the same lexicographic order;
/// indexes compound-matrix rows/columns and vectorized commutator lists.
class StrictPairScheme {
 public:
  explicit StrictPairScheme(int count);

  int count() const { return count_; }
  int size() const { return static_cast<int>(pairs_.size()); }  // C(count, 2)

  int flat(int i, int j) const;
  IndexPair pair(int idx) const;

 private:
  int count_;
  std::vector<IndexPair> pairs_;
  std::vector<int> flat_;
};

}  // namespace ddvv
