#include "ddvv/index_scheme.hpp"

namespace ddvv {

namespace detail {

std::vector<IndexPair> lex_pairs(int n, bool strict) {
  std::vector<IndexPair> out;
  out.reserve(static_cast<size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = strict ? i + 1 : i; j < n; ++j) out.push_back({i, j});
  }
  return out;
}

}  // namespace detail

IndexScheme::IndexScheme(int n) : n_(n) {
  if (n < 1) throw input_error("index scheme needs n >= 1");
  pairs_ = detail::lex_pairs(n, /*strict=*/false);
  flat_.assign(static_cast<size_t>(n) * n, -1);
  for (int a = 0; a < size(); ++a) {
    const IndexPair p = pairs_[a];
    flat_[static_cast<size_t>(p.i) * n + p.j] = a;
  }
}

int IndexScheme::flat(int i, int j) const {
  if (i < 0 || j < i || j >= n_) throw input_error("index pair out of range");
  return flat_[static_cast<size_t>(i) * n_ + j];
}

IndexPair IndexScheme::pair(int alpha) const {
  if (alpha < 0 || alpha >= size()) throw input_error("flat index out of range");
  return pairs_[alpha];
}

bool IndexScheme::diagonal(int alpha) const {
  const IndexPair p = pair(alpha);
  return p.i == p.j;
}

StrictPairScheme::StrictPairScheme(int count) : count_(count) {
  if (count < 2) throw input_error("strict pair scheme needs at least 2 elements");
  pairs_ = detail::lex_pairs(count, /*strict=*/true);
  flat_.assign(static_cast<size_t>(count) * count, -1);
  for (int a = 0; a < size(); ++a) {
    const IndexPair p = pairs_[a];
    flat_[static_cast<size_t>(p.i) * count + p.j] = a;
  }
}

int StrictPairScheme::flat(int i, int j) const {
  if (i < 0 || j <= i || j >= count_) throw input_error("strict pair out of range");
  return flat_[static_cast<size_t>(i) * count_ + j];
}

IndexPair StrictPairScheme::pair(int idx) const {
  if (idx < 0 || idx >= size()) throw input_error("strict pair index out of range");
  return pairs_[idx];
}

}  // namespace ddvv
