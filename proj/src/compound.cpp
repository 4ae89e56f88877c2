#include "ddvv/compound.hpp"

#include "ddvv/basis.hpp"
#include "ddvv/kernels.hpp"

namespace ddvv {

Mat compound(const Mat& a) {
  if (a.rows() < 2 || a.cols() < 2) throw input_error("compound needs at least 2x2 input");
  const StrictPairScheme rows(a.rows());
  const StrictPairScheme cols(a.cols());
  Mat out(rows.size(), cols.size());
  for (int r = 0; r < rows.size(); ++r) {
    const auto [i, j] = rows.pair(r);
    for (int c = 0; c < cols.size(); ++c) {
      const auto [k, l] = cols.pair(c);
      out(r, c) = a(i, k) * a(j, l) - a(i, l) * a(j, k);
    }
  }
  return out;
}

namespace {

Mat commutator_gram_of(const std::vector<Mat>& mats) {
  const int count = static_cast<int>(mats.size());
  const StrictPairScheme pairs(count);
  const int n = mats.front().rows();
  const size_t nn = static_cast<size_t>(n) * n;

  // stack all commutators as rows of z, then the Gram matrix is z z^t
  Mat z(pairs.size(), static_cast<int>(nn));
  for (int idx = 0; idx < pairs.size(); ++idx) {
    const auto [a, b] = pairs.pair(idx);
    const Mat k = commutator(mats[a], mats[b]);
    for (size_t t = 0; t < nn; ++t) z(idx, static_cast<int>(t)) = k.data()[t];
  }
  Mat zt = z.transposed();
  Mat gram(pairs.size(), pairs.size());
  kernels::active().gemm(z.data(), zt.data(), gram.data(), pairs.size(), static_cast<int>(nn),
                         pairs.size());
  return gram;
}

}  // namespace

Mat commutator_gram_basis(const IndexScheme& scheme) {
  std::vector<Mat> mats;
  mats.reserve(scheme.size());
  for (const SymMatrix& e : build_basis(scheme)) mats.push_back(e.mat());
  return commutator_gram_of(mats);
}

Mat commutator_gram(const std::vector<Mat>& mats) {
  if (mats.size() < 2) throw input_error("commutator gram needs at least two matrices");
  for (const Mat& m : mats) {
    if (!m.square() || m.rows() != mats.front().rows()) {
      throw input_error("commutator gram needs square matrices of one dimension");
    }
  }
  return commutator_gram_of(mats);
}

}  // namespace ddvv
