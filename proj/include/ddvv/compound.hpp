#pragma once

#include <vector>

#include "ddvv/index_scheme.hpp"
#include "ddvv/matrix.hpp"

namespace ddvv {

/// Second compound: the C(m,2) x C(n,2) matrix of 2x2 minors
/// a_ik a_jl - a_il a_jk, rows/columns in lexicographic pair order.
/// Multiplicative: compound(a*b) = compound(a)*compound(b).
Mat compound(const Mat& a);

/// Gram matrix of the vectorized basis commutators: entry at strict pairs
/// ((alpha,beta),(gamma,tau)) is <[E^_alpha,E^_beta],[E^_gamma,E^_tau]>.
Mat commutator_gram_basis(const IndexScheme& scheme);

/// Same Gram matrix for an arbitrary ordered list of square matrices.
Mat commutator_gram(const std::vector<Mat>& mats);

}  // namespace ddvv
