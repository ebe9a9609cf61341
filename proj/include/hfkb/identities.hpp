#pragma once

// Finite checks: elementary symmetric functions of doubled signed square
// roots, Betti numbers of symmetric products of a wedge of circles, and the
// homology push-forward from the two tori into Sym^(n-1) of the punctured
// sphere.

#include "hfkb/algebra.hpp"

#include <map>
#include <string>
#include <vector>

namespace hfkb {

// Polynomial in formal variables r_1..r_k with integer coefficients.
// Exponents are stored in halves so square roots of r_i are representable;
// an exponent vector {2, 1} means r_1 * sqrt(r_2).
struct SymPoly {
  std::map<std::vector<int>, BigInt> terms;  // no zero coefficients

  bool is_zero() const { return terms.empty(); }
  // True when every exponent is even, i.e. a polynomial in the r_i.
  bool integral() const;
  SymPoly operator-() const;
  bool operator==(const SymPoly&) const = default;
  std::string to_string() const;
};

// sigma_j(sqrt r_1, -sqrt r_1, ..., sqrt r_k, -sqrt r_k) for j = 1..2k,
// by expansion over all j-subsets of the 2k signed roots.
std::vector<SymPoly> sigma_doubling(int k);
// sigma_m(r_1, ..., r_k).
SymPoly elementary_symmetric(int k, int m);

// Odd entries vanish and entry 2m is (-1)^m sigma_m(r).
bool check_sigma_doubling(int k);

// Betti numbers b_0..b_r of the r-skeleton of the product CW structure on
// the m-torus, from its cellular chain complex.
std::vector<long long> sym_wedge_betti(int m, int r);

// Matrix of the degree-k push-forward H_k(T_beta) + H_k(T_alpha) ->
// Lambda^k Z<nu'_1..nu'_(2n-1)>, with beta_i = nu'_(2i-1) + nu'_(2i) and
// alpha_i = nu'_(2i) + nu'_(2i+1). Rows are k-subsets in lexicographic
// order; columns are the beta wedges then the alpha wedges.
ZMatrix i1_pushforward(int n, int k);

// Injective with torsion-free cokernel in degree k, so the pullback on
// cohomology is onto.
bool pushforward_splits(int n, int k);
// pushforward_splits for every 1 <= k <= n - 1.
bool check_i1_surjectivity(int n);

std::vector<std::vector<int>> k_subsets(int m, int k);

}  // namespace hfkb
