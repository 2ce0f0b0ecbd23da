#pragma once

#include <functional>
#include <vector>

#include "linfty/graded_space.hpp"

namespace linfty {

/// A monomial in the symmetric algebra over a GradedSpace: basis indices,
/// normalized form = ascending index order.
using Monomial = std::vector<int>;

/// Koszul sign of reordering a graded symmetric word by the permutation
/// sigma (0-based images): x_1...x_n = sign * x_{sigma(1)}...x_{sigma(n)}.
/// Pure Koszul convention, no extra permutation parity. degrees[k] is the
/// degree of x_{k+1}. Throws on length mismatch or non-bijective input.
int koszul_sign(const std::vector<int>& sigma, const std::vector<int>& degrees);

struct Normalized {
  Monomial mono;
  int sign;  // +1, -1, or 0 when an odd-degree factor repeats
};

/// Sort factors into ascending basis order, collecting the Koszul sign of
/// the sorting permutation. degrees[k] is the degree of factors[k].
Normalized normalize_monomial(const Monomial& factors,
                              const std::vector<int>& degrees);

/// Convenience: degrees looked up in the given space.
Normalized normalize_monomial(const Monomial& factors, const GradedSpace& s);

int monomial_degree(const Monomial& m, const GradedSpace& s);
std::string monomial_str(const Monomial& m, const GradedSpace& s);

/// All (i, n-i)-unshuffles: permutations of {0..n-1} increasing on the
/// first i and last n-i slots. Exactly C(n,i) of them, identity included.
std::vector<std::vector<int>> unshuffles(int i, int n);

/// Multi-block unshuffles for block sizes (k_1,...,k_j) with sum n: every
/// permutation increasing within each consecutive block. The callback
/// receives the full index sequence (concatenated blocks).
void for_each_block_unshuffle(const std::vector<int>& block_sizes,
                              const std::function<void(const std::vector<int>&)>& fn);

/// All normalized monomials of the given length: ascending multi-indices
/// with odd-degree repetitions excluded.
std::vector<Monomial> monomials_of_length(const GradedSpace& s, int length);

/// n! / (product of multiplicities!) is not needed anywhere; what recurs is
/// the automorphism factor of a normalized monomial.
Rat monomial_automorphisms(const Monomial& sorted);

}  // namespace linfty
