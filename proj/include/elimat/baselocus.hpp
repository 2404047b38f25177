#pragma once

// Base locus dimension from the Hilbert function of R/I along a window of
// degrees above 2d.

#include <elimat/syzygy.hpp>

#include <string>
#include <vector>

namespace elimat {

struct BaseLocus {
  enum class Kind { Empty, Dim0, Dim1plus, Inconclusive };
  Kind kind = Kind::Inconclusive;
  long degree = 0;                   ///< stabilized value for Dim0
  std::vector<MultiDegree> window;   ///< degrees examined
  std::vector<long> hilbert;         ///< dim (R/I) at those degrees

  std::string to_string() const {
    switch (kind) {
      case Kind::Empty: return "empty";
      case Kind::Dim0: return "dim0";
      case Kind::Dim1plus: return "dim1plus";
      case Kind::Inconclusive: return "inconclusive";
    }
    return "?";
  }
};

/// dim_k (R/I)_D with I generated by the maps.
template <class K>
long hilbert_function_quotient(const Parameterization<K>& P, const MultiDegree& D) {
  const long total = static_cast<long>(graded_dimension(*P.ring, D));
  const MultiDegree below = D - P.degree;
  if (!nonnegative(below)) return total;
  return total - static_cast<long>(rank(multiplication_matrix(P.ring, P.maps, P.degree, below)));
}

/// Degrees 2d + k(1,...,1) for k = 1 .. 2*max(d) + 4. Classification needs
/// four consecutive values: all equal (0 -> Empty, c -> Dim0(c)), or strictly
/// increasing with nondecreasing differences (Dim1plus).
template <class K>
BaseLocus dim_base_locus(const Parameterization<K>& P) {
  BaseLocus B;
  int dmax = 0;
  for (int v : P.degree) dmax = std::max(dmax, v);
  const MultiDegree ones(P.degree.size(), 1);
  for (int k = 1; k <= 2 * dmax + 4; ++k) {
    const MultiDegree D = 2 * P.degree + k * ones;
    B.window.push_back(D);
    B.hilbert.push_back(hilbert_function_quotient(P, D));
    const std::size_t n = B.hilbert.size();
    if (n < 4) continue;
    const long a = B.hilbert[n - 4], b = B.hilbert[n - 3], c = B.hilbert[n - 2], e = B.hilbert[n - 1];
    if (a == b && b == c && c == e) {
      B.kind = a == 0 ? BaseLocus::Kind::Empty : BaseLocus::Kind::Dim0;
      B.degree = a;
      return B;
    }
    if (a < b && b < c && c < e && b - a <= c - b && c - b <= e - c) {
      B.kind = BaseLocus::Kind::Dim1plus;
      return B;
    }
  }
  return B;
}

}  // namespace elimat
