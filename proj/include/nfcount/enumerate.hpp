#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace nfc {

// Real lattice given by the columns of a d x n long double matrix (column j
// is basis vector j).  Used only to generate candidates; every candidate is
// re-checked with certified arithmetic by the caller.
struct RealBasis {
  std::size_t dim = 0;
  std::vector<std::vector<long double>> cols;
};

// LLL (delta = 0.99) in place; returns the unimodular transform U with
// reduced = original * U (U[i][j]: coefficient of original i in reduced j).
std::vector<std::vector<std::int64_t>> lll_reduce(RealBasis& b, long double delta = 0.99L);

// Fincke-Pohst: calls fn(y) for every coefficient vector y (over the given
// basis) with |sum y_j b_j|^2 <= bound * (1 + 1e-6).  The slack absorbs
// floating error, so no lattice point inside the exact bound is lost.
void enumerate_ellipsoid(const RealBasis& b, long double bound,
                         const std::function<void(const std::vector<std::int64_t>&)>& fn);

}  // namespace nfc
