#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nfcount/matrix.hpp"

namespace nfc {

// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

std::size_t rank(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);

// Indices of a maximal set of linearly independent columns, chosen greedily
// from the left.
std::vector<std::size_t> independent_columns(const IntMatrix& m);

std::optional<RatMatrix> inverse(const RatMatrix& m);

// Solves m x = v over Q; nullopt when m is singular.
std::optional<RatVector> solve_rational(const RatMatrix& m,
                                        std::span<const Rational> v);

struct HnfResult {
  IntMatrix basis;  // rows(M) x rank, column-style Hermite normal form
  std::size_t rank = 0;
  std::optional<Integer> det_abs;  // set when M is square and nonsingular
};

// Column-style Hermite normal form of the lattice spanned by the columns of
// m.  The pivot of a column is its lowest nonzero entry (upper triangular
// for full rank).  Columns are ordered by pivot row; pivots are positive and
// every entry in a pivot row to the right of the pivot lies in [0, pivot).  Full row
// rank inputs are reduced modulo a determinant multiple.
HnfResult hnf(const IntMatrix& m);

// HNF of a full-row-rank column lattice, given a positive multiple of its
// determinant.  All intermediate entries are reduced modulo det_multiple.
IntMatrix hnf_modular(const IntMatrix& m, const Integer& det_multiple);

// x with m x = v if v is in the column lattice of the nonsingular square m,
// otherwise nullopt.  Throws InputError if m is singular.
std::optional<IntVector> solve_integral(const IntMatrix& m,
                                        std::span<const Integer> v);

// Characteristic polynomial det(t I - m), coefficients ascending.
RatVector charpoly(const RatMatrix& m);

}  // namespace nfc
