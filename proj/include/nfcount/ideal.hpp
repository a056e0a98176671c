#pragma once

#include <span>
#include <vector>

#include "nfcount/number_field.hpp"

namespace nfc {

// Nonzero ideal n of o as a full-rank sublattice of the integral basis
// lattice, stored in column Hermite normal form.
class IdealLattice {
 public:
  IdealLattice() = default;

  static IdealLattice unit(FieldPtr k);
  // Z-span of {g b_j}; throws InputError if every generator is zero.
  static IdealLattice from_generators(FieldPtr k, const std::vector<IntVector>& gens);
  // Validates shape and the ideal test.
  static IdealLattice from_hnf(FieldPtr k, const IntMatrix& h);

  const FieldPtr& field() const { return field_; }
  const IntMatrix& hnf() const { return hnf_; }
  const Integer& index() const { return index_; }
  std::size_t degree() const { return hnf_.rows(); }
  IntVector generator(std::size_t j) const { return hnf_.column(j); }

  bool contains(std::span<const Integer> x) const;
  bool contains(const IdealLattice& o) const;
  // Closed under multiplication by every integral basis element.
  bool is_ideal() const;

  IdealLattice operator*(const IdealLattice& o) const;
  IdealLattice operator+(const IdealLattice& o) const;
  IdealLattice pow(unsigned e) const;

  bool operator==(const IdealLattice& o) const { return hnf_ == o.hnf_; }

 private:
  IdealLattice(FieldPtr k, IntMatrix h);
  FieldPtr field_;
  IntMatrix hnf_;
  Integer index_;
};

// max k with n inside P^k.
unsigned ideal_valuation(const IdealLattice& n, const IdealLattice& prime,
                         unsigned inertia_degree);

}  // namespace nfc
