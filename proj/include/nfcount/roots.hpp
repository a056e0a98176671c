#pragma once

#include <vector>

#include "nfcount/interval.hpp"
#include "nfcount/polynomial.hpp"

namespace nfc {

// Certified disk {|z - center| <= radius} containing exactly one root.
struct RootBall {
  ComplexInterval center;  // point intervals
  Interval radius;         // upper bound in radius.hi()
  bool real = false;

  ComplexInterval box() const { return center.widen(radius); }
};

// Number of distinct real roots (Sturm sequence over Q).
unsigned count_real_roots(const IntPolynomial& f);

// Isolates all roots of a monic squarefree f.  Real roots get real centers,
// non-real roots come in exactly conjugate pairs.  The radius of every ball
// is at most 2^{-prec/2}; the working precision escalates up to `ceiling`
// before CertificationError is thrown.
//
// Order: descending real part; roots whose real-part projections overlap
// are ordered by descending imaginary part.
std::vector<RootBall> isolate_roots(const IntPolynomial& f, mpfr_prec_t prec,
                                    mpfr_prec_t ceiling = 8192);

// Same roots, same order, at higher precision.
std::vector<RootBall> refine_roots(const IntPolynomial& f,
                                   const std::vector<RootBall>& roots,
                                   mpfr_prec_t prec, mpfr_prec_t ceiling = 8192);

// Smith's inclusion radii d |f(z_i) / prod_{j != i} (z_i - z_j)|; returns
// false if the disks are not pairwise disjoint (or a non-real disk meets
// the real axis).
bool certify_disks(const IntPolynomial& f, std::vector<RootBall>& roots);

}  // namespace nfc
