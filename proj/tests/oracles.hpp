#pragma once

// Independent reference computations used by the unit tests and the
// acceptance binary.  Nothing here goes through the enumeration code.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nfcount/minkowski.hpp"

namespace oracle {

using namespace nfc;

// Sign of c + e sqrt(m) for rational c, e and a non-square integer m > 0.
inline int sign_quadratic(const Rational& c, const Rational& e, const Integer& m) {
  const int sc = sgn(c), se = sgn(e);
  if (se == 0) return sc;
  if (sc == 0 || sc == se) return se;
  const Rational lhs = c * c, rhs = e * e * Rational(m);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sc : se;
}

// |sigma(x)| <= b decided exactly for x^2 - m, and with 1024-bit intervals
// for x^3 - m (ties there force x rational, handled exactly).
inline bool inside(const NumberField& k, const EmbeddingSet& emb, const RatVector& pc,
                   std::size_t s, const Rational& b) {
  const std::size_t d = k.degree();
  const Integer m = -k.poly().coeff(0);
  bool rational = true;
  for (std::size_t i = 1; i < d; ++i) rational = rational && pc[i] == 0;
  if (rational) return abs(pc[0]) <= b;
  if (d == 2) {
    if (m < 0) return pc[0] * pc[0] - Rational(m) * pc[1] * pc[1] <= b * b;
    // sigma_0 = +sqrt m in the descending root order.
    const Rational e = s == 0 ? pc[1] : Rational(-pc[1]);
    return sign_quadratic(pc[0] - b, e, m) <= 0 && sign_quadratic(pc[0] + b, e, m) >= 0;
  }
  if (d != 3 || k.poly().coeff(1) != 0 || k.poly().coeff(2) != 0)
    throw std::logic_error("oracle handles x^2 - m and x^3 - m only");
  const mpfr_prec_t prec = 1024;
  Interval t(m, prec);
  mpfr_t lo, hi;
  mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_cbrt(lo, t.lo(), MPFR_RNDD);
  mpfr_cbrt(hi, t.hi(), MPFR_RNDU);
  Interval cr(lo, hi, prec);
  mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
  ComplexInterval theta{cr, Interval(prec)};
  if (!emb.roots[s].real) {
    // theta * (-1 +- i sqrt 3) / 2, sign from the embedding.
    Interval half(Rational(1, 2), prec);
    Interval s3 = sqrt(Interval(3L, prec)) * half;
    if (emb.roots[s].center.im.negative()) s3 = -s3;
    theta = theta * ComplexInterval{-half, s3};
  }
  ComplexInterval z{Interval(pc[0], prec), Interval(prec)};
  z = z + theta * Interval(pc[1], prec) + theta * theta * Interval(pc[2], prec);
  const int c = z.abs2().compare(b * b);
  if (c == 0) throw std::logic_error("oracle: undecided comparison");
  return c < 0;
}

// All x in n with |sigma(x)| <= B_sigma, by scanning integer coordinates in a
// box derived from the inverse of the realified embedding matrix.
inline std::vector<IntVector> brute_force_box(const IdealLattice& n, const BoxBody& box) {
  const NumberField& k = *n.field();
  const std::size_t d = k.degree();
  auto emb = k.embeddings(128);
  // Realified rows: sigma real -> sigma(b_j); pair -> Re, Im.
  std::vector<std::vector<double>> a(d, std::vector<double>(2 * d, 0));
  std::vector<double> rbound(d);
  std::size_t row = 0;
  for (std::size_t s = 0; s < d; ++s) {
    if (!emb->roots[s].real && emb->conj[s] < s) continue;
    for (std::size_t j = 0; j < d; ++j) {
      a[row][j] = emb->values(s, j).re.mid();
      if (!emb->roots[s].real) a[row + 1][j] = emb->values(s, j).im.mid();
    }
    rbound[row] = box.radii[s].get_d();
    if (!emb->roots[s].real) rbound[++row] = box.radii[s].get_d();
    ++row;
  }
  for (std::size_t i = 0; i < d; ++i) a[i][d + i] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    std::swap(a[p], a[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = 0; j < 2 * d; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<long> lim(d);
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < d; ++j) s += std::fabs(a[i][d + j] / a[i][i]) * rbound[j];
    lim[i] = static_cast<long>(std::ceil(s * 1.01)) + 1;
  }
  std::vector<IntVector> out;
  IntVector x(d);
  std::vector<long> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = -lim[i];
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) x[i] = c[i];
    if (n.contains(x)) {
      RatVector q = to_rational(x);
      RatVector pc = k.to_power_basis(q);
      bool ok = true;
      for (std::size_t s = 0; s < d && ok; ++s) ok = inside(k, *emb, pc, s, box.radii[s]);
      if (ok) out.push_back(x);
    }
    std::size_t i = 0;
    while (i < d && c[i] == lim[i]) {
      c[i] = -lim[i];
      ++i;
    }
    if (i == d) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
