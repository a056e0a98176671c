#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "nfcount/bigint.hpp"

namespace nfc {

// Closed real interval [lo, hi] with MPFR endpoints.  Every operation
// rounds outward, so the result always encloses the exact value.  Binary
// operations work at the larger of the operand precisions.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(long v, mpfr_prec_t prec);
  Interval(const Integer& v, mpfr_prec_t prec);
  Interval(const Rational& v, mpfr_prec_t prec);
  Interval(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec);
  static Interval from_double(double v, mpfr_prec_t prec);

  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  friend Interval sqr(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval abs(const Interval& a);
  friend Interval pow(const Interval& a, unsigned long e);
  // Enclosures for cos / sin valid for any (narrow) argument interval.
  friend Interval cos(const Interval& a);
  friend Interval sin(const Interval& a);

  static Interval pi(mpfr_prec_t prec);
  // Smallest interval containing both.
  static Interval join(const Interval& a, const Interval& b);

  // [lo - r, hi + r] for r >= 0 given as the upper end of `r`.
  Interval widen(const Interval& r) const;

  bool contains_zero() const;
  bool contains(const Rational& q) const;
  bool contains(const Interval& o) const;
  bool positive() const;     // lo > 0
  bool negative() const;     // hi < 0
  bool less_than(const Interval& o) const;  // hi < o.lo
  bool overlaps(const Interval& o) const;
  int compare(const Rational& q) const;  // -1: all < q, 1: all > q, 0: undecided

  // The unique integer in the interval when it is narrower than one.
  std::optional<Integer> unique_integer() const;

  double mid() const;
  double width() const;
  // Relative width (hi - lo) / min |x| for intervals excluding zero.
  double relative_width() const;
  Interval midpoint() const;
  std::string str(int digits = 20) const;

 private:
  mpfr_t lo_, hi_;
};

struct ComplexInterval {
  Interval re;
  Interval im;

  ComplexInterval() = default;
  explicit ComplexInterval(mpfr_prec_t prec) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }

  friend ComplexInterval operator+(const ComplexInterval& a,
                                   const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexInterval operator-(const ComplexInterval& a,
                                   const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexInterval operator*(const ComplexInterval& a,
                                   const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const Interval& s) {
    return {a.re * s, a.im * s};
  }
  friend ComplexInterval operator/(const ComplexInterval& a,
                                   const ComplexInterval& b);
  ComplexInterval operator-() const { return {-re, -im}; }
  ComplexInterval& operator+=(const ComplexInterval& o) {
    return *this = *this + o;
  }
  ComplexInterval& operator*=(const ComplexInterval& o) {
    return *this = *this * o;
  }

  ComplexInterval conj() const { return {re, -im}; }
  Interval abs2() const { return sqr(re) + sqr(im); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool overlaps(const ComplexInterval& o) const {
    return re.overlaps(o.re) && im.overlaps(o.im);
  }
  // Square of the box around the center with side 2r.
  ComplexInterval widen(const Interval& r) const {
    return {re.widen(r), im.widen(r)};
  }
};

ComplexInterval pow(const ComplexInterval& z, unsigned long e);

}  // namespace nfc
