#include "nfcount/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "nfcount/error.hpp"

namespace nfc {

namespace {

mpfr_prec_t max_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

// Scratch value initialised at a given precision.
struct Tmp {
  mpfr_t v;
  explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

}  // namespace

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long v, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Integer& v, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_z(lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, v.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& v, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_q(lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, v.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set(lo_, lo, MPFR_RNDD);
  mpfr_set(hi_, hi, MPFR_RNDU);
}

Interval Interval::from_double(double v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.precision());
  mpfr_init2(hi_, o.precision());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this == &o) return *this;
  mpfr_set_prec(lo_, o.precision());
  mpfr_set_prec(hi_, o.precision());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  const bool a_nonneg = mpfr_sgn(a.lo_) >= 0, a_nonpos = mpfr_sgn(a.hi_) <= 0;
  const bool b_nonneg = mpfr_sgn(b.lo_) >= 0, b_nonpos = mpfr_sgn(b.hi_) <= 0;
  auto set = [&](mpfr_srcptr l1, mpfr_srcptr l2, mpfr_srcptr h1,
                 mpfr_srcptr h2) {
    mpfr_mul(r.lo_, l1, l2, MPFR_RNDD);
    mpfr_mul(r.hi_, h1, h2, MPFR_RNDU);
  };
  if (a_nonneg) {
    if (b_nonneg)
      set(a.lo_, b.lo_, a.hi_, b.hi_);
    else if (b_nonpos)
      set(a.hi_, b.lo_, a.lo_, b.hi_);
    else
      set(a.hi_, b.lo_, a.hi_, b.hi_);
  } else if (a_nonpos) {
    if (b_nonneg)
      set(a.lo_, b.hi_, a.hi_, b.lo_);
    else if (b_nonpos)
      set(a.hi_, b.hi_, a.lo_, b.lo_);
    else
      set(a.lo_, b.hi_, a.lo_, b.lo_);
  } else {
    if (b_nonneg) {
      set(a.lo_, b.hi_, a.hi_, b.hi_);
    } else if (b_nonpos) {
      set(a.hi_, b.lo_, a.lo_, b.lo_);
    } else {
      Tmp t(r.precision());
      mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
      mpfr_mul(t.v, a.hi_, b.lo_, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
      mpfr_mul(t.v, a.hi_, b.hi_, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw CertificationError("interval division by zero");
  Interval inv(max_prec(a, b));
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval sqr(const Interval& a) {
  Interval r(a.precision());
  if (mpfr_sgn(a.lo_) >= 0) {
    mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  } else if (mpfr_sgn(a.hi_) <= 0) {
    mpfr_sqr(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 1);
    Tmp t(a.precision());
    mpfr_sqr(r.hi_, a.lo_, MPFR_RNDU);
    mpfr_sqr(t.v, a.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
  }
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.hi_) < 0) throw CertificationError("sqrt of negative interval");
  Interval r(a.precision());
  if (mpfr_sgn(a.lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Interval r(a.precision());
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& a, unsigned long e) {
  Interval r(1L, a.precision());
  Interval b = a;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b = sqr(b);
  }
  return r;
}

Interval cos(const Interval& a) {
  // |cos x - cos a.lo| <= x - a.lo <= a.hi - a.lo.
  Interval r(a.precision());
  mpfr_cos(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_cos(r.hi_, a.lo_, MPFR_RNDU);
  Tmp w(a.precision());
  mpfr_sub(w.v, a.hi_, a.lo_, MPFR_RNDU);
  mpfr_sub(r.lo_, r.lo_, w.v, MPFR_RNDD);
  mpfr_add(r.hi_, r.hi_, w.v, MPFR_RNDU);
  return r;
}

Interval sin(const Interval& a) {
  Interval r(a.precision());
  mpfr_sin(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sin(r.hi_, a.lo_, MPFR_RNDU);
  Tmp w(a.precision());
  mpfr_sub(w.v, a.hi_, a.lo_, MPFR_RNDU);
  mpfr_sub(r.lo_, r.lo_, w.v, MPFR_RNDD);
  mpfr_add(r.hi_, r.hi_, w.v, MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::join(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::widen(const Interval& r) const {
  Interval out(std::max(precision(), r.precision()));
  mpfr_sub(out.lo_, lo_, r.hi_, MPFR_RNDD);
  mpfr_add(out.hi_, hi_, r.hi_, MPFR_RNDU);
  return out;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
}

bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::less_than(const Interval& o) const {
  return mpfr_less_p(hi_, o.lo_);
}

bool Interval::overlaps(const Interval& o) const {
  return !less_than(o) && !o.less_than(*this);
}

int Interval::compare(const Rational& q) const {
  if (mpfr_cmp_q(hi_, q.get_mpq_t()) < 0) return -1;
  if (mpfr_cmp_q(lo_, q.get_mpq_t()) > 0) return 1;
  return 0;
}

std::optional<Integer> Interval::unique_integer() const {
  Tmp w(precision());
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  if (mpfr_cmp_ui(w.v, 1) >= 0) return std::nullopt;
  Integer c;
  mpfr_t ce;
  mpfr_init2(ce, precision());
  mpfr_ceil(ce, lo_);
  mpfr_get_z(c.get_mpz_t(), ce, MPFR_RNDN);
  const bool inside = mpfr_lessequal_p(ce, hi_);
  mpfr_clear(ce);
  if (!inside) return std::nullopt;
  return c;
}

double Interval::mid() const {
  Tmp t(precision() + 1);
  mpfr_add(t.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
  return mpfr_get_d(t.v, MPFR_RNDN);
}

double Interval::width() const {
  Tmp t(precision());
  mpfr_sub(t.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(t.v, MPFR_RNDU);
}

double Interval::relative_width() const {
  if (contains_zero()) return HUGE_VAL;
  Tmp w(precision()), m(precision());
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  if (mpfr_sgn(lo_) > 0)
    mpfr_set(m.v, lo_, MPFR_RNDD);
  else
    mpfr_neg(m.v, hi_, MPFR_RNDD);
  mpfr_div(w.v, w.v, m.v, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

Interval Interval::midpoint() const {
  Interval r(precision());
  Tmp t(precision() + 1);
  mpfr_add(t.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
  mpfr_set(r.lo_, t.v, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
  return r;
}

std::string Interval::str(int digits) const {
  Tmp t(precision() + 1);
  mpfr_add(t.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, t.v);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  Interval den = b.abs2();
  ComplexInterval num = a * b.conj();
  return {num.re / den, num.im / den};
}

ComplexInterval pow(const ComplexInterval& z, unsigned long e) {
  ComplexInterval r{Interval(1L, z.precision()), Interval(z.precision())};
  ComplexInterval b = z;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

}  // namespace nfc
