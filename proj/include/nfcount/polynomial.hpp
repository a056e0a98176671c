#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nfcount/bigint.hpp"

namespace nfc {

// Dense univariate polynomial, coefficients in ascending degree order.  The
// coefficient vector never carries trailing zeros; the zero polynomial is
// the empty vector.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  static Polynomial monomial(const T& coeff, std::size_t deg) {
    std::vector<T> c(deg + 1);
    c[deg] = coeff;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const T& lead() const { return c_.back(); }
  bool monic() const { return !c_.empty() && c_.back() == 1; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const std::vector<T>& coeffs() const { return c_; }

  template <class U>
  U eval(const U& x) const {
    U acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + U(c_[i]);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * T(i));
    return Polynomial(std::move(d));
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return Polynomial(std::move(r));
  }
  Polynomial operator-(const Polynomial& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return Polynomial(std::move(r));
  }
  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<T> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(r));
  }
  Polynomial operator*(const T& s) const {
    std::vector<T> r = c_;
    for (auto& e : r) e *= s;
    return Polynomial(std::move(r));
  }

  // Division by a monic divisor; exact over any coefficient ring.
  std::pair<Polynomial, Polynomial> divmod_monic(const Polynomial& m) const {
    std::vector<T> r = c_;
    const std::size_t dm = m.c_.size() - 1;
    if (r.size() <= dm) return {Polynomial(), *this};
    std::vector<T> q(r.size() - dm);
    for (std::size_t i = r.size(); i-- > dm;) {
      T t = r[i];
      q[i - dm] = t;
      if (t == 0) continue;
      for (std::size_t j = 0; j <= dm; ++j) r[i - dm + j] -= t * m.c_[j];
    }
    r.resize(dm);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

Integer resultant(const IntPolynomial& a, const IntPolynomial& b);

// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f).
Integer discriminant(const IntPolynomial& f);

// Accepts "x^3 - 2", "x^2+x+1", "2*x - 1", or a comma list of ascending
// coefficients "1,0,1".
IntPolynomial parse_polynomial(const std::string& text);
std::string to_string(const IntPolynomial& f);

IntPolynomial cyclotomic_polynomial(unsigned n);

}  // namespace nfc
