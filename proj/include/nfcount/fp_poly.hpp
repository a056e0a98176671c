#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nfcount/polynomial.hpp"

namespace nfc::fp {

// Polynomial over F_p, p < 2^62 prime; ascending coefficients, trimmed.
struct Poly {
  std::vector<std::uint64_t> c;

  long degree() const { return static_cast<long>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool operator==(const Poly&) const = default;
  auto operator<=>(const Poly& o) const {
    if (c.size() != o.c.size()) return c.size() <=> o.c.size();
    for (std::size_t i = c.size(); i-- > 0;)
      if (c[i] != o.c[i]) return c[i] <=> o.c[i];
    return std::strong_ordering::equal;
  }
};

class Field {
 public:
  explicit Field(std::uint64_t p);
  std::uint64_t modulus() const { return p_; }

  Poly reduce(const IntPolynomial& f) const;
  IntPolynomial lift(const Poly& f) const;  // coefficients in [0, p)

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, std::uint64_t s) const;
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly rem(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
  Poly gcd(Poly a, Poly b) const;  // monic or zero
  Poly monic(const Poly& a) const;
  Poly derivative(const Poly& a) const;
  Poly powmod(Poly base, std::uint64_t e, const Poly& m) const;
  Poly powmod_big(const Poly& base, const Integer& e, const Poly& m) const;

  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;

  // Monic irreducible factors with multiplicities, sorted by (degree, coeffs).
  std::vector<std::pair<Poly, unsigned>> factor(const Poly& f) const;

  bool is_irreducible(const Poly& f) const;

 private:
  void trim(Poly& a) const;
  std::vector<std::pair<Poly, unsigned>> squarefree(const Poly& f) const;
  std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& f) const;
  void equal_degree(const Poly& f, unsigned deg, std::vector<Poly>& out,
                    std::uint64_t& seed) const;
  std::uint64_t p_;
};

}  // namespace nfc::fp
