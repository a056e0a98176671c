#include "doctest.h"

#include <random>

#include "nfcount/error.hpp"
#include "nfcount/fp_poly.hpp"
#include "nfcount/linalg.hpp"
#include "nfcount/polynomial.hpp"

using namespace nfc;

namespace {

// Laplace expansion along the first row; independent of the elimination code.
Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Integer t = m(0, j) * cofactor_det(minor);
    total += (j % 2 == 0) ? t : Integer(-t);
  }
  return total;
}

// Upper-triangular column HNF: the pivot of a column is its lowest nonzero
// entry, pivot rows increase, later columns reduced into [0, pivot).
bool is_column_hnf(const IntMatrix& h) {
  std::size_t last = 0;
  bool first = true;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    std::size_t piv = h.rows();
    for (std::size_t i = h.rows(); i-- > 0;)
      if (h(i, j) != 0) { piv = i; break; }
    if (piv == h.rows() || h(piv, j) <= 0) return false;
    if (!first && piv <= last) return false;
    first = false;
    last = piv;
    for (std::size_t k = j + 1; k < h.cols(); ++k)
      if (h(piv, k) < 0 || h(piv, k) >= h(piv, j)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("hnf examples") {
  auto id = hnf(IntMatrix::identity(2));
  CHECK(id.basis == IntMatrix::identity(2));
  CHECK(id.rank == 2);
  CHECK(id.det_abs == Integer(1));

  auto two = hnf(IntMatrix{{2, 0}, {1, 1}});
  CHECK(two.rank == 2);
  REQUIRE(two.det_abs);
  CHECK(*two.det_abs == cofactor_det(IntMatrix{{2, 0}, {1, 1}}));
  CHECK(is_column_hnf(two.basis));

  auto prop = hnf(IntMatrix{{1, 2}, {2, 4}});
  CHECK(prop.rank == 1);
  CHECK_FALSE(prop.det_abs);
}

TEST_CASE("hnf: random determinants against cofactor expansion, idempotence") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> ent(-50, 50);
  int nonsingular = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = ent(rng);
    const Integer oracle = abs(cofactor_det(m));
    auto h = hnf(m);
    if (oracle == 0) {
      CHECK(h.rank < n);
      continue;
    }
    ++nonsingular;
    REQUIRE(h.det_abs);
    CHECK(*h.det_abs == oracle);
    CHECK(determinant(m) * determinant(m) == oracle * oracle);
    CHECK(is_column_hnf(h.basis));
    CHECK(hnf(h.basis).basis == h.basis);
    // Every original column lies in the HNF lattice and vice versa.
    for (std::size_t j = 0; j < n; ++j) {
      auto col = m.column(j);
      CHECK(solve_integral(h.basis, col));
      auto hc = h.basis.column(j);
      CHECK(solve_integral(m, hc));
    }
  }
  CHECK(nonsingular > 150);
}

TEST_CASE("hnf of wide rank-deficient generator sets") {
  IntMatrix m{{2, 4, 6, 0}, {0, 0, 0, 0}, {1, 2, 3, 5}};
  auto h = hnf(m);
  CHECK(h.rank == 2);
  CHECK(is_column_hnf(h.basis));
  CHECK(hnf(h.basis).basis == h.basis);
}

TEST_CASE("discriminants") {
  CHECK(discriminant(parse_polynomial("x^2+1")) == -4);
  CHECK(discriminant(parse_polynomial("x^3-2")) == -108);
  CHECK(discriminant(parse_polynomial("x-1")) == 1);
  CHECK(discriminant(cyclotomic_polynomial(5)) == 125);
  CHECK(discriminant(parse_polynomial("x^2-5")) == 20);
  CHECK_THROWS_AS(discriminant(IntPolynomial()), InputError);
  // b^2 - 4ac and -4p^3 - 27q^2
  for (int b = -4; b <= 4; ++b)
    for (int c = -4; c <= 4; ++c) {
      CHECK(discriminant(IntPolynomial({c, b, 1})) == b * b - 4 * c);
      CHECK(discriminant(IntPolynomial({c, b, 0, 1})) == -4 * b * b * b - 27 * c * c);
    }
}

TEST_CASE("solve_integral") {
  IntMatrix two = IntMatrix{{2, 0}, {0, 2}};
  std::vector<Integer> v1{2, 4}, v2{1, 0}, v3{2, 2};
  auto x = solve_integral(two, v1);
  REQUIRE(x);
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 2);
  CHECK_FALSE(solve_integral(two, v2));
  IntMatrix m{{1, 1}, {0, 2}};
  auto y = solve_integral(m, v3);
  REQUIRE(y);
  CHECK(m * std::span<const Integer>(*y) == v3);
  CHECK(*y == std::vector<Integer>{1, 1});
  CHECK_THROWS_AS(solve_integral(IntMatrix{{1, 2}, {2, 4}}, v3), InputError);
}

TEST_CASE("charpoly and polynomial parsing") {
  RatMatrix m{{0, -1}, {1, 0}};
  auto cp = charpoly(m);
  CHECK(cp == RatVector{1, 0, 1});
  CHECK(to_string(parse_polynomial("x^3 - 2")) == "x^3 - 2");
  CHECK(parse_polynomial("1,0,1") == parse_polynomial("x^2+1"));
  CHECK(cyclotomic_polynomial(12) == parse_polynomial("x^4-x^2+1"));
  CHECK_THROWS_AS(parse_polynomial("x^^2"), InputError);
}

TEST_CASE("factorization over F_p") {
  fp::Field f5(5), f2(2), f3(3);
  auto g = parse_polynomial("x^2+1");
  auto fac5 = f5.factor(f5.reduce(g));
  REQUIRE(fac5.size() == 2);
  CHECK(fac5[0].second == 1);
  auto fac2 = f2.factor(f2.reduce(g));
  REQUIRE(fac2.size() == 1);
  CHECK(fac2[0].second == 2);
  CHECK(f3.is_irreducible(f3.reduce(g)));
  // x^8 - x over F_2 is the product of all irreducibles of degree 1 and 3.
  auto fac = f2.factor(f2.reduce(parse_polynomial("x^8-x")));
  CHECK(fac.size() == 4);
  // A product recovers the input for random polynomials.
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {2ULL, 3ULL, 7ULL, 101ULL}) {
    fp::Field F(p);
    for (int t = 0; t < 20; ++t) {
      fp::Poly a;
      for (int i = 0; i < 7; ++i) a.c.push_back(rng() % p);
      a.c.push_back(1);
      fp::Poly prod{{1}};
      for (auto& [q, e] : F.factor(a)) {
        CHECK(F.is_irreducible(q));
        for (unsigned k = 0; k < e; ++k) prod = F.mul(prod, q);
      }
      CHECK(prod == a);
    }
  }
}
