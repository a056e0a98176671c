#include "doctest.h"

#include <random>

#include "nfcount/polynomial.hpp"
#include "nfcount/roots.hpp"

using namespace nfc;

namespace {

bool near(const RootBall& b, double re, double im, double tol = 1e-12) {
  return std::abs(b.center.re.mid() - re) < tol && std::abs(b.center.im.mid() - im) < tol;
}

}  // namespace

TEST_CASE("root isolation examples") {
  auto r = isolate_roots(parse_polynomial("x^2+1"), 128);
  REQUIRE(r.size() == 2);
  CHECK(near(r[0], 0, 1));
  CHECK(near(r[1], 0, -1));
  CHECK_FALSE(r[0].real);

  auto c = isolate_roots(parse_polynomial("x^3-2"), 128);
  REQUIRE(c.size() == 3);
  CHECK(c[0].real);
  CHECK(near(c[0], 1.2599210498948732, 0));
  CHECK(near(c[1], -0.6299605249474366, 1.0911236359717214));
  CHECK(near(c[2], -0.6299605249474366, -1.0911236359717214));

  auto s = isolate_roots(parse_polynomial("x^2-2"), 128);
  CHECK(near(s[0], 1.4142135623730951, 0));
  CHECK(near(s[1], -1.4142135623730951, 0));
  CHECK(count_real_roots(parse_polynomial("x^2-2")) == 2);
  CHECK(count_real_roots(parse_polynomial("x^3-2")) == 1);
  CHECK(count_real_roots(cyclotomic_polynomial(7)) == 0);
}

TEST_CASE("radius bound, conjugate symmetry, refinement nesting") {
  for (const char* txt : {"x^3-2", "x^4-x^2+1", "x^6+x^5+x^4+x^3+x^2+x+1", "x^3-97",
                          "x^5-x-1"}) {
    auto f = parse_polynomial(txt);
    auto r = isolate_roots(f, 128);
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(mpfr_get_exp(r[i].radius.hi()) <= -64);
      if (r[i].real) CHECK(mpfr_zero_p(r[i].center.im.lo()));
    }
    auto fine = refine_roots(f, r, 256);
    REQUIRE(fine.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(r[i].box().re.contains(fine[i].box().re));
      CHECK(r[i].box().im.contains(fine[i].box().im));
      CHECK(fine[i].real == r[i].real);
    }
  }
}

TEST_CASE("Vieta: product of roots encloses (-1)^d f(0)") {
  for (const char* txt : {"x^3-2", "x^4+1", "x^3-5", "x^2-7"}) {
    auto f = parse_polynomial(txt);
    auto r = isolate_roots(f, 128);
    ComplexInterval prod{Interval(1L, 160), Interval(160)};
    for (auto& b : r) prod = prod * b.box();
    Integer expect = f.degree() % 2 == 0 ? f.coeff(0) : Integer(-f.coeff(0));
    CHECK(prod.re.contains(Rational(expect)));
    CHECK(prod.im.contains(Rational(0)));
  }
}

TEST_CASE("discriminant agrees with the product formula over root balls") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> co(-9, 9);
  int done = 0;
  while (done < 50) {
    const int d = 3 + done % 2;
    std::vector<Integer> c(d + 1);
    for (int i = 0; i < d; ++i) c[i] = co(rng);
    c[d] = 1;
    IntPolynomial f(c);
    const Integer disc = discriminant(f);
    if (disc == 0) continue;
    ++done;
    auto r = isolate_roots(f, 128);
    ComplexInterval prod{Interval(1L, 128), Interval(128)};
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        auto diff = r[i].box() - r[j].box();
        prod = prod * diff * diff;
      }
    CHECK(prod.re.contains(Rational(disc)));
    CHECK(prod.im.contains(Rational(0)));
  }
}
