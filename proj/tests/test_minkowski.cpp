#include "doctest.h"

#include <random>

#include "nfcount/error.hpp"
#include "nfcount/minkowski.hpp"
#include "nfcount/ramification.hpp"
#include "oracles.hpp"

using namespace nfc;

namespace {

RatMatrix half_basis() {
  RatMatrix b(2, 2);
  b(0, 0) = 1;
  b(0, 1) = Rational(1, 2);
  b(1, 1) = Rational(1, 2);
  return b;
}

std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool encloses_sqrt(const Interval& x, long n) {
  Interval s = sqrt(Interval(n, 256));
  return x.overlaps(s) && x.width() < 1e-30;
}

}  // namespace

TEST_CASE("box_volume examples") {
  auto s2 = build_field(parse_polynomial("x^2-2"));
  auto v = box_volume(s2, BoxBody::uniform(2, 1));
  CHECK(v.coeff == 4);
  CHECK(v.pi_power == 0);
  auto gi = build_field(parse_polynomial("x^2+1"));
  auto w = box_volume(gi, BoxBody::uniform(2, Rational(3, 2)));
  CHECK(w.coeff == Rational(9, 2));
  CHECK(w.pi_power == 1);
  auto u = box_volume(gi, BoxBody::uniform(2, 1));
  CHECK(u.coeff == 2);
  CHECK(u.pi_power == 1);
  CHECK_THROWS_AS(box_volume(gi, BoxBody{{Rational(1), Rational(2)}}), InputError);
  CHECK_THROWS_AS(box_volume(gi, BoxBody{{Rational(0), Rational(0)}}), InputError);
}

TEST_CASE("count_box examples in Z[i]") {
  auto gi = make_field(parse_polynomial("x^2+1"));
  auto o = IdealLattice::unit(gi);
  auto c = count_box(o, BoxBody::uniform(2, Rational(3, 2)));
  CHECK(c.count == 9);
  CHECK(c.rank == 2);
  std::vector<IntVector> expect;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) expect.push_back({a, b});
  CHECK(c.points == sorted(expect));

  auto z = count_box(o, BoxBody::uniform(2, Rational(1, 2)));
  CHECK(z.count == 1);
  CHECK(z.rank == 0);
  CHECK(z.points == std::vector<IntVector>{{0, 0}});

  auto one = count_box(o, BoxBody::uniform(2, 1));
  CHECK(one.count == 5);
  CHECK(one.rank == 2);
  CHECK(one.points == sorted({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}));
  CHECK(one.exact_ties == 4);
}

TEST_CASE("boundary ties are decided exactly and included") {
  auto k = make_field(parse_polynomial("x^2+2"));
  auto o = IdealLattice::unit(k);
  auto c = count_box(o, BoxBody::uniform(2, Rational(3)));
  // a^2 + 2 b^2 <= 9 -> includes (1, 2) and (3, 0) on the boundary.
  CHECK(std::find(c.points.begin(), c.points.end(), IntVector{1, 2}) != c.points.end());
  CHECK(std::find(c.points.begin(), c.points.end(), IntVector{3, 0}) != c.points.end());
  CHECK(c.points == oracle::brute_force_box(o, BoxBody::uniform(2, 3)));
  // Roots of unity sit exactly on |z| = 1 at every embedding.
  auto z8 = make_field(cyclotomic_polynomial(8));
  auto c8 = count_box(IdealLattice::unit(z8), BoxBody::uniform(4, 1));
  CHECK(c8.count == 9);  // 0 and the 8 roots of unity
  CHECK(c8.rank == 4);
}

TEST_CASE("successive_minima examples") {
  auto gi = make_field(parse_polynomial("x^2+1"));
  auto m = successive_minima(IdealLattice::unit(gi));
  REQUIRE(m.lambdas.size() == 2);
  CHECK(encloses_sqrt(m.lambdas[0], 2));
  CHECK(encloses_sqrt(m.lambdas[1], 2));
  CHECK(m.witnesses[0] == IntVector{1, 0});
  CHECK(m.witnesses[1] == IntVector{0, 1});

  auto s2 = make_field(parse_polynomial("x^2-2"));
  auto ms = successive_minima(IdealLattice::unit(s2));
  CHECK(encloses_sqrt(ms.lambdas[0], 2));
  CHECK(encloses_sqrt(ms.lambdas[1], 4));
  CHECK(ms.witnesses[0] == IntVector{1, 0});
  CHECK(ms.witnesses[1] == IntVector{0, 1});

  auto n = IdealLattice::from_generators(gi, {{1, 1}});
  auto mn = successive_minima(n);
  CHECK(encloses_sqrt(mn.lambdas[0], 4));
  CHECK(encloses_sqrt(mn.lambdas[1], 4));
  CHECK(mn.witnesses[0] == IntVector{1, 1});
  CHECK(mn.witnesses[1] == IntVector{1, -1});
}

TEST_CASE("gram_check examples") {
  auto gi = make_field(parse_polynomial("x^2+1"));
  auto el = embed_lattice(IdealLattice::unit(gi));
  CHECK(el.gram(0, 0).contains(Rational(2)));
  CHECK(el.gram(0, 1).contains(Rational(0)));
  CHECK(el.gram(1, 1).contains(Rational(2)));
  auto g = gram_check(IdealLattice::unit(gi));
  CHECK(g.pass);
  CHECK(g.expected == 4);
  auto s2 = make_field(parse_polynomial("x^2-2"));
  auto el2 = embed_lattice(IdealLattice::unit(s2));
  CHECK(el2.gram(1, 1).contains(Rational(4)));
  CHECK(gram_check(IdealLattice::unit(s2)).expected == 8);
  auto gn = gram_check(IdealLattice::from_generators(gi, {{1, 1}}));
  CHECK(gn.expected == 16);
  CHECK(gn.pass);
  CHECK(gn.relative_width < 1e-20);
}

TEST_CASE("count_box: symmetry, origin, odd count, monotonicity") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(1, 12);
  for (const char* t : {"x^2+1", "x^2-3", "x^3-2", "x^4-x^2+1"}) {
    auto k = make_field(parse_polynomial(t));
    LatticeGeometry g(IdealLattice::unit(k));
    const auto& emb = g.embeddings();
    for (int trial = 0; trial < 20; ++trial) {
      BoxBody box{std::vector<Rational>(k->degree())};
      for (std::size_t s = 0; s < k->degree(); ++s)
        if (emb.conj[s] >= s) box.radii[s] = box.radii[emb.conj[s]] = Rational(num(rng), 2);
      auto c = g.count_box(box);
      CHECK(c.count % 2 == 1);
      CHECK(std::binary_search(c.points.begin(), c.points.end(), IntVector(k->degree())));
      for (auto& p : c.points) {
        IntVector neg = p;
        for (auto& v : neg) v = -v;
        CHECK(std::binary_search(c.points.begin(), c.points.end(), neg));
      }
      BoxBody bigger = box;
      const std::size_t s = trial % k->degree();
      bigger.radii[s] += Rational(1, 3);
      bigger.radii[emb.conj[s]] = bigger.radii[s];
      auto cb = g.count_box(bigger);
      CHECK(cb.count >= c.count);
      CHECK(cb.rank >= c.rank);
      CHECK(std::includes(cb.points.begin(), cb.points.end(), c.points.begin(),
                          c.points.end()));
    }
  }
}

TEST_CASE("count_box agrees with the brute-force oracle (d <= 3)") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(1, 16);
  std::vector<FieldPtr> fields;
  for (const char* t : {"x^2+1", "x^2-2", "x^2+6", "x^2-10", "x^3-2", "x^3-7"})
    fields.push_back(make_field(parse_polynomial(t)));
  fields.push_back(make_field(parse_polynomial("x^2-5"), half_basis()));
  fields.push_back(make_field(parse_polynomial("x^2+3"), half_basis()));
  for (auto& k : fields) {
    PrimeTable table(k, true);
    auto ideals = ideals_up_to(table, 6);
    for (int trial = 0; trial < 12; ++trial) {
      const auto& n = ideals[trial % ideals.size()];
      LatticeGeometry g(n);
      const auto& emb = g.embeddings();
      BoxBody box{std::vector<Rational>(k->degree())};
      for (std::size_t s = 0; s < k->degree(); ++s)
        if (emb.conj[s] >= s) box.radii[s] = box.radii[emb.conj[s]] = Rational(num(rng), 4);
      CHECK(g.count_box(box).points == oracle::brute_force_box(n, box));
    }
  }
}

TEST_CASE("Minkowski's second theorem on small ideals") {
  for (const char* t : {"x^2+1", "x^2-2", "x^3-2", "x^4+1"}) {
    auto k = make_field(parse_polynomial(t));
    PrimeTable table(k);
    const unsigned d = k->degree();
    const mpfr_prec_t prec = 256;
    Volume vd = unit_ball_volume(d);
    for (const auto& n : ideals_up_to(table, 20)) {
      auto m = successive_minima(n);
      Interval prod(1L, prec);
      for (auto& l : m.lambdas) prod = prod * l;
      Interval lhs = prod * vd.enclosure(prec);
      Interval covol = sqrt(Interval(Integer(abs(k->discriminant())), prec)) * Interval(n.index(), prec);
      Interval upper = Interval(ipow(Integer(2), d), prec) * covol;
      Interval lower = upper / Interval(factorial(d), prec);
      CHECK(lower.less_than(lhs));
      CHECK_FALSE(upper.less_than(lhs));
      CHECK(gram_check(n).pass);
    }
  }
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1).coeff == 2);
  CHECK(unit_ball_volume(2).coeff == 1);
  CHECK(unit_ball_volume(3).coeff == Rational(4, 3));
  CHECK(unit_ball_volume(3).pi_power == 1);
  CHECK(unit_ball_volume(4).coeff == Rational(1, 2));
  CHECK(unit_ball_volume(6).coeff == Rational(1, 6));
}
