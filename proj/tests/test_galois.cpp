#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "nfcount/error.hpp"
#include "nfcount/galois.hpp"

using namespace nfc;

namespace {

using Subset = std::vector<std::size_t>;

// sigma_{g(i)}(theta) = sigma_i(theta)^a for one a and all i: g acts as
// zeta -> zeta^a.
bool acts_as_power(const NumberField& k, const Perm& g) {
  auto emb = k.embeddings(256);
  for (unsigned long a = 1; a < 64; ++a) {
    bool all = true;
    for (std::size_t i = 0; i < k.degree() && all; ++i)
      all = emb->roots[g[i]].box().overlaps(pow(emb->roots[i].box(), a));
    if (all) return true;
  }
  return false;
}

Perm random_perm(std::size_t d, std::mt19937_64& rng) {
  Perm p(d);
  for (std::size_t i = 0; i < d; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("complex conjugation on Q(i)") {
  auto k = build_field(parse_polynomial("x^2+1"));
  for (auto src : {GaloisSource{SymmetricSource{}}, GaloisSource{CyclotomicSource{4}},
                   GaloisSource{PureFieldSource{2, Integer(-1)}}}) {
    auto g = build_action(k, src);
    CHECK(g.order() == 2);
    CHECK(g.elements()[1] == Perm{1, 0});
    CHECK(g.certified());
    CHECK(g.is_two_homogeneous());
  }
  auto emb = k.embeddings(128);
  CHECK(emb->conj == std::vector<std::size_t>{1, 0});
}

TEST_CASE("cyclotomic actions are regular and act by powers") {
  for (unsigned n : {5u, 7u, 8u, 12u}) {
    auto k = build_field(cyclotomic_polynomial(n));
    auto g = build_action(k, CyclotomicSource{n});
    CHECK(g.order() == k.degree());
    CHECK(g.provenance() == GaloisProvenance::cyclotomic);
    for (const auto& e : g.elements()) {
      CHECK(acts_as_power(k, e));
      if (e != g.elements()[0])
        for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i] != i);
    }
  }
  auto k5 = build_field(cyclotomic_polynomial(5));
  auto c4 = build_action(k5, CyclotomicSource{5});
  CHECK_FALSE(c4.is_two_homogeneous());
  // cyclic: some element has order 4
  bool has4 = false;
  for (const auto& e : c4.elements()) {
    Perm p = e;
    int ord = 1;
    while (p != c4.elements()[0]) {
      p = compose(p, e);
      ++ord;
    }
    has4 = has4 || ord == 4;
  }
  CHECK(has4);
  CHECK_THROWS_AS(build_action(k5, CyclotomicSource{7}), InputError);
}

TEST_CASE("pure cubic: Aff(F_3) from matching and heuristic S_3") {
  auto k = build_field(parse_polynomial("x^3-2"));
  auto aff = build_action(k, PureFieldSource{3, Integer(2)});
  CHECK(aff.order() == 6);
  CHECK(aff.certified());
  CHECK(aff.is_two_homogeneous());
  auto sym = build_action(k, SymmetricSource{});
  CHECK(sym.order() == 6);
  CHECK(sym.provenance() == GaloisProvenance::heuristic_symmetric);
  CHECK_FALSE(sym.certified());
  CHECK(sym.sampled_patterns.size() == 20);
  CHECK(aff.elements() == sym.elements());
  CHECK_THROWS_AS(build_action(k, PureFieldSource{3, Integer(5)}), InputError);

  auto k5 = build_field(parse_polynomial("x^5-3"));
  auto g5 = build_action(k5, PureFieldSource{5, Integer(3)});
  CHECK(g5.order() == 20);
  CHECK(g5.is_two_homogeneous());
  // x^4+1 has only even Frobenius patterns: S_4 is rejected.
  auto z8 = build_field(cyclotomic_polynomial(8));
  CHECK_THROWS_AS(build_action(z8, SymmetricSource{}), InputError);
}

TEST_CASE("explicit permutations") {
  auto k = build_field(cyclotomic_polynomial(5));
  CHECK_THROWS_AS(build_action(k, ExplicitSource{{{2, 1, 4, 3}}}), InputError);
  CHECK_THROWS_AS(build_action(k, ExplicitSource{{{2, 2, 3, 4}}}), InputError);
  CHECK_THROWS_AS(build_action(k, ExplicitSource{{{2, 1, 3}}}), InputError);
  auto g = build_action(k, ExplicitSource{{{2, 3, 4, 1}}});
  CHECK(g.order() == 4);
  CHECK(g.provenance() == GaloisProvenance::user);
  auto s4 = GaloisAction(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}, GaloisProvenance::user);
  CHECK(s4.order() == 24);
  CHECK(s4.is_two_homogeneous());
  auto s7 = GaloisAction(7, {{1, 0, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5, 6, 0}},
                         GaloisProvenance::user);
  CHECK(s7.order() == 5040);
  CHECK_THROWS_AS(GaloisAction(8, {{1, 0, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6, 7, 0}},
                               GaloisProvenance::user),
                  InputError);
}

TEST_CASE("two-homogeneity examples") {
  CHECK(GaloisAction(3, {{1, 0, 2}, {1, 2, 0}}, GaloisProvenance::user).is_two_homogeneous());
  CHECK_FALSE(GaloisAction(4, {{1, 2, 3, 0}}, GaloisProvenance::user).is_two_homogeneous());
  CHECK(GaloisAction(2, {{1, 0}}, GaloisProvenance::user).is_two_homogeneous());
  // A_4 is 2-homogeneous, the dihedral group of order 8 is not.
  CHECK(GaloisAction(4, {{1, 2, 0, 3}, {0, 2, 3, 1}}, GaloisProvenance::user)
            .is_two_homogeneous());
  CHECK_FALSE(GaloisAction(4, {{1, 2, 3, 0}, {3, 2, 1, 0}}, GaloisProvenance::user)
                  .is_two_homogeneous());
}

TEST_CASE("subset orbit multiset examples") {
  GaloisAction c2(2, {{1, 0}}, GaloisProvenance::user);
  auto m = c2.subset_orbit_multiset({0});
  CHECK(m == decltype(m){{{0}, 1}, {{1}, 1}});
  GaloisAction s3(3, {{1, 0, 2}, {1, 2, 0}}, GaloisProvenance::user);
  auto p = s3.subset_orbit_multiset({0, 1});
  CHECK(p == decltype(p){{{0, 1}, 2}, {{0, 2}, 2}, {{1, 2}, 2}});
  auto full = s3.subset_orbit_multiset({2, 0, 1});
  CHECK(full == decltype(full){{{0, 1, 2}, 6}});
  CHECK_THROWS_AS(s3.subset_orbit_multiset({}), InputError);
  CHECK_THROWS_AS(s3.subset_orbit_multiset({1, 1}), InputError);
}

TEST_CASE("orbit counting properties on random transitive groups") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t d = 2 + trial % 5;
    // a d-cycle (conjugated at random) guarantees transitivity
    Perm base(d);
    for (std::size_t i = 0; i < d; ++i) base[i] = (i + 1) % d;
    Perm c = random_perm(d, rng), cinv(d);
    for (std::size_t i = 0; i < d; ++i) cinv[c[i]] = i;
    std::vector<Perm> gens{compose(c, compose(base, cinv))};
    if (trial % 3 != 0) gens.push_back(random_perm(d, rng));
    GaloisAction g(d, gens, GaloisProvenance::user);
    const std::size_t order = g.order();
    CHECK(order % d == 0);

    auto chain = g.stabilizer_chain();
    std::size_t prod = 1;
    for (auto s : chain) prod *= s;
    CHECK(prod == order);

    const bool two = g.is_two_homogeneous();
    if (two) CHECK(order % binom(d, 2) == 0);
    for (std::size_t m = 1; m <= d; ++m) {
      Perm shuffled = random_perm(d, rng);
      Subset s(shuffled.begin(), shuffled.begin() + m);
      auto ms = g.subset_orbit_multiset(s);
      std::size_t total = 0;
      for (auto& [t, mult] : ms) {
        CHECK(mult * ms.size() == order);
        total += mult;
      }
      CHECK(total == order);
      // Burnside: each sigma lies in |G| m / d of the translates.
      std::vector<std::size_t> hits(d, 0);
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_hits;
      for (auto& [t, mult] : ms) {
        for (auto v : t) hits[v] += mult;
        for (auto a : t)
          for (auto b : t)
            if (a < b) pair_hits[{a, b}] += mult;
      }
      for (auto h : hits) CHECK(h * d == order * m);
      if (two && d >= 2)
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = a + 1; b < d; ++b)
            CHECK(pair_hits[{a, b}] * d * (d - 1) == order * m * (m - 1));
    }
  }
}

TEST_CASE("galois source parsing") {
  CHECK(std::holds_alternative<SymmetricSource>(parse_galois_source("symmetric")));
  CHECK(std::get<CyclotomicSource>(parse_galois_source("cyclotomic:12")).n == 12);
  auto p = std::get<PureFieldSource>(parse_galois_source("pure:3:-7"));
  CHECK(p.d == 3);
  CHECK(p.m == -7);
  auto e = std::get<ExplicitSource>(parse_galois_source("perms:2 3 1;3 1 2"));
  CHECK(e.perms == std::vector<std::vector<std::size_t>>{{2, 3, 1}, {3, 1, 2}});
  CHECK_THROWS_AS(parse_galois_source("cyclotomic:x"), InputError);
  CHECK_THROWS_AS(parse_galois_source("perms:0 1"), InputError);
  CHECK_THROWS_AS(parse_galois_source("dihedral"), InputError);
}
