#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nfcount/number_field.hpp"

namespace nfc {

// Permutation of embedding indices, 0-based one-line form: p[i] = image of i.
using Perm = std::vector<std::size_t>;

enum class GaloisProvenance { user, symmetric, cyclotomic, pure_field, heuristic_symmetric };
std::string to_string(GaloisProvenance p);

// Permutation group on Sigma, fully enumerated (at most 5040 elements).
class GaloisAction {
 public:
  // Throws InputError for malformed or intransitive generators, or when the
  // closure exceeds the cap.
  GaloisAction(std::size_t degree, std::vector<Perm> generators, GaloisProvenance prov);

  std::size_t degree() const { return d_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Perm>& elements() const { return elems_; }  // sorted, identity first
  std::size_t order() const { return elems_.size(); }
  GaloisProvenance provenance() const { return prov_; }
  bool certified() const { return prov_ != GaloisProvenance::heuristic_symmetric; }

  // Single orbit on 2-subsets.  False for d = 1.
  bool is_two_homogeneous() const;

  // {gS : g in G} as distinct sorted subsets with multiplicities, sorted by
  // subset.  S: distinct indices.
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> subset_orbit_multiset(
      const std::vector<std::size_t>& s) const;

  // Orbit sizes along the point-stabilizer chain for base 0, 1, ...; their
  // product is |G|.
  std::vector<std::size_t> stabilizer_chain() const;

  // Cycle lengths of the Frobenius patterns seen while sampling (heuristic
  // source only), sorted per pattern.
  std::vector<std::vector<unsigned>> sampled_patterns;

 private:
  std::size_t d_;
  std::vector<Perm> gens_;
  std::vector<Perm> elems_;
  GaloisProvenance prov_;
};

Perm compose(const Perm& g, const Perm& h);  // (g h)(i) = g(h(i))

struct ExplicitSource {
  std::vector<std::vector<std::size_t>> perms;  // one-line, 1-based
};
struct CyclotomicSource {
  unsigned long n;
};
struct PureFieldSource {
  unsigned d;
  Integer m;
};
struct SymmetricSource {};

using GaloisSource = std::variant<ExplicitSource, CyclotomicSource, PureFieldSource, SymmetricSource>;

// Numerical sources match conjugates to certified root balls, escalating
// precision until the matching is unambiguous (CertificationError at the
// ceiling).  Assume-symmetric gives S_d: certified for d <= 2, otherwise
// heuristic after checking factorization patterns modulo 20 primes.
GaloisAction build_action(const NumberField& k, const GaloisSource& source);

// Parses "cyclotomic:12", "pure:3:2", "symmetric", "perms:2 3 1;3 1 2".
GaloisSource parse_galois_source(const std::string& text);

}  // namespace nfc
