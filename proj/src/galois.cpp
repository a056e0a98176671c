#include "nfcount/galois.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "nfcount/error.hpp"
#include "nfcount/fp_poly.hpp"

namespace nfc {

namespace {

constexpr std::size_t kMaxOrder = 5040;

Perm identity_perm(std::size_t d) {
  Perm p(d);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

ComplexInterval unit_root(unsigned long k, unsigned long n, mpfr_prec_t prec) {
  Interval t = Interval::pi(prec) * Interval(Rational(2 * k, n), prec);
  return {cos(t), sin(t)};
}

// Index j of the unique candidate overlapping `z`, or -1.
long unique_match(const ComplexInterval& z, const std::vector<ComplexInterval>& cands) {
  long found = -1;
  for (std::size_t j = 0; j < cands.size(); ++j) {
    if (!z.overlaps(cands[j])) continue;
    if (found >= 0) return -1;
    found = static_cast<long>(j);
  }
  return found;
}

// Labels each embedding with a candidate index, escalating precision until
// the matching is a bijection.
template <class Candidates>
std::vector<std::size_t> match_roots(const NumberField& k, Candidates&& candidates) {
  const std::size_t d = k.degree();
  for (mpfr_prec_t prec = 128; prec <= k.precision_ceiling(); prec *= 2) {
    auto emb = k.embeddings(prec);
    std::vector<ComplexInterval> boxes;
    for (const auto& r : emb->roots) boxes.push_back(r.box());
    std::vector<ComplexInterval> cands = candidates(*emb, boxes, prec);
    std::vector<std::size_t> label(d);
    std::vector<bool> used(cands.size(), false);
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      long j = unique_match(boxes[i], cands);
      if (j < 0 || used[j]) {
        ok = false;
      } else {
        used[j] = true;
        label[i] = static_cast<std::size_t>(j);
      }
    }
    if (ok) return label;
  }
  throw CertificationError("root matching for the Galois action is ambiguous at the ceiling");
}

GaloisAction cyclotomic_action(const NumberField& k, unsigned long n) {
  if (n == 0 || k.poly() != cyclotomic_polynomial(static_cast<unsigned>(n)))
    throw InputError("cyclotomic source: field polynomial is not Phi_" + std::to_string(n));
  std::vector<unsigned long> units;
  for (unsigned long a = 1; a <= std::max(n, 1UL); ++a)
    if (std::gcd(a, n) == 1) units.push_back(a % n);
  auto label = match_roots(k, [&](const EmbeddingSet&, const std::vector<ComplexInterval>&,
                                  mpfr_prec_t prec) {
    std::vector<ComplexInterval> c;
    for (auto a : units) c.push_back(unit_root(a, n, prec));
    return c;
  });
  const std::size_t d = k.degree();
  // position of exponent units[j] among embeddings
  std::vector<std::size_t> where(units.size());
  for (std::size_t i = 0; i < d; ++i) where[label[i]] = i;
  auto unit_index = [&](unsigned long a) {
    return static_cast<std::size_t>(std::find(units.begin(), units.end(), a % n) - units.begin());
  };
  std::vector<Perm> gens;
  for (auto a : units) {
    Perm g(d);
    for (std::size_t i = 0; i < d; ++i) g[i] = where[unit_index(units[label[i]] * a)];
    gens.push_back(std::move(g));
  }
  return GaloisAction(d, std::move(gens), GaloisProvenance::cyclotomic);
}

GaloisAction pure_action(const NumberField& k, unsigned d, const Integer& m) {
  if (d < 2 || !is_probable_prime(Integer(d)))
    throw InputError("pure-field source needs a prime degree");
  IntVector coeffs(d + 1);
  coeffs[0] = -m;
  coeffs[d] = 1;
  if (k.poly() != IntPolynomial(coeffs))
    throw InputError("pure-field source: field polynomial is not x^" + std::to_string(d) +
                     " - " + m.get_str());
  if (d == 2) return GaloisAction(2, {Perm{1, 0}}, GaloisProvenance::pure_field);
  // Roots r zeta^j with r real; label j from z / r.
  auto label = match_roots(k, [&](const EmbeddingSet& emb,
                                  const std::vector<ComplexInterval>& boxes, mpfr_prec_t prec) {
    std::size_t real = 0;
    while (real < emb.size() && !emb.roots[real].real) ++real;
    if (real == emb.size() || emb.r1 != 1)
      throw InternalInconsistency("pure field of odd prime degree without one real root");
    std::vector<ComplexInterval> c;
    for (unsigned j = 0; j < d; ++j) c.push_back(boxes[real] * unit_root(j, d, prec));
    return c;
  });
  std::vector<std::size_t> where(d);
  for (std::size_t i = 0; i < d; ++i) where[label[i]] = i;
  // theta -> theta zeta^b, zeta -> zeta^a sends root j to a j + b.
  std::vector<Perm> gens;
  for (unsigned a = 1; a < d; ++a)
    for (unsigned b = 0; b < 2; ++b) {
      Perm g(d);
      for (std::size_t i = 0; i < d; ++i) g[i] = where[(a * label[i] + b) % d];
      gens.push_back(std::move(g));
    }
  return GaloisAction(d, std::move(gens), GaloisProvenance::pure_field);
}

GaloisAction symmetric_action(const NumberField& k) {
  const std::size_t d = k.degree();
  std::vector<Perm> gens;
  if (d >= 2) {
    Perm swap = identity_perm(d), cycle(d);
    std::swap(swap[0], swap[1]);
    for (std::size_t i = 0; i < d; ++i) cycle[i] = (i + 1) % d;
    gens = {swap, cycle};
  } else {
    gens = {identity_perm(d)};
  }
  if (d <= 2) return GaloisAction(d, std::move(gens), GaloisProvenance::symmetric);

  // Frobenius cycle types at unramified primes; S_d contains odd
  // permutations, so some pattern must be odd.
  std::vector<std::vector<unsigned>> patterns;
  const Integer disc = k.poly_discriminant();
  for (unsigned p : primes_up_to(1000)) {
    if (patterns.size() == 20) break;
    if (disc % p == 0) continue;
    fp::Field fld(p);
    std::vector<unsigned> pat;
    for (auto& [g, mult] : fld.factor(fld.reduce(k.poly())))
      for (unsigned t = 0; t < mult; ++t) pat.push_back(static_cast<unsigned>(g.degree()));
    std::sort(pat.begin(), pat.end());
    patterns.push_back(std::move(pat));
  }
  bool odd = false;
  for (auto& pat : patterns) {
    unsigned parity = 0;
    for (unsigned len : pat) parity += len - 1;
    odd = odd || parity % 2 == 1;
  }
  if (!odd)
    throw InputError("assume-symmetric rejected: factorization patterns are all even");
  GaloisAction g(d, std::move(gens), GaloisProvenance::heuristic_symmetric);
  g.sampled_patterns = std::move(patterns);
  return g;
}

}  // namespace

std::string to_string(GaloisProvenance p) {
  switch (p) {
    case GaloisProvenance::user: return "user";
    case GaloisProvenance::symmetric: return "symmetric";
    case GaloisProvenance::cyclotomic: return "cyclotomic";
    case GaloisProvenance::pure_field: return "pure-field";
    case GaloisProvenance::heuristic_symmetric: return "heuristic-symmetric";
  }
  return "?";
}

Perm compose(const Perm& g, const Perm& h) {
  Perm out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = g[h[i]];
  return out;
}

GaloisAction::GaloisAction(std::size_t degree, std::vector<Perm> generators,
                           GaloisProvenance prov)
    : d_(degree), gens_(std::move(generators)), prov_(prov) {
  if (d_ == 0) throw InputError("Galois action on an empty set");
  for (const auto& g : gens_) {
    if (g.size() != d_) throw InputError("permutation has the wrong length");
    std::vector<bool> seen(d_, false);
    for (auto v : g) {
      if (v >= d_ || seen[v]) throw InputError("not a permutation");
      seen[v] = true;
    }
  }
  std::set<Perm> group{identity_perm(d_)};
  std::vector<Perm> frontier{identity_perm(d_)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& h : frontier)
      for (const auto& g : gens_) {
        Perm gh = compose(g, h);
        if (group.insert(gh).second) next.push_back(std::move(gh));
      }
    if (group.size() > kMaxOrder) throw InputError("group order exceeds 5040");
    frontier = std::move(next);
  }
  elems_.assign(group.begin(), group.end());  // identity is the least element

  std::vector<bool> reached(d_, false);
  reached[0] = true;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (const auto& g : gens_)
      if (!reached[g[i]]) {
        reached[g[i]] = true;
        stack.push_back(g[i]);
      }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end())
    throw InputError("Galois action is not transitive");
}

bool GaloisAction::is_two_homogeneous() const {
  if (d_ < 2) return false;
  std::set<std::pair<std::size_t, std::size_t>> orbit{{0, 1}};
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 1}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    for (const auto& g : gens_) {
      auto pr = std::minmax(g[a], g[b]);
      if (orbit.insert(pr).second) stack.push_back(pr);
    }
  }
  return orbit.size() == d_ * (d_ - 1) / 2;
}

std::vector<std::pair<std::vector<std::size_t>, std::size_t>>
GaloisAction::subset_orbit_multiset(const std::vector<std::size_t>& s) const {
  if (s.empty()) throw InputError("subset must be nonempty");
  std::vector<bool> seen(d_, false);
  for (auto v : s) {
    if (v >= d_ || seen[v]) throw InputError("subset indices must be distinct embeddings");
    seen[v] = true;
  }
  std::map<std::vector<std::size_t>, std::size_t> counts;
  for (const auto& g : elems_) {
    std::vector<std::size_t> t;
    for (auto v : s) t.push_back(g[v]);
    std::sort(t.begin(), t.end());
    ++counts[t];
  }
  return {counts.begin(), counts.end()};
}

std::vector<std::size_t> GaloisAction::stabilizer_chain() const {
  std::vector<std::size_t> sizes;
  std::vector<const Perm*> current;
  for (const auto& g : elems_) current.push_back(&g);
  for (std::size_t base = 0; base < d_ && current.size() > 1; ++base) {
    std::set<std::size_t> orbit;
    std::vector<const Perm*> stab;
    for (const Perm* g : current) {
      orbit.insert((*g)[base]);
      if ((*g)[base] == base) stab.push_back(g);
    }
    sizes.push_back(orbit.size());
    current = std::move(stab);
  }
  return sizes;
}

GaloisAction build_action(const NumberField& k, const GaloisSource& source) {
  return std::visit(
      [&](const auto& src) -> GaloisAction {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, ExplicitSource>) {
          std::vector<Perm> gens;
          for (const auto& p : src.perms) {
            Perm g;
            for (auto v : p) {
              if (v == 0) throw InputError("permutations are 1-based");
              g.push_back(v - 1);
            }
            gens.push_back(std::move(g));
          }
          if (gens.empty()) throw InputError("explicit Galois source without permutations");
          return GaloisAction(k.degree(), std::move(gens), GaloisProvenance::user);
        } else if constexpr (std::is_same_v<T, CyclotomicSource>) {
          return cyclotomic_action(k, src.n);
        } else if constexpr (std::is_same_v<T, PureFieldSource>) {
          return pure_action(k, src.d, src.m);
        } else {
          return symmetric_action(k);
        }
      },
      source);
}

GaloisSource parse_galois_source(const std::string& text) {
  auto fail = [&]() -> GaloisSource { throw InputError("bad Galois source: " + text); };
  if (text == "symmetric") return SymmetricSource{};
  auto colon = text.find(':');
  if (colon == std::string::npos) return fail();
  const std::string kind = text.substr(0, colon), rest = text.substr(colon + 1);
  try {
    if (kind == "cyclotomic") {
      std::size_t used = 0;
      unsigned long n = std::stoul(rest, &used);
      if (used != rest.size()) return fail();
      return CyclotomicSource{n};
    }
    if (kind == "pure") {
      auto c2 = rest.find(':');
      if (c2 == std::string::npos) return fail();
      std::size_t used = 0;
      unsigned long d = std::stoul(rest.substr(0, c2), &used);
      if (used != c2) return fail();
      return PureFieldSource{static_cast<unsigned>(d), Integer(rest.substr(c2 + 1))};
    }
  } catch (const std::invalid_argument&) {
    return fail();
  }
  if (kind == "perms") {
    ExplicitSource src;
    std::stringstream all(rest);
    std::string one;
    while (std::getline(all, one, ';')) {
      std::stringstream ss(one);
      std::vector<std::size_t> p;
      long v;
      while (ss >> v) {
        if (v <= 0) return fail();
        p.push_back(static_cast<std::size_t>(v));
      }
      if (!ss.eof()) return fail();
      src.perms.push_back(std::move(p));
    }
    return src;
  }
  return fail();
}

}  // namespace nfc
