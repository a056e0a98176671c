#include "nfcount/ramification.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

#include "nfcount/error.hpp"
#include "nfcount/fp_poly.hpp"

namespace nfc {

namespace {

// Kummer-Dedekind for alpha with minimal polynomial h, given the
// coordinates of alpha^0 .. alpha^d; valid when p does not divide
// [o : Z[alpha]].
PrimeData kummer_dedekind(const FieldPtr& k, const Integer& p, const IntPolynomial& h,
                          const std::vector<IntVector>& powers, std::string method) {
  const std::size_t d = k->degree();
  if (!p.fits_ulong_p() || p.get_ui() >= (1UL << 62))
    throw InputError("prime " + p.get_str() + " too large");
  fp::Field F(p.get_ui());
  PrimeData out;
  out.p = p;
  out.method = std::move(method);
  IntVector p_one(d);
  p_one[0] = p;
  unsigned total = 0;
  for (auto& [g, e] : F.factor(F.reduce(h))) {
    IntVector elem(d);
    for (std::size_t j = 0; j < g.c.size(); ++j)
      for (std::size_t i = 0; i < d; ++i)
        elem[i] += Integer(static_cast<unsigned long>(g.c[j])) * powers[j][i];
    PrimeFactor pf;
    pf.e = e;
    pf.f = static_cast<unsigned>(g.degree());
    pf.ideal = IdealLattice::from_generators(k, {p_one, elem});
    if (pf.ideal.index() != ipow(p, pf.f))
      throw InternalInconsistency("prime ideal above " + p.get_str() +
                                  " has the wrong index");
    total += pf.e * pf.f;
    out.f_sum += pf.f;
    out.factors.push_back(std::move(pf));
  }
  if (total != d) throw InternalInconsistency("sum e f != d at " + p.get_str());
  return out;
}

std::vector<IntVector> powers_of(const FieldPtr& k, const IntVector& alpha) {
  const std::size_t d = k->degree();
  std::vector<IntVector> pw{k->unit_vector(0)};
  for (std::size_t i = 1; i <= d; ++i) pw.push_back(k->multiply(pw.back(), alpha));
  return pw;
}

}  // namespace

PrimeData factor_prime(const FieldPtr& k, const Integer& p) {
  if (mpz_divisible_p(k->index().get_mpz_t(), p.get_mpz_t()))
    throw PrimeDataUnavailable(p);
  const std::size_t d = k->degree();
  RatVector t = k->from_polynomial(IntPolynomial({Integer(0), Integer(1)}));
  IntVector theta(d);
  for (std::size_t i = 0; i < d; ++i) theta[i] = t[i].get_num();
  return kummer_dedekind(k, p, k->poly(), powers_of(k, theta), "kummer-dedekind");
}

std::optional<PrimeData> prime_data_from_generator(const FieldPtr& k, const Integer& p,
                                                   const IntVector& alpha) {
  const std::size_t d = k->degree();
  auto pw = powers_of(k, alpha);
  Integer idx = abs(determinant(
      IntMatrix::from_columns(std::vector<IntVector>(pw.begin(), pw.begin() + d), d)));
  if (idx == 0 || mpz_divisible_p(idx.get_mpz_t(), p.get_mpz_t())) return std::nullopt;
  RatVector cp = charpoly(to_rational(k->mult_matrix(alpha)));
  std::vector<Integer> h;
  for (auto& c : cp) {
    if (c.get_den() != 1) throw InternalInconsistency("charpoly of an integer not integral");
    h.push_back(c.get_num());
  }
  std::string name = "generator:";
  for (std::size_t i = 0; i < d; ++i) name += (i ? "," : "") + alpha[i].get_str();
  return kummer_dedekind(k, p, IntPolynomial(h), pw, name);
}

std::optional<PrimeData> search_generator(const FieldPtr& k, const Integer& p, int bound) {
  const std::size_t d = k->degree();
  // Coordinates enumerated by increasing max-norm, then lexicographically.
  for (int r = 1; r <= bound; ++r) {
    std::vector<int> c(d, -r);
    for (;;) {
      int mx = 0;
      for (int v : c) mx = std::max(mx, std::abs(v));
      if (mx == r && c[0] == 0) {
        IntVector alpha(c.begin(), c.end());
        if (auto pd = prime_data_from_generator(k, p, alpha)) return pd;
      }
      std::size_t i = 0;
      while (i < d && c[i] == r) c[i++] = -r;
      if (i == d) break;
      ++c[i];
    }
  }
  return std::nullopt;
}

PrimeData validate_prime_data(
    const FieldPtr& k, const Integer& p,
    const std::vector<std::tuple<unsigned, unsigned, IntMatrix>>& data) {
  PrimeData out;
  out.p = p;
  out.method = "registered";
  unsigned total = 0;
  IdealLattice prod = IdealLattice::unit(k);
  for (auto& [e, f, h] : data) {
    PrimeFactor pf{e, f, IdealLattice::from_hnf(k, h)};
    if (pf.ideal.index() != ipow(p, f))
      throw InputError("registered prime ideal at " + p.get_str() +
                       " has index " + pf.ideal.index().get_str());
    total += e * f;
    out.f_sum += f;
    prod = prod * pf.ideal.pow(e);
    out.factors.push_back(std::move(pf));
  }
  if (total != k->degree())
    throw InputError("registered prime data at " + p.get_str() + ": sum e f != d");
  IntVector p_one = k->unit_vector(0);
  p_one[0] = p;
  if (!(prod == IdealLattice::from_generators(k, {p_one})))
    throw InputError("registered prime data at " + p.get_str() +
                     ": product of prime powers is not p o");
  return out;
}

void PrimeTable::register_data(PrimeData data) {
  Integer p = data.p;
  auto ptr = std::make_shared<const PrimeData>(std::move(data));
  std::unique_lock lock(mu_);
  cache_.emplace(std::move(p), std::move(ptr));
}

std::vector<std::shared_ptr<const PrimeData>> PrimeTable::entries() {
  std::shared_lock lock(mu_);
  std::vector<std::shared_ptr<const PrimeData>> out;
  for (auto& [p, d] : cache_) out.push_back(d);
  return out;
}

std::shared_ptr<const PrimeData> PrimeTable::get(const Integer& p) {
  {
    std::shared_lock lock(mu_);
    if (auto it = cache_.find(p); it != cache_.end()) return it->second;
  }
  std::optional<PrimeData> pd;
  try {
    pd = factor_prime(field_, p);
  } catch (const PrimeDataUnavailable&) {
    if (!auto_) throw;
    pd = search_generator(field_, p);
    if (!pd) throw;
  }
  bool ramified = std::any_of(pd->factors.begin(), pd->factors.end(),
                              [](const PrimeFactor& f) { return f.e > 1; });
  if (ramified != mpz_divisible_p(field_->discriminant().get_mpz_t(), p.get_mpz_t()))
    throw InternalInconsistency("ramification at " + p.get_str() +
                                " disagrees with the discriminant");
  std::unique_lock lock(mu_);
  auto [it, inserted] = cache_.emplace(p, std::make_shared<const PrimeData>(std::move(*pd)));
  return it->second;
}

TameDiscriminant tame_discriminant(PrimeTable& table) {
  const FieldPtr& k = table.field();
  const Integer& disc = k->discriminant();
  const unsigned long d = k->degree();
  TameDiscriminant out;
  out.value = 1;
  for (auto& [p, e] : factor_integer(disc)) {
    auto pd = table.get(p);
    const unsigned exp = static_cast<unsigned>(d) - pd->f_sum;
    out.exponents.emplace_back(p, exp);
    out.value *= ipow(p, exp);
  }
  if (!mpz_divisible_p(disc.get_mpz_t(), out.value.get_mpz_t()))
    throw InternalInconsistency("tame discriminant does not divide Delta for " + k->label());
  if (!(abs(disc) < ipow(Integer(2), d * d * d) * out.value))
    throw InternalInconsistency("|Delta| >= 2^{d^3} Delta_tame for " + k->label());
  return out;
}

std::vector<IdealLattice> ideals_up_to(PrimeTable& table, unsigned long bound) {
  const FieldPtr& k = table.field();
  struct Prime {
    IdealLattice ideal;
    Integer norm;
  };
  std::vector<Prime> primes;
  for (unsigned p : primes_up_to(static_cast<unsigned>(bound))) {
    auto pd = table.get(Integer(p));
    for (auto& f : pd->factors)
      if (f.ideal.index() <= bound) primes.push_back({f.ideal, f.ideal.index()});
  }
  std::vector<IdealLattice> out;
  std::function<void(std::size_t, const IdealLattice&)> walk =
      [&](std::size_t from, const IdealLattice& cur) {
        out.push_back(cur);
        for (std::size_t i = from; i < primes.size(); ++i) {
          if (cur.index() * primes[i].norm > bound) continue;
          walk(i, cur * primes[i].ideal);
        }
      };
  walk(0, IdealLattice::unit(k));
  std::sort(out.begin(), out.end(), [](const IdealLattice& a, const IdealLattice& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    return a.hnf().data() < b.hnf().data();
  });
  return out;
}

}  // namespace nfc
