#include "nfcount/fp_poly.hpp"

#include <algorithm>

#include "nfcount/error.hpp"

namespace nfc::fp {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Field::Field(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= (1ULL << 62))
    throw InputError("fp::Field: modulus out of range");
}

std::uint64_t Field::mulmod(std::uint64_t a, std::uint64_t b) const {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
}

std::uint64_t Field::inv(std::uint64_t a) const {
  // Fermat: p is prime.
  std::uint64_t r = 1, b = a % p_, e = p_ - 2;
  if (b == 0) throw InputError("fp::Field: inverse of zero");
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

void Field::trim(Poly& a) const {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

Poly Field::reduce(const IntPolynomial& f) const {
  Poly r;
  r.c.resize(f.coeffs().size());
  Integer m(static_cast<unsigned long>(p_));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    Integer t;
    mpz_fdiv_r(t.get_mpz_t(), f.coeffs()[i].get_mpz_t(), m.get_mpz_t());
    r.c[i] = t.get_ui();
  }
  trim(r);
  return r;
}

IntPolynomial Field::lift(const Poly& f) const {
  std::vector<Integer> c;
  for (auto v : f.c) c.emplace_back(static_cast<unsigned long>(v));
  return IntPolynomial(std::move(c));
}

Poly Field::add(const Poly& a, const Poly& b) const {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = (x + y) % p_;
  }
  trim(r);
  return r;
}

Poly Field::sub(const Poly& a, const Poly& b) const {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = (x + p_ - y) % p_;
  }
  trim(r);
  return r;
}

Poly Field::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = (r.c[i + j] + mulmod(a.c[i], b.c[j])) % p_;
  trim(r);
  return r;
}

Poly Field::scale(const Poly& a, std::uint64_t s) const {
  Poly r = a;
  for (auto& v : r.c) v = mulmod(v, s % p_);
  trim(r);
  return r;
}

std::pair<Poly, Poly> Field::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw InputError("fp::Field: division by zero polynomial");
  Poly r = a;
  if (r.c.size() < b.c.size()) return {Poly{}, r};
  const std::size_t db = b.c.size() - 1;
  const std::uint64_t li = inv(b.c.back());
  Poly q;
  q.c.assign(r.c.size() - db, 0);
  for (std::size_t i = r.c.size(); i-- > db;) {
    std::uint64_t t = mulmod(r.c[i], li);
    q.c[i - db] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j <= db; ++j)
      r.c[i - db + j] = (r.c[i - db + j] + p_ - mulmod(t, b.c[j])) % p_;
  }
  r.c.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

Poly Field::monic(const Poly& a) const {
  if (a.is_zero()) return a;
  return scale(a, inv(a.c.back()));
}

Poly Field::gcd(Poly a, Poly b) const {
  while (!b.is_zero()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly Field::derivative(const Poly& a) const {
  Poly r;
  for (std::size_t i = 1; i < a.c.size(); ++i)
    r.c.push_back(mulmod(a.c[i], i % p_));
  trim(r);
  return r;
}

Poly Field::powmod(Poly base, std::uint64_t e, const Poly& m) const {
  Poly r{{1}};
  r = rem(r, m);
  base = rem(base, m);
  while (e) {
    if (e & 1) r = rem(mul(r, base), m);
    base = rem(mul(base, base), m);
    e >>= 1;
  }
  return r;
}

Poly Field::powmod_big(const Poly& base, const Integer& e, const Poly& m) const {
  Poly r = rem(Poly{{1}}, m);
  Poly b = rem(base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = rem(mul(r, r), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, b), m);
  }
  return r;
}

std::vector<std::pair<Poly, unsigned>> Field::squarefree(const Poly& f) const {
  std::vector<std::pair<Poly, unsigned>> out;
  Poly g = gcd(f, derivative(f));
  Poly w = divmod(f, g).first;
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, g);
    Poly z = divmod(w, y).first;
    if (z.degree() > 0) out.emplace_back(monic(z), i);
    ++i;
    w = y;
    g = divmod(g, y).first;
  }
  if (g.degree() > 0) {
    // g is a p-th power; in F_p the p-th root of a coefficient is itself.
    Poly h;
    for (std::size_t k = 0; k * p_ < g.c.size(); ++k) h.c.push_back(g.c[k * p_]);
    trim(h);
    for (auto& [q, e] : squarefree(h))
      out.emplace_back(q, e * static_cast<unsigned>(p_));
  }
  return out;
}

std::vector<std::pair<Poly, unsigned>> Field::distinct_degree(
    const Poly& f_in) const {
  std::vector<std::pair<Poly, unsigned>> out;
  Poly f = monic(f_in);
  const Poly x{{0, 1}};
  Poly h = rem(x, f);
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(f.degree()); ++d) {
    h = powmod(h, p_, f);
    Poly g = gcd(sub(h, x), f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = divmod(f, g).first;
      h = rem(h, f);
    }
  }
  if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
  return out;
}

void Field::equal_degree(const Poly& f, unsigned deg, std::vector<Poly>& out,
                         std::uint64_t& seed) const {
  if (static_cast<unsigned>(f.degree()) == deg) {
    out.push_back(monic(f));
    return;
  }
  const std::size_t n = f.c.size() - 1;
  for (;;) {
    Poly a;
    for (std::size_t i = 0; i < n; ++i) a.c.push_back(splitmix(seed) % p_);
    trim(a);
    if (a.degree() < 1) continue;
    Poly b;
    if (p_ == 2) {
      Poly t = a;
      b = a;
      for (unsigned i = 1; i < deg; ++i) {
        t = rem(mul(t, t), f);
        b = add(b, t);
      }
    } else {
      Integer e = ipow(Integer(static_cast<unsigned long>(p_)), deg);
      e = (e - 1) / 2;
      b = sub(powmod_big(a, e, f), Poly{{1}});
    }
    Poly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, deg, out, seed);
      equal_degree(divmod(f, g).first, deg, out, seed);
      return;
    }
  }
}

std::vector<std::pair<Poly, unsigned>> Field::factor(const Poly& f) const {
  if (f.is_zero()) throw InputError("fp::Field: factor of zero polynomial");
  std::vector<std::pair<Poly, unsigned>> out;
  std::uint64_t seed = 0x5eed ^ p_;
  for (auto& [sqf, mult] : squarefree(monic(f))) {
    for (auto& [part, deg] : distinct_degree(sqf)) {
      std::vector<Poly> pieces;
      equal_degree(part, deg, pieces, seed);
      for (auto& q : pieces) out.emplace_back(std::move(q), mult);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Field::is_irreducible(const Poly& f) const {
  auto fac = factor(f);
  return fac.size() == 1 && fac[0].second == 1;
}

}  // namespace nfc::fp
