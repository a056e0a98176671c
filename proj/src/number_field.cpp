#include "nfcount/number_field.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

#include "nfcount/error.hpp"
#include "nfcount/fp_poly.hpp"

namespace nfc {

namespace detail {
struct EmbeddingCache {
  std::mutex mu;
  std::vector<RootBall> base;
  std::map<mpfr_prec_t, std::shared_ptr<const EmbeddingSet>> sets;
};
}  // namespace detail

namespace {

constexpr mpfr_prec_t kBasePrecision = 128;

IntPolynomial shift(const IntPolynomial& f, long s) {
  // Horner in the ring Z[x]: f(x + s).
  const IntPolynomial lin({Integer(s), Integer(1)});
  IntPolynomial acc;
  for (long i = f.degree(); i >= 0; --i)
    acc = acc * lin + IntPolynomial({f.coeff(i)});
  return acc;
}

bool eisenstein_at(const IntPolynomial& f, const Integer& p) {
  for (long i = 0; i < f.degree(); ++i)
    if (!mpz_divisible_p(f.coeff(i).get_mpz_t(), p.get_mpz_t())) return false;
  Integer p2 = p * p;
  return !mpz_divisible_p(f.coeff(0).get_mpz_t(), p2.get_mpz_t());
}

bool eisenstein(const IntPolynomial& f) {
  for (long s = -5; s <= 5; ++s) {
    IntPolynomial g = shift(f, s);
    if (g.coeff(0) == 0) continue;
    for (auto& [p, e] : factor_integer(g.coeff(0))) {
      if (e != 1) continue;
      if (eisenstein_at(g, p)) return true;
    }
  }
  return false;
}

// Degrees k for which a factor of degree k is consistent with the
// factorization pattern mod p.
std::set<long> pattern_degrees(const std::vector<long>& degs) {
  std::set<long> sums{0};
  for (long g : degs) {
    std::set<long> next = sums;
    for (long s : sums) next.insert(s + g);
    sums = std::move(next);
  }
  return sums;
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Every monic factor of degree k is prod_{i in S}(x - r_i) with integer
// coefficients.  Excludes each k-subset S by an interval coefficient that
// contains no integer, or by exact trial division.  nullopt: undecided.
std::optional<bool> subsets_exclude(const IntPolynomial& f,
                                    const std::vector<RootBall>& roots, std::size_t k) {
  bool decided = true;
  for_each_subset(roots.size(), k, [&](const std::vector<std::size_t>& s) {
    const mpfr_prec_t prec = roots[0].center.precision();
    std::vector<ComplexInterval> c{{Interval(1L, prec), Interval(prec)}};
    for (std::size_t i : s) {
      ComplexInterval r = roots[i].box();
      std::vector<ComplexInterval> next(c.size() + 1,
                                        ComplexInterval{Interval(prec), Interval(prec)});
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] = next[j + 1] + c[j];
        next[j] = next[j] - c[j] * r;
      }
      c = std::move(next);
    }
    std::vector<Integer> cand;
    for (auto& z : c) {
      if (!z.im.contains_zero()) return true;  // not real: excluded
      auto n = z.re.unique_integer();
      if (!n) {
        if (z.re.width() < 1) return true;  // no integer inside
        decided = false;
        return false;
      }
      cand.push_back(*n);
    }
    IntPolynomial g(cand);
    if (g.degree() > 0 && f.divmod_monic(g).second.is_zero())
      throw ReducibleError("reducible: " + to_string(f) + " has the factor " +
                           to_string(g));
    return true;
  });
  if (!decided) return std::nullopt;
  return true;
}

IntPolynomial reduce_mod(const IntPolynomial& g, const IntPolynomial& f) {
  return g.divmod_monic(f).second;
}

}  // namespace

std::string to_string(IrreducibilityProof p) {
  switch (p) {
    case IrreducibilityProof::eisenstein: return "eisenstein";
    case IrreducibilityProof::mod_p: return "mod-p";
    case IrreducibilityProof::degree_patterns: return "degree-patterns";
    case IrreducibilityProof::root_subsets: return "root-subsets";
    case IrreducibilityProof::unverified: return "unverified";
  }
  return "?";
}

IrreducibilityProof prove_irreducible(const IntPolynomial& f) {
  const long d = f.degree();
  if (d < 1 || !f.monic()) throw InputError("defining polynomial must be monic");
  if (d == 1) return IrreducibilityProof::eisenstein;
  const Integer disc = nfc::discriminant(f);
  if (disc == 0) throw ReducibleError("reducible: " + to_string(f) + " is not squarefree");
  if (eisenstein(f)) return IrreducibilityProof::eisenstein;

  std::set<long> possible;
  for (long k = 0; k <= d; ++k) possible.insert(k);
  for (unsigned p : primes_up_to(101)) {
    if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    fp::Field F(p);
    auto fac = F.factor(F.reduce(f));
    if (fac.size() == 1) return IrreducibilityProof::mod_p;
    std::vector<long> degs;
    for (auto& [q, e] : fac) degs.push_back(q.degree());
    std::set<long> sums = pattern_degrees(degs), keep;
    std::set_intersection(possible.begin(), possible.end(), sums.begin(), sums.end(),
                          std::inserter(keep, keep.begin()));
    possible = std::move(keep);
  }
  if (possible.size() == 2) return IrreducibilityProof::degree_patterns;

  auto roots = isolate_roots(f, kBasePrecision);
  for (long k : possible) {
    if (k == 0 || 2 * k > d) continue;
    auto r = subsets_exclude(f, roots, static_cast<std::size_t>(k));
    if (!r) return IrreducibilityProof::unverified;
  }
  return IrreducibilityProof::root_subsets;
}

bool dedekind_maximal(const IntPolynomial& f, unsigned long p) {
  fp::Field F(p);
  auto fac = F.factor(F.reduce(f));
  fp::Poly g{{1}}, h{{1}};
  for (auto& [q, e] : fac) {
    g = F.mul(g, q);
    for (unsigned i = 1; i < e; ++i) h = F.mul(h, q);
  }
  IntPolynomial gh = F.lift(g) * F.lift(h);
  IntPolynomial diff = f - gh;
  std::vector<Integer> c = diff.coeffs();
  for (auto& v : c) {
    if (!mpz_divisible_ui_p(v.get_mpz_t(), p))
      throw InternalInconsistency("dedekind: f - gh not divisible by p");
    v /= static_cast<unsigned long>(p);
  }
  fp::Poly big_f = F.reduce(IntPolynomial(c));
  fp::Poly t = F.gcd(F.gcd(big_f, g), h);
  return t.degree() == 0;
}

IntMatrix NumberField::mult_matrix(std::span<const Integer> a) const {
  IntMatrix m(d_, d_);
  for (std::size_t k = 0; k < d_; ++k) {
    if (a[k] == 0) continue;
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) m(i, j) += a[k] * mult_[k](i, j);
  }
  return m;
}

RatMatrix NumberField::mult_matrix(std::span<const Rational> a) const {
  RatMatrix m(d_, d_);
  for (std::size_t k = 0; k < d_; ++k) {
    if (a[k] == 0) continue;
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) m(i, j) += a[k] * mult_[k](i, j);
  }
  return m;
}

IntVector NumberField::multiply(std::span<const Integer> a,
                                std::span<const Integer> b) const {
  return mult_matrix(a) * b;
}

RatVector NumberField::multiply(std::span<const Rational> a,
                                std::span<const Rational> b) const {
  return mult_matrix(a) * b;
}

Rational NumberField::norm(std::span<const Rational> a) const {
  return determinant(mult_matrix(a));
}

Rational NumberField::trace(std::span<const Rational> a) const {
  RatMatrix m = mult_matrix(a);
  Rational t = 0;
  for (std::size_t i = 0; i < d_; ++i) t += m(i, i);
  return t;
}

RatVector NumberField::to_power_basis(std::span<const Rational> a) const {
  return basis_ * a;
}

RatVector NumberField::from_power_basis(std::span<const Rational> y) const {
  return basis_inv_ * y;
}

RatVector NumberField::from_polynomial(const IntPolynomial& g) const {
  IntPolynomial r = reduce_mod(g, poly_);
  RatVector y(d_);
  for (std::size_t i = 0; i < d_; ++i) y[i] = r.coeff(i);
  return from_power_basis(y);
}

IntVector NumberField::unit_vector(std::size_t k) const {
  IntVector v(d_);
  v[k] = 1;
  return v;
}

bool NumberField::is_integral(std::span<const Rational> a) const {
  return std::all_of(a.begin(), a.end(),
                     [](const Rational& q) { return q.get_den() == 1; });
}

NumberField build_field(const IntPolynomial& f,
                        const std::optional<RatMatrix>& basis_override,
                        const std::string& label, mpfr_prec_t ceiling) {
  if (f.degree() < 2) throw InputError("defining polynomial must have degree >= 2");
  if (!f.monic()) throw InputError("defining polynomial must be monic");
  NumberField k;
  k.poly_ = f;
  k.d_ = static_cast<std::size_t>(f.degree());
  k.label_ = label.empty() ? to_string(f) : label;
  k.ceiling_ = ceiling;
  k.proof_ = prove_irreducible(f);
  k.poly_disc_ = nfc::discriminant(f);
  const std::size_t d = k.d_;

  if (basis_override) {
    const RatMatrix& b = *basis_override;
    if (b.rows() != d || b.cols() != d)
      throw InputError("basis override must be " + std::to_string(d) + "x" +
                       std::to_string(d));
    for (std::size_t i = 0; i < d; ++i)
      if (b(i, 0) != (i == 0 ? 1 : 0))
        throw InputError("basis override: first basis element must be 1");
    auto inv = inverse(b);
    if (!inv) throw InputError("basis override is singular");
    k.basis_ = b;
    k.basis_inv_ = *inv;
    // Z[theta] inside the span: the inverse maps powers of theta to
    // integer vectors.
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (k.basis_inv_(i, j).get_den() != 1)
          throw InputError("basis override does not contain Z[theta]");
    Rational det = abs(determinant(b));
    Rational idx = 1 / det;
    if (idx.get_den() != 1) throw InputError("basis override: index not an integer");
    k.index_ = idx.get_num();
  } else {
    for (auto& [p, e] : factor_integer(k.poly_disc_)) {
      if (e < 2) continue;
      if (!p.fits_ulong_p() || p.get_ui() >= (1UL << 62))
        throw InputError("discriminant prime " + p.get_str() + " too large");
      if (!dedekind_maximal(f, p.get_ui())) throw NonMonogenicError(p);
    }
    k.basis_ = RatMatrix::identity(d);
    k.basis_inv_ = RatMatrix::identity(d);
    k.index_ = 1;
  }

  // Multiplication table over the basis.
  std::vector<RatPolynomial> elems;
  for (std::size_t j = 0; j < d; ++j) elems.emplace_back(k.basis_.column(j));
  RatPolynomial fr(std::vector<Rational>(f.coeffs().begin(), f.coeffs().end()));
  k.mult_.assign(d, IntMatrix(d, d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      RatPolynomial prod = (elems[a] * elems[b]).divmod_monic(fr).second;
      RatVector y(d);
      for (std::size_t i = 0; i < d; ++i) y[i] = prod.coeff(i);
      RatVector x = k.basis_inv_ * std::span<const Rational>(y);
      for (std::size_t i = 0; i < d; ++i) {
        if (x[i].get_den() != 1)
          throw InputError("basis override is not closed under multiplication");
        k.mult_[a](i, b) = x[i].get_num();
      }
    }

  // Delta = det(Tr(b_i b_j)).
  IntMatrix tr(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      IntMatrix m = k.mult_matrix(k.mult_[a].column(b));
      Integer t = 0;
      for (std::size_t i = 0; i < d; ++i) t += m(i, i);
      tr(a, b) = t;
    }
  k.disc_ = determinant(tr);
  if (k.disc_ * k.index_ * k.index_ != k.poly_disc_)
    throw InternalInconsistency("disc(f) != Delta * index^2 for " + k.label_);

  k.r1_ = count_real_roots(f);
  k.r2_ = static_cast<unsigned>((d - k.r1_) / 2);
  k.cache_ = std::make_shared<detail::EmbeddingCache>();
  return k;
}

FieldPtr make_field(const IntPolynomial& f, const std::optional<RatMatrix>& basis_override,
                    const std::string& label, mpfr_prec_t ceiling) {
  return std::make_shared<const NumberField>(build_field(f, basis_override, label, ceiling));
}

std::shared_ptr<const EmbeddingSet> NumberField::embeddings(mpfr_prec_t prec) const {
  if (prec < 64) throw InputError("embedding precision must be >= 64 bits");
  if (prec > ceiling_)
    throw CertificationError("requested precision " + std::to_string(prec) +
                             " exceeds the ceiling " + std::to_string(ceiling_));
  prec = std::max(prec, kBasePrecision);
  std::lock_guard lock(cache_->mu);
  if (auto it = cache_->sets.find(prec); it != cache_->sets.end()) return it->second;
  if (cache_->base.empty()) cache_->base = isolate_roots(poly_, kBasePrecision, ceiling_);

  auto emb = std::make_shared<EmbeddingSet>();
  emb->roots = prec == kBasePrecision ? cache_->base
                                      : refine_roots(poly_, cache_->base, prec, ceiling_);
  emb->precision = prec;
  emb->r1 = r1_;
  emb->r2 = r2_;
  const std::size_t d = d_;
  emb->conj.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (emb->roots[i].real) {
      emb->conj[i] = i;
      continue;
    }
    bool found = false;
    for (std::size_t j = 0; j < d && !found; ++j) {
      const auto& a = emb->roots[i].center;
      const auto& b = emb->roots[j].center;
      if (j != i && !emb->roots[j].real && mpfr_equal_p(a.re.lo(), b.re.lo()) &&
          mpfr_equal_p(a.re.hi(), b.re.hi()) && mpfr_equal_p(a.im.lo(), (-b.im).lo()) &&
          mpfr_equal_p(a.im.hi(), (-b.im).hi())) {
        emb->conj[i] = j;
        found = true;
      }
    }
    if (!found) throw InternalInconsistency("conjugation pairing failed");
  }
  emb->values = Matrix<ComplexInterval>(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    IntVector e = unit_vector(k);
    auto vals = evaluate_element(*this, std::span<const Integer>(e), *emb);
    for (std::size_t i = 0; i < d; ++i) emb->values(i, k) = vals[i];
  }
  cache_->sets.emplace(prec, emb);
  return emb;
}

std::shared_ptr<const EmbeddingSet> embed(const NumberField& k, mpfr_prec_t prec) {
  return k.embeddings(prec);
}

std::vector<ComplexInterval> evaluate_element(const NumberField& k,
                                              std::span<const Rational> x,
                                              const EmbeddingSet& emb) {
  const std::size_t d = k.degree();
  RatVector y = k.to_power_basis(x);
  const mpfr_prec_t prec = emb.roots[0].center.precision();
  std::vector<ComplexInterval> out(d, ComplexInterval(prec));
  for (std::size_t i = 0; i < d; ++i) {
    if (!emb.roots[i].real && emb.conj[i] < i) continue;
    ComplexInterval z = emb.roots[i].box();
    if (emb.roots[i].real) z.im = Interval(prec);
    ComplexInterval acc(prec);
    for (std::size_t j = d; j-- > 0;)
      acc = acc * z + ComplexInterval{Interval(y[j], prec), Interval(prec)};
    if (emb.roots[i].real) {
      // The root box is real; the imaginary part of sigma(x) is exactly 0.
      acc.im = Interval(prec);
    }
    out[i] = acc;
    if (!emb.roots[i].real) out[emb.conj[i]] = acc.conj();
  }
  return out;
}

std::vector<ComplexInterval> evaluate_element(const NumberField& k,
                                              std::span<const Integer> x,
                                              const EmbeddingSet& emb) {
  RatVector q = to_rational(x);
  return evaluate_element(k, std::span<const Rational>(q), emb);
}

}  // namespace nfc
