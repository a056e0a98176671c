#include "nfcount/minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nfcount/error.hpp"

namespace nfc {

namespace {

long double to_ld(const Interval& x) {
  Interval m = x.midpoint();
  return mpfr_get_ld(m.lo(), MPFR_RNDN);
}

long double to_ld(const Rational& q) { return static_cast<long double>(q.get_d()); }

Interval eval_rat(const RatPolynomial& p, const Interval& x) {
  const mpfr_prec_t prec = x.precision();
  Interval acc(prec);
  for (std::size_t i = p.coeffs().size(); i-- > 0;)
    acc = acc * x + Interval(p.coeffs()[i], prec);
  return acc;
}

ComplexInterval embed_value(const EmbeddingSet& emb, std::size_t sigma,
                            std::span<const Integer> x) {
  const mpfr_prec_t prec = emb.values(0, 0).precision();
  ComplexInterval z(prec);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0) continue;
    z = z + emb.values(sigma, k) * Interval(x[k], prec);
  }
  return z;
}

// Interval determinant by elimination; the matrix is positive definite, so
// no pivoting is needed.
Interval interval_det(Matrix<Interval> a) {
  const std::size_t n = a.rows();
  const mpfr_prec_t prec = a(0, 0).precision();
  Interval det(1L, prec);
  for (std::size_t i = 0; i < n; ++i) {
    det = det * a(i, i);
    for (std::size_t r = i + 1; r < n; ++r) {
      Interval f = a(r, i) / a(i, i);
      for (std::size_t c = i; c < n; ++c) a(r, c) = a(r, c) - f * a(i, c);
    }
  }
  return det;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

IntVector to_int_vector(const std::vector<std::int64_t>& v) {
  IntVector out;
  out.reserve(v.size());
  for (auto c : v) out.emplace_back(static_cast<long>(c));
  return out;
}

}  // namespace

void BoxBody::validate(const EmbeddingSet& emb) const {
  if (radii.size() != emb.size())
    throw InputError("box has " + std::to_string(radii.size()) + " radii, field degree " +
                     std::to_string(emb.size()));
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 0) throw InputError("box radii must be positive");
    if (radii[i] != radii[emb.conj[i]])
      throw InputError("box radii must agree on conjugate embeddings");
  }
}

BoxBody BoxBody::scaled(const Rational& c) const {
  BoxBody out = *this;
  for (auto& r : out.radii) r *= c;
  return out;
}

Interval Volume::enclosure(mpfr_prec_t prec) const {
  return Interval(coeff, prec) * pow(Interval::pi(prec), pi_power);
}

Volume box_volume(const NumberField& k, const BoxBody& box) {
  auto emb = k.embeddings(128);
  box.validate(*emb);
  Volume v;
  v.coeff = 1;
  for (std::size_t i = 0; i < emb->size(); ++i) {
    if (emb->roots[i].real) {
      v.coeff *= 2 * box.radii[i];
    } else if (emb->conj[i] > i) {
      v.coeff *= 2 * box.radii[i] * box.radii[i];
      ++v.pi_power;
    }
  }
  return v;
}

Volume unit_ball_volume(unsigned d) {
  Volume v;
  v.pi_power = d / 2;
  if (d % 2 == 0) {
    v.coeff = Rational(1) / Rational(factorial(d / 2));
  } else {
    Integer dfact = 1;
    for (unsigned i = d; i > 1; i -= 2) dfact *= i;
    v.coeff = Rational(ipow(Integer(2), (d + 1) / 2)) / Rational(dfact);
  }
  return v;
}

EmbeddedLattice embed_lattice(const IdealLattice& n, mpfr_prec_t prec) {
  const FieldPtr& k = n.field();
  auto emb = k->embeddings(prec);
  const std::size_t d = k->degree();
  EmbeddedLattice out;
  out.precision = prec;
  out.embedding = Matrix<ComplexInterval>(d, d);
  const mpfr_prec_t wp = emb->values(0, 0).precision();
  for (std::size_t j = 0; j < d; ++j) {
    IntVector c = n.generator(j);
    for (std::size_t s = 0; s < d; ++s) out.embedding(s, j) = embed_value(*emb, s, c);
  }
  out.gram = Matrix<Interval>(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Interval g(wp);
      for (std::size_t s = 0; s < d; ++s) {
        const auto& a = out.embedding(s, i);
        const auto& b = out.embedding(s, j);
        g = g + a.re * b.re + a.im * b.im;
      }
      out.gram(i, j) = g;
    }
  out.covolume2 = interval_det(out.gram);
  return out;
}

GramCheck gram_check(const IdealLattice& n, mpfr_prec_t prec) {
  const FieldPtr& k = n.field();
  GramCheck out;
  out.expected = abs(k->discriminant()) * n.index() * n.index();
  for (; prec <= k->precision_ceiling(); prec *= 2) {
    EmbeddedLattice el = embed_lattice(n, prec);
    if (!el.covolume2.contains(Rational(out.expected)))
      throw InternalInconsistency("det(Gram) excludes |Delta| [o:n]^2 for " + k->label());
    out.det = el.covolume2;
    out.relative_width = el.covolume2.relative_width();
    if (out.relative_width < 1e-20) {
      out.pass = true;
      return out;
    }
  }
  return out;
}

LatticeGeometry::LatticeGeometry(const IdealLattice& n, mpfr_prec_t prec)
    : n_(n), k_(n.field()), emb_(k_->embeddings(prec)), d_(k_->degree()) {
  hnf_.assign(d_, std::vector<std::int64_t>(d_));
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) {
      const Integer& v = n.hnf()(i, j);
      if (!v.fits_slong_p() || abs(v) > Integer(1L << 30))
        throw InputError("ideal HNF entries too large for enumeration");
      hnf_[i][j] = v.get_si();
    }
  re_.assign(d_, std::vector<long double>(d_));
  im_ = re_;
  mag_ = re_;
  for (std::size_t s = 0; s < d_; ++s)
    for (std::size_t k = 0; k < d_; ++k) {
      re_[s][k] = to_ld(emb_->values(s, k).re);
      im_[s][k] = to_ld(emb_->values(s, k).im);
      mag_[s][k] = std::hypot(re_[s][k], im_[s][k]);
    }
}

std::pair<RealBasis, std::vector<std::vector<std::int64_t>>> LatticeGeometry::reduce(
    const std::vector<long double>& weights) const {
  RealBasis basis;
  basis.dim = d_;
  for (std::size_t j = 0; j < d_; ++j) {
    std::vector<long double> v;
    for (std::size_t s = 0; s < d_; ++s) {
      const auto& root = emb_->roots[s];
      if (!root.real && emb_->conj[s] < s) continue;
      long double zr = 0, zi = 0;
      for (std::size_t k = 0; k < d_; ++k) {
        zr += re_[s][k] * static_cast<long double>(hnf_[k][j]);
        zi += im_[s][k] * static_cast<long double>(hnf_[k][j]);
      }
      const long double w = std::sqrt(weights[s]);
      if (root.real) {
        v.push_back(w * zr);
      } else {
        v.push_back(std::sqrt(2.0L) * w * zr);
        v.push_back(std::sqrt(2.0L) * w * zi);
      }
    }
    basis.cols.push_back(std::move(v));
  }
  auto u = lll_reduce(basis);
  // Reduced basis in integral-basis coordinates.
  std::vector<std::vector<std::int64_t>> hu(d_, std::vector<std::int64_t>(d_, 0));
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = 0; j < d_; ++j) {
      __int128 acc = 0;
      for (std::size_t t = 0; t < d_; ++t) acc += static_cast<__int128>(hnf_[i][t]) * u[t][j];
      if (acc > (1LL << 40) || acc < -(1LL << 40))
        throw CertificationError("reduced basis coefficients out of range");
      hu[i][j] = static_cast<std::int64_t>(acc);
    }
  return {std::move(basis), std::move(hu)};
}

void LatticeGeometry::enumerate(
    const std::vector<long double>& weights, long double bound,
    const std::function<void(const std::vector<std::int64_t>&)>& fn) const {
  auto [basis, hu] = reduce(weights);
  std::vector<std::int64_t> x(d_);
  enumerate_ellipsoid(basis, bound, [&](const std::vector<std::int64_t>& y) {
    for (std::size_t i = 0; i < d_; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < d_; ++j) acc += hu[i][j] * y[j];
      x[i] = acc;
    }
    fn(x);
  });
}

LatticeGeometry::Side LatticeGeometry::quick_side(const std::vector<std::int64_t>& x,
                                                  std::size_t s, long double b) const {
  long double zr = 0, zi = 0, a = 0;
  for (std::size_t k = 0; k < d_; ++k) {
    if (x[k] == 0) continue;
    const auto xk = static_cast<long double>(x[k]);
    zr += re_[s][k] * xk;
    zi += im_[s][k] * xk;
    a += mag_[s][k] * std::fabs(xk);
  }
  // Generous bound on rounding in the sums, in |z| and in b itself.
  const long double err = a * 1e-15L + b * 1e-15L;
  const long double m = std::hypot(zr, zi);
  if (m < b - err) return Side::inside;
  if (m > b + err) return Side::outside;
  return Side::undecided;
}

bool LatticeGeometry::certified_inside(const IntVector& x, std::size_t s, const Rational& b,
                                       BoxCount& stats) const {
  ++stats.escalations;
  const Rational b2 = b * b;
  std::optional<RatPolynomial> residual;  // P / (t - B^2)^k when P(B^2) = 0
  bool exact_done = false;
  for (mpfr_prec_t prec = std::max<mpfr_prec_t>(emb_->precision, 256);
       prec <= k_->precision_ceiling(); prec *= 2) {
    auto emb = k_->embeddings(prec);
    Interval m2 = embed_value(*emb, s, x).abs2();
    const int c = m2.compare(b2);
    if (c < 0) return true;
    if (c > 0) return false;
    if (!exact_done) {
      exact_done = true;
      if (std::all_of(x.begin() + 1, x.end(), [](const Integer& v) { return v == 0; })) {
        ++stats.exact_ties;
        return Rational(x[0] * x[0]) <= b2;
      }
      // sigma(x) tau(x) over all pairs are the eigenvalues of M_x (x) M_x.
      IntMatrix mx = k_->mult_matrix(x);
      RatVector cp = charpoly(to_rational(kronecker(mx, mx)));
      RatPolynomial p(cp);
      RatPolynomial lin({-b2, Rational(1)});
      auto [q, r] = p.divmod_monic(lin);
      if (r.is_zero()) {
        while (true) {
          auto [q2, r2] = q.divmod_monic(lin);
          if (!r2.is_zero()) break;
          q = q2;
        }
        residual = q;
      }
    }
    if (residual && !eval_rat(*residual, m2).contains_zero()) {
      // |sigma(x)|^2 is a root of P in m2 but not of the residual: it is B^2.
      ++stats.exact_ties;
      return true;
    }
  }
  throw CertificationError("boundary test undecided at the precision ceiling for " +
                           k_->label());
}

BoxCount LatticeGeometry::count_box(const BoxBody& box) const {
  box.validate(*emb_);
  BoxCount out;
  std::vector<long double> weights(d_), radius(d_);
  for (std::size_t s = 0; s < d_; ++s) {
    radius[s] = to_ld(box.radii[s]);
    weights[s] = 1.0L / (radius[s] * radius[s]);
  }
  std::vector<std::size_t> sigmas;
  for (std::size_t s = 0; s < d_; ++s)
    if (emb_->roots[s].real || emb_->conj[s] > s) sigmas.push_back(s);

  std::vector<std::size_t> pending;
  enumerate(weights, static_cast<long double>(d_), [&](const std::vector<std::int64_t>& x) {
    ++out.candidates;
    pending.clear();
    for (std::size_t s : sigmas) {
      switch (quick_side(x, s, radius[s])) {
        case Side::outside: return;
        case Side::undecided: pending.push_back(s); break;
        case Side::inside: break;
      }
    }
    IntVector xi = to_int_vector(x);
    for (std::size_t s : pending)
      if (!certified_inside(xi, s, box.radii[s], out)) return;
    out.points.push_back(std::move(xi));
  });
  std::sort(out.points.begin(), out.points.end(), lex_less);
  out.count = out.points.size();
  out.rank = out.points.empty() ? 0 : rank(IntMatrix::from_columns(out.points, d_));
  return out;
}

Interval LatticeGeometry::norm2(std::span<const Integer> x, mpfr_prec_t prec) const {
  auto emb = k_->embeddings(prec);
  Interval acc(emb->values(0, 0).precision());
  for (std::size_t s = 0; s < d_; ++s) acc = acc + embed_value(*emb, s, x).abs2();
  return acc;
}

MinimaProfile LatticeGeometry::successive_minima() const {
  const std::vector<long double> ones(d_, 1.0L);
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(emb_->precision, 256);
  // lambda_d^2 is at most the largest squared length of the reduced
  // basis, certified with intervals.
  Interval bound_iv(prec);
  auto red = reduce(ones);
  for (std::size_t j = 0; j < d_; ++j) {
    IntVector c(d_);
    for (std::size_t i = 0; i < d_; ++i) c[i] = static_cast<long>(red.second[i][j]);
    Interval nj = norm2(c, prec);
    if (j == 0 || mpfr_greater_p(nj.hi(), bound_iv.hi())) bound_iv = nj;
  }
  long double bound = mpfr_get_ld(bound_iv.hi(), MPFR_RNDU) * (1 + 1e-15L);

  struct Cand {
    IntVector x;
    Interval n2;
  };
  std::vector<Cand> cands;
  auto collect = [&](long double r) {
    cands.clear();
    enumerate(ones, r, [&](const std::vector<std::int64_t>& x) {
      auto first = std::find_if(x.begin(), x.end(), [](std::int64_t v) { return v != 0; });
      if (first == x.end() || *first < 0) return;
      IntVector xi = to_int_vector(x);
      Interval n2 = norm2(xi, prec);
      cands.push_back({std::move(xi), std::move(n2)});
    });
  };
  collect(bound);

  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (mpfr_less_p(a.n2.lo(), b.n2.lo())) return true;
    if (mpfr_less_p(b.n2.lo(), a.n2.lo())) return false;
    return lex_less(b.x, a.x);
  });
  // Clusters of overlapping enclosures; inside a cluster the order is
  // descending lexicographic on coordinates.
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  for (std::size_t i = 0; i < cands.size();) {
    std::size_t j = i + 1;
    Interval hull = cands[i].n2;
    while (j < cands.size() && !hull.less_than(cands[j].n2)) {
      hull = Interval::join(hull, cands[j].n2);
      ++j;
    }
    std::sort(cands.begin() + i, cands.begin() + j,
              [](const Cand& a, const Cand& b) { return lex_less(b.x, a.x); });
    clusters.emplace_back(i, j);
    i = j;
  }

  MinimaProfile out;
  out.enumerated = cands.size();
  std::vector<IntVector> chosen;
  for (auto [lo, hi] : clusters) {
    Interval hull = cands[lo].n2;
    for (std::size_t i = lo + 1; i < hi; ++i) hull = Interval::join(hull, cands[i].n2);
    for (std::size_t i = lo; i < hi && chosen.size() < d_; ++i) {
      chosen.push_back(cands[i].x);
      if (rank(IntMatrix::from_columns(chosen, d_)) < chosen.size()) {
        chosen.pop_back();
        continue;
      }
      out.witnesses.push_back(cands[i].x);
      out.lambdas.push_back(sqrt(hull));
    }
    if (chosen.size() == d_) break;
  }
  if (out.witnesses.size() != d_)
    throw InternalInconsistency("successive minima: enumeration missed independent vectors");
  return out;
}

BoxCount count_box(const IdealLattice& n, const BoxBody& box) {
  return LatticeGeometry(n).count_box(box);
}

MinimaProfile successive_minima(const IdealLattice& n) {
  return LatticeGeometry(n).successive_minima();
}

}  // namespace nfc
