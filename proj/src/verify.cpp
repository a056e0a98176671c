#include "nfcount/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "nfcount/error.hpp"

namespace nfc {

namespace {

constexpr mpfr_prec_t kStartPrecision = 128;

// Determinant of a k x k complex interval matrix by dynamic programming over
// column subsets; no divisions, so enclosures stay tight.
ComplexInterval det_dp(const std::vector<std::vector<ComplexInterval>>& a, mpfr_prec_t prec) {
  const std::size_t k = a.size();
  std::vector<ComplexInterval> f(std::size_t{1} << k, ComplexInterval(prec));
  std::vector<bool> live(f.size(), false);
  f[0] = {Interval(1L, prec), Interval(prec)};
  live[0] = true;
  for (std::size_t mask = 0; mask < f.size(); ++mask) {
    if (!live[mask]) continue;
    const std::size_t i = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (i == k) continue;
    for (std::size_t c = 0; c < k; ++c) {
      if (mask >> c & 1) continue;
      ComplexInterval t = f[mask] * a[i][c];
      const std::size_t next = mask | (std::size_t{1} << c);
      if (__builtin_popcountll(mask >> (c + 1)) % 2) t = -t;
      f[next] = live[next] ? f[next] + t : t;
      live[next] = true;
    }
  }
  return f.back();
}

void check_elements(const IdealLattice& n, const std::vector<IntVector>& x) {
  const std::size_t d = n.degree();
  if (x.empty() || x.size() > d) throw InputError("need 1 <= |X| <= d");
  for (const auto& v : x) {
    if (v.size() != d) throw InputError("element has the wrong number of coordinates");
    if (!n.contains(v)) throw InputError("element of X is not in the ideal");
  }
}

bool independent(const std::vector<IntVector>& x, std::size_t d) {
  return rank(IntMatrix::from_columns(x, d)) == x.size();
}

// prod over (T, mult) of det^2(sigma(x))_{sigma in T}^mult, rounded to the
// certified integer.
CertifiedInteger certified_product(
    const NumberField& k, const std::vector<IntVector>& x,
    const std::vector<std::pair<std::vector<std::size_t>, std::size_t>>& subsets) {
  if (!independent(x, k.degree())) return {Interval(0L, kStartPrecision), Integer(0)};
  for (mpfr_prec_t prec = kStartPrecision; prec <= k.precision_ceiling(); prec *= 2) {
    auto emb = k.embeddings(prec);
    const mpfr_prec_t wp = emb->values(0, 0).precision();
    std::vector<std::vector<ComplexInterval>> values;  // values[j][sigma]
    for (const auto& v : x) values.push_back(evaluate_element(k, std::span<const Integer>(v), *emb));
    ComplexInterval prod{Interval(1L, wp), Interval(wp)};
    for (const auto& [t, mult] : subsets) {
      std::vector<std::vector<ComplexInterval>> a(t.size());
      for (std::size_t r = 0; r < t.size(); ++r)
        for (std::size_t j = 0; j < x.size(); ++j) a[r].push_back(values[j][t[r]]);
      ComplexInterval det = det_dp(a, wp);
      prod = prod * pow(det * det, mult);
    }
    if (!prod.im.contains_zero())
      throw InternalInconsistency("minor product is not real for " + k.label() +
                                  "; the Galois action is inconsistent");
    if (auto v = prod.re.unique_integer()) return {prod.re, *v};
  }
  throw CertificationError("minor product not certified below the precision ceiling for " +
                           k.label());
}

Integer exact_quotient(const Integer& num, const Integer& den, const char* what) {
  if (num % den != 0) throw InternalInconsistency(std::string("non-integral exponent: ") + what);
  return num / den;
}

Integer pow_int(const Integer& b, const Integer& e) {
  if (e < 0 || !e.fits_ulong_p()) throw InputError("exponent out of range");
  return ipow(b, e.get_ui());
}

bool divides(const Integer& d, const Integer& v) { return v == 0 || v % d == 0; }

// Certified sign of q - c where q = scale pi^pw / sqrt(disc) + shift.
struct Comparison {
  int sign = 0;
  Interval value;
};

Comparison compare_bound(const Rational& scale, unsigned pw, const Integer& disc,
                         const Rational& shift, const Rational& c, mpfr_prec_t ceiling) {
  if (pw == 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
    Rational q = scale / Rational(root) + shift;
    return {q < c ? -1 : (q > c ? 1 : 0), Interval(q, kStartPrecision)};
  }
  // Irrational: never equal to c, so some precision decides.
  for (mpfr_prec_t prec = kStartPrecision; prec <= ceiling; prec *= 2) {
    Interval q = Interval(scale, prec) * pow(Interval::pi(prec), pw) /
                     sqrt(Interval(disc, prec)) +
                 Interval(shift, prec);
    int s = q.compare(c);
    if (s != 0) return {s, q};
  }
  throw CertificationError("bound comparison undecided at the precision ceiling");
}

double mid_log(const Interval& x) { return std::log(x.mid()); }

std::string describe(const std::vector<IntVector>& x) {
  std::string s = "[";
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) s += ";";
    for (std::size_t i = 0; i < x[j].size(); ++i) s += (i ? "," : "") + x[j][i].get_str();
  }
  return s + "]";
}

std::string describe(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

std::string describe(const BoxBody& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.radii.size(); ++i) s += (i ? "," : "") + to_string(b.radii[i]);
  return s + ")";
}

std::string pad(std::size_t v, int width) {
  std::string s = std::to_string(v);
  return std::string(s.size() < static_cast<std::size_t>(width) ? width - s.size() : 0, '0') + s;
}

std::string fixed(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

CertifiedInteger orbit_minor_product(const IdealLattice& n, const std::vector<IntVector>& x,
                                     const std::vector<std::size_t>& s,
                                     const GaloisAction& g) {
  check_elements(n, x);
  if (s.size() != x.size()) throw InputError("|S| must equal |X|");
  if (g.degree() != n.degree()) throw InputError("Galois action has the wrong degree");
  return certified_product(*n.field(), x, g.subset_orbit_multiset(s));
}

CertifiedInteger all_minor_product(const IdealLattice& n, const std::vector<IntVector>& x) {
  check_elements(n, x);
  const std::size_t d = n.degree(), m = x.size();
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> subsets;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != m) continue;
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) t.push_back(i);
    subsets.emplace_back(std::move(t), 1);
  }
  return certified_product(*n.field(), x, subsets);
}

DivisibilityReport verify_thm3(const IdealLattice& n, const std::vector<IntVector>& x,
                               const std::vector<std::size_t>& s, const GaloisAction& g,
                               const Integer& tame) {
  DivisibilityReport r;
  r.product = orbit_minor_product(n, x, s, g);
  const Integer order(static_cast<unsigned long>(g.order()));
  const long d = static_cast<long>(n.degree()), m = static_cast<long>(x.size());
  const Integer idx_exp = exact_quotient(order * 2 * m, Integer(d), "index");
  const Integer general_exp =
      2 * m > d ? exact_quotient(order * (2 * m - d), Integer(d), "general") : Integer(0);
  const Integer general = pow_int(tame, general_exp) * pow_int(n.index(), idx_exp);
  r.two_homogeneous = g.is_two_homogeneous();
  if (r.two_homogeneous) {
    const Integer improved_exp =
        exact_quotient(order * m * (m - 1), Integer(d * (d - 1)), "2-homogeneous");
    r.required_divisor = pow_int(tame, improved_exp) * pow_int(n.index(), idx_exp);
    r.general_divisor = general;
  } else {
    r.required_divisor = general;
  }
  r.zero_flag = r.product.value == 0;
  r.pass = divides(r.required_divisor, r.product.value) &&
           (!r.general_divisor || divides(*r.general_divisor, r.product.value));
  r.uncertified_group_flag = !g.certified();
  return r;
}

DivisibilityReport verify_thm4(const IdealLattice& n, const std::vector<IntVector>& x,
                               const Integer& tame) {
  const std::size_t d = n.degree(), m = x.size();
  if (m < 2 || m > d) throw InputError("all-minor divisibility needs 2 <= m <= d");
  DivisibilityReport r;
  r.product = all_minor_product(n, x);
  r.required_divisor = pow_int(tame, binomial(d - 2, m - 2)) *
                       pow_int(n.index(), 2 * binomial(d - 1, m - 1));
  r.zero_flag = r.product.value == 0;
  r.pass = divides(r.required_divisor, r.product.value);
  return r;
}

CountingReport verify_counting(const LatticeGeometry& g, const BoxBody& box) {
  const NumberField& k = *g.ideal().field();
  const unsigned d = static_cast<unsigned>(k.degree());
  const Integer disc = abs(k.discriminant());
  const Rational idx(g.ideal().index());
  CountingReport r;
  BoxCount bc = g.count_box(box);
  r.count = bc.count;
  r.rank = bc.rank;
  r.volume = box_volume(k, box);
  const Rational count(static_cast<unsigned long>(r.count));
  auto lo = compare_bound(r.volume.coeff / (Rational(ipow(Integer(2), d)) * idx),
                          r.volume.pi_power, disc, 0, count, k.precision_ceiling());
  r.lower_bound = lo.value;
  r.lower_pass = lo.sign <= 0;
  if (r.rank == d) {
    auto up = compare_bound(Rational(factorial(d)) * r.volume.coeff / idx, r.volume.pi_power,
                            disc, Rational(d), count, k.precision_ceiling());
    r.upper_bound = up.value;
    r.upper_pass = up.sign >= 0;
  }
  r.pass = r.lower_pass && r.upper_pass;
  return r;
}

MinimaReport verify_minima(const IdealLattice& n, const GaloisAction* g) {
  const NumberField& k = *n.field();
  const unsigned d = static_cast<unsigned>(k.degree());
  const mpfr_prec_t prec = 256;
  MinimaReport r;
  r.minima = successive_minima(n);
  Interval prod(1L, prec);
  for (const auto& l : r.minima.lambdas) prod = prod * l;
  r.product_volume = prod * unit_ball_volume(d).enclosure(prec);
  const Interval covol =
      sqrt(Interval(Integer(abs(k.discriminant())), prec)) * Interval(n.index(), prec);
  const Interval two_d(ipow(Integer(2), d), prec);
  r.upper = two_d * covol;
  r.lower = r.upper / Interval(factorial(d), prec);
  r.pass = r.lower.less_than(r.product_volume) && r.product_volume.less_than(r.upper);

  // Ratios for the statements with unspecified constants (report only).
  const double ld = std::log(std::fabs(k.discriminant().get_d()));
  const double li = std::log(n.index().get_d());
  std::vector<double> ll;
  for (const auto& l : r.minima.lambdas) ll.push_back(mid_log(l));
  auto sum = [&](unsigned a, unsigned b) {  // log lambda_a ... lambda_b, 1-based
    double s = 0;
    for (unsigned i = a; i <= b; ++i) s += ll[i - 1];
    return s;
  };
  auto add = [&](const char* name, unsigned m, double log_value) {
    r.ratios.push_back({name, m, std::exp(log_value)});
  };
  const double dd = d;
  add("product", d, sum(1, d) - 0.5 * ld - li);
  const bool two = g && g->is_two_homogeneous();
  for (unsigned m = 1; m < d; ++m) {
    add("head", m, sum(1, m) - std::max(0.0, m / dd - 0.5) * ld - m / dd * li);
    add("tail", m, sum(m + 1, d) - std::min(0.5, 1 - m / dd) * ld - (1 - m / dd) * li);
    if (two) {
      add("head-2h", m, sum(1, m) - m * (m - 1.0) / (2 * dd * (dd - 1)) * ld - m / dd * li);
      add("tail-2h", m,
          sum(m + 1, d) - (dd - m) * (dd + m - 1) / (2 * dd * (dd - 1)) * ld -
              (1 - m / dd) * li);
    }
  }
  for (unsigned m = 1; m <= d; ++m) {
    add("lambda-lo", m, ll[m - 1] - std::max(0.0, 1 / dd - 1 / (2.0 * m)) * ld - li / dd);
    add("lambda-hi", m, ll[m - 1] - std::min(1 / (2 * dd - 2 * m + 2), 1 / dd) * ld - li / dd);
    if (two) {
      add("lambda-lo-2h", m, ll[m - 1] - (m - 1) / (2 * dd * (dd - 1)) * ld - li / dd);
      add("lambda-hi-2h", m, ll[m - 1] - (dd + m - 2) / (2 * dd * (dd - 1)) * ld - li / dd);
    }
  }
  return r;
}

MahlerReport verify_mahler_basis(const LatticeGeometry& g, const BoxBody& box,
                                 std::size_t cap) {
  const std::size_t d = g.ideal().degree();
  MahlerReport r;
  r.premise = g.count_box(box.scaled(Rational(1, static_cast<long>(d)))).rank == d;
  if (!r.premise) {
    r.pass = true;
    return r;
  }
  BoxCount bc = g.count_box(box);
  // One of each +-x pair; a basis may use either sign.
  std::vector<IntVector> pts;
  for (auto& p : bc.points) {
    auto first = std::find_if(p.begin(), p.end(), [](const Integer& v) { return v != 0; });
    if (first != p.end() && *first > 0) pts.push_back(p);
  }
  r.points = pts.size();
  if (pts.size() > cap) {
    r.skipped = true;
    r.pass = true;
    return r;
  }
  const mpfr_prec_t prec = 128;
  // Short vectors first; equal norms (to 1e-9) in descending coordinate order.
  std::vector<long long> norm(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    norm[i] = std::llround(g.norm2(pts[i], prec).mid() * 1e9);
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (norm[a] != norm[b]) return norm[a] < norm[b];
    return pts[b] < pts[a];
  });
  const Integer target = g.ideal().index();
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> search = [&](std::size_t from) {
    if (pick.size() == d) {
      std::vector<IntVector> cols;
      for (auto i : pick) cols.push_back(pts[order[i]]);
      if (abs(determinant(IntMatrix::from_columns(cols, d))) != target) return false;
      r.basis = std::move(cols);
      return true;
    }
    for (std::size_t i = from; i < order.size(); ++i) {
      pick.push_back(i);
      // prune dependent prefixes
      std::vector<IntVector> cols;
      for (auto j : pick) cols.push_back(pts[order[j]]);
      if (rank(IntMatrix::from_columns(cols, d)) == pick.size() && search(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  r.found = search(0);
  r.pass = r.found;
  return r;
}

ChebotarevReport chebotarev_minors(unsigned p, mpfr_prec_t ceiling) {
  if (p < 2 || !is_probable_prime(Integer(p))) throw InputError("chebotarev: p must be prime");
  if (p > 13) throw InputError("chebotarev: p too large for exhaustive minors");
  ChebotarevReport r;
  r.p = p;
  const std::size_t n = p - 1;
  struct Minor {
    unsigned rows, cols;
  };
  std::vector<Minor> pending;
  for (unsigned rows = 1; rows < (1u << n); ++rows)
    for (unsigned cols = 1; cols < (1u << n); ++cols)
      if (__builtin_popcount(rows) == __builtin_popcount(cols)) pending.push_back({rows, cols});
  r.minors = pending.size();
  r.smallest = INFINITY;
  for (mpfr_prec_t prec = kStartPrecision; prec <= ceiling && !pending.empty(); prec *= 2) {
    std::vector<ComplexInterval> zeta;  // zeta^e, 0 <= e < p
    for (unsigned e = 0; e < p; ++e) {
      Interval t = Interval::pi(prec) * Interval(Rational(2 * e, p), prec);
      zeta.push_back({cos(t), sin(t)});
    }
    std::vector<Minor> still;
    for (const auto& mn : pending) {
      std::vector<unsigned> rs, cs;
      for (unsigned i = 0; i < n; ++i) {
        if (mn.rows >> i & 1) rs.push_back(i + 1);
        if (mn.cols >> i & 1) cs.push_back(i + 1);
      }
      std::vector<std::vector<ComplexInterval>> a(rs.size());
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (unsigned c : cs) a[i].push_back(zeta[(rs[i] * c) % p]);
      ComplexInterval det = det_dp(a, prec);
      if (det.contains_zero()) {
        still.push_back(mn);
      } else {
        ++r.nonzero;
        r.smallest = std::min(r.smallest, std::sqrt(det.abs2().mid()));
      }
    }
    pending = std::move(still);
  }
  r.pass = pending.empty();
  return r;
}

std::optional<double> fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 1e-300) return std::nullopt;
  return sxy / sxx;
}

std::vector<FieldSpec> pure_family(unsigned d, unsigned long pmin, unsigned long pmax) {
  std::vector<FieldSpec> out;
  for (unsigned p : primes_up_to(static_cast<unsigned>(pmax)))
    if (p >= pmin) out.push_back(pure_spec(d, Integer(p)));
  return out;
}

std::vector<FieldSpec> quadratic_family(long mmin, long mmax) {
  std::vector<FieldSpec> out;
  for (long m = mmin; m <= mmax; ++m)
    if (m != 0 && m != 1 && is_squarefree(Integer(m))) out.push_back(quadratic_spec(m));
  return out;
}

ScanResult scan_family(const std::vector<FieldSpec>& family, unsigned workers,
                       mpfr_prec_t ceiling) {
  ScanResult res;
  res.rows.resize(family.size());
  parallel_for(family.size(), workers, [&](std::size_t i) {
    ScanRow& row = res.rows[i];
    row.label = family[i].label;
    try {
      FieldEntry e = load_field(family[i], ceiling);
      if (e.error) throw InputError(*e.error);
      row.disc = e.field->discriminant();
      row.tame = tame_discriminant(*e.primes).value;
      auto o = IdealLattice::unit(e.field);
      row.index = o.index();
      for (const auto& l : successive_minima(o).lambdas) row.lambdas.push_back(l.mid());
    } catch (const std::exception& ex) {
      row.error = ex.what();
    }
  });
  std::size_t dmax = 0;
  for (const auto& row : res.rows)
    if (!row.error) dmax = std::max(dmax, row.lambdas.size());
  for (std::size_t m = 1; m <= dmax; ++m) {
    std::vector<double> x, y;
    for (const auto& row : res.rows)
      if (!row.error && row.lambdas.size() >= m) {
        x.push_back(std::log(std::fabs(row.disc.get_d())));
        y.push_back(std::log(row.lambdas[m - 1]));
      }
    res.slopes.push_back(fit_slope(x, y));
  }
  return res;
}

// Suites ------------------------------------------------------------------

std::uint64_t mix_seed(std::uint64_t seed, const std::string& key) {
  std::uint64_t h = 1469598103934665603ULL ^ (seed * 0x9E3779B97F4A7C15ULL);
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  // splitmix64 finalizer
  h += 0x9E3779B97F4A7C15ULL;
  h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ULL;
  h = (h ^ (h >> 27)) * 0x94D049BB133111EBULL;
  return h ^ (h >> 31);
}

std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<IntVector> random_elements(const IdealLattice& n, std::size_t m,
                                       std::uint64_t seed, double dependent_rate, int h) {
  const std::size_t d = n.degree();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-h, h);
  std::uniform_real_distribution<double> unit(0, 1);
  auto sample = [&]() {
    IntVector x(d);
    for (std::size_t j = 0; j < d; ++j) {
      const int c = coord(rng);
      if (c == 0) continue;
      for (std::size_t i = 0; i < d; ++i) x[i] += c * n.hnf()(i, j);
    }
    return x;
  };
  const bool dependent = unit(rng) < dependent_rate;
  std::vector<IntVector> out;
  if (dependent) {
    if (m == 1) return {IntVector(d)};
    for (std::size_t j = 0; j + 1 < m; ++j) out.push_back(sample());
    std::uniform_int_distribution<int> small(-2, 2);
    IntVector last(d);
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const int c = small(rng);
      for (std::size_t i = 0; i < d; ++i) last[i] += c * out[j][i];
    }
    out.push_back(std::move(last));
    return out;
  }
  do {
    out.clear();
    for (std::size_t j = 0; j < m; ++j) out.push_back(sample());
  } while (!independent(out, d));
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thm1",  "thm3",  "thm4",   "thm5",      "counting",
                                              "minima", "gram", "tame", "mahler", "chebotarev"};
  return names;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Job {
  std::string key;
  std::function<std::vector<Record>()> run;
};

Record failure(const std::string& key, const std::string& theorem, const std::string& what) {
  Record r;
  r.key = key;
  r.theorem = theorem;
  r.digest = digest(key);
  r.pass = false;
  r.detail = what;
  return r;
}

BoxBody random_box(const EmbeddingSet& emb, std::mt19937_64& rng, long lo_quarters,
                   long hi_units) {
  // Rational radii k / q with q in {1, ..., 4}, within [lo/4, hi].
  std::uniform_int_distribution<long> den(1, 4);
  BoxBody box{std::vector<Rational>(emb.size())};
  for (std::size_t s = 0; s < emb.size(); ++s) {
    if (emb.conj[s] < s) continue;
    const long q = den(rng);
    const long kmin = (lo_quarters * q + 3) / 4;
    std::uniform_int_distribution<long> num(kmin, hi_units * q);
    Rational r(num(rng), q);
    r.canonicalize();
    box.radii[s] = box.radii[emb.conj[s]] = r;
  }
  return box;
}

std::vector<std::size_t> random_subset(std::size_t d, std::size_t m, std::mt19937_64& rng) {
  std::vector<std::size_t> all(d);
  for (std::size_t i = 0; i < d; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(m);
  std::sort(all.begin(), all.end());
  return all;
}

std::string ideal_key(std::size_t pos, const IdealLattice& n) {
  return "n" + pad(pos, 3) + "[" + n.index().get_str() + "]";
}

void divisibility_jobs(const std::string& thm, const FieldEntry& e,
                       const std::vector<IdealLattice>& ideals, const SuiteParams& prm,
                       std::vector<Job>& jobs) {
  const std::size_t d = e.field->degree();
  auto tame = std::make_shared<Integer>(tame_discriminant(*e.primes).value);
  for (std::size_t pos = 0; pos < ideals.size(); ++pos)
    for (std::size_t m = (thm == "thm4" ? 2 : 1); m <= d; ++m) {
      const std::string base = thm + "/" + e.spec.label + "/" + ideal_key(pos, ideals[pos]) +
                               "/m" + std::to_string(m);
      jobs.push_back({base, [&e, &ideals, &prm, thm, pos, m, base, tame]() {
                        std::vector<Record> out;
                        const auto& n = ideals[pos];
                        for (unsigned t = 0; t < prm.x_trials; ++t) {
                          const std::string key = base + "/t" + pad(t, 2);
                          const auto t0 = Clock::now();
                          const std::uint64_t s = mix_seed(prm.seed, key);
                          auto x = random_elements(n, m, s, prm.dependent_rate);
                          std::mt19937_64 rng(s ^ 0x5bd1e995);
                          std::string inputs = e.spec.label + " " + n.hnf().column(0)[0].get_str() +
                                               " X=" + describe(x);
                          try {
                            DivisibilityReport rep;
                            if (thm == "thm3") {
                              auto S = random_subset(n.degree(), m, rng);
                              inputs += " S=" + describe(S);
                              rep = verify_thm3(n, x, S, *e.action, *tame);
                            } else {
                              rep = verify_thm4(n, x, *tame);
                            }
                            Record r;
                            r.key = key;
                            r.theorem = thm;
                            r.digest = digest(inputs);
                            r.product = rep.product.value.get_str();
                            r.divisor = rep.required_divisor.get_str();
                            r.pass = rep.pass;
                            r.zero_flag = rep.zero_flag;
                            r.tainted = rep.uncertified_group_flag;
                            if (rep.general_divisor)
                              r.detail = "2-homogeneous; general divisor " +
                                         rep.general_divisor->get_str();
                            r.wall_ms = ms_since(t0);
                            out.push_back(std::move(r));
                          } catch (const std::exception& ex) {
                            out.push_back(failure(key, thm, ex.what()));
                          }
                        }
                        return out;
                      }});
    }
}

void counting_jobs(const FieldEntry& e, const std::vector<IdealLattice>& ideals,
                   const SuiteParams& prm, bool lower, bool upper, std::vector<Job>& jobs) {
  constexpr unsigned kChunk = 50;
  for (unsigned start = 0; start < prm.box_trials; start += kChunk) {
    const std::string base = "count/" + e.spec.label + "/c" + pad(start / kChunk, 3);
    jobs.push_back({base, [&e, &ideals, &prm, start, lower, upper]() {
                      std::vector<Record> out;
                      std::map<std::size_t, std::unique_ptr<LatticeGeometry>> geo;
                      const unsigned end = std::min(prm.box_trials, start + kChunk);
                      for (unsigned t = start; t < end; ++t) {
                        const std::size_t pos = t % ideals.size();
                        const std::string tail = "/" + e.spec.label + "/t" + pad(t, 4);
                        const auto t0 = Clock::now();
                        try {
                          auto& g = geo[pos];
                          if (!g) g = std::make_unique<LatticeGeometry>(ideals[pos]);
                          std::mt19937_64 rng(mix_seed(prm.seed, "box" + tail));
                          BoxBody box = random_box(g->embeddings(), rng, 2, 6);
                          CountingReport rep = verify_counting(*g, box);
                          const std::string inputs =
                              e.spec.label + " " + ideal_key(pos, ideals[pos]) + " B=" + describe(box);
                          const double ms = ms_since(t0);
                          const std::string detail = "count " + std::to_string(rep.count) +
                                                     " rank " + std::to_string(rep.rank);
                          if (lower) {
                            Record r;
                            r.key = "thm1" + tail;
                            r.theorem = "thm1";
                            r.digest = digest(inputs);
                            r.product = std::to_string(rep.count);
                            r.divisor = rep.lower_bound.str(15);
                            r.pass = rep.lower_pass;
                            r.detail = detail;
                            r.wall_ms = ms;
                            out.push_back(std::move(r));
                          }
                          if (upper && rep.upper_bound) {
                            Record r;
                            r.key = "thm5" + tail;
                            r.theorem = "thm5";
                            r.digest = digest(inputs);
                            r.product = std::to_string(rep.count);
                            r.divisor = rep.upper_bound->str(15);
                            r.pass = rep.upper_pass;
                            r.detail = detail;
                            r.wall_ms = ms;
                            out.push_back(std::move(r));
                          }
                        } catch (const std::exception& ex) {
                          out.push_back(failure((lower ? "thm1" : "thm5") + tail,
                                                lower ? "thm1" : "thm5", ex.what()));
                        }
                      }
                      return out;
                    }});
  }
}

void mahler_jobs(const FieldEntry& e, const SuiteParams& prm, std::vector<Job>& jobs) {
  const std::string base = "mahler/" + e.spec.label;
  jobs.push_back({base, [&e, &prm, base]() {
                    std::vector<Record> out;
                    LatticeGeometry g(IdealLattice::unit(e.field));
                    unsigned attempts = 0, vacuous = 0;
                    while (out.size() < prm.mahler_trials && attempts < 20 * prm.mahler_trials) {
                      const std::string key = base + "/a" + pad(attempts, 4);
                      ++attempts;
                      const auto t0 = Clock::now();
                      try {
                        std::mt19937_64 rng(mix_seed(prm.seed, key));
                        BoxBody box = random_box(g.embeddings(), rng, 4, 8);
                        MahlerReport rep = verify_mahler_basis(g, box, prm.mahler_cap);
                        if (!rep.premise) {
                          ++vacuous;
                          continue;
                        }
                        Record r;
                        r.key = key;
                        r.theorem = "mahler";
                        r.digest = digest(e.spec.label + " B=" + describe(box));
                        r.product = std::to_string(rep.points);
                        r.divisor = rep.found ? describe(rep.basis) : "";
                        r.pass = rep.pass;
                        r.skipped = rep.skipped;
                        r.wall_ms = ms_since(t0);
                        out.push_back(std::move(r));
                      } catch (const std::exception& ex) {
                        out.push_back(failure(key, "mahler", ex.what()));
                      }
                    }
                    // Large covolume makes the premise rare; a shortfall is
                    // recorded but is not a violation.
                    if (out.size() < prm.mahler_trials) {
                      Record r = failure(base + "/premise", "mahler",
                                         "only " + std::to_string(out.size()) +
                                             " boxes satisfy the premise");
                      r.pass = true;
                      r.skipped = true;
                      out.push_back(std::move(r));
                    }
                    (void)vacuous;
                    return out;
                  }});
}

}  // namespace

std::vector<Record> run_suite(const std::string& suite, const std::vector<FieldEntry>& fields,
                              const SuiteParams& prm) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw InputError("unknown suite: " + suite);
  std::vector<Record> records;
  std::vector<Job> jobs;
  // Ideal lists live here; jobs reference them.
  std::vector<std::vector<IdealLattice>> ideal_store;
  ideal_store.reserve(fields.size());

  if (suite == "chebotarev") {
    for (unsigned p : {2u, 3u, 5u, 7u})
      jobs.push_back({"chebotarev/p" + std::to_string(p), [p]() {
                        const auto t0 = Clock::now();
                        ChebotarevReport rep = chebotarev_minors(p);
                        Record r;
                        r.key = "chebotarev/p" + std::to_string(p);
                        r.theorem = "chebotarev";
                        r.digest = digest(r.key);
                        r.product = std::to_string(rep.nonzero);
                        r.divisor = std::to_string(rep.minors);
                        r.pass = rep.pass;
                        r.detail = "smallest |minor| " + fixed(rep.smallest, 6);
                        r.wall_ms = ms_since(t0);
                        return std::vector<Record>{r};
                      }});
  }

  for (const auto& e : fields) {
    if (suite == "chebotarev") break;
    const std::string label = e.spec.label;
    if (e.error) {
      records.push_back(failure(suite + "/" + label + "/load", suite, *e.error));
      continue;
    }
    const std::size_t d = e.field->degree();
    try {
      if (suite == "thm3" || suite == "thm4") {
        if (suite == "thm3" && !e.action) {
          records.push_back(failure(suite + "/" + label + "/galois", suite,
                                    "no Galois action configured"));
          continue;
        }
        ideal_store.push_back(ideals_up_to(*e.primes, prm.ideal_index_cap));
        divisibility_jobs(suite, e, ideal_store.back(), prm, jobs);
      } else if (suite == "thm1" || suite == "thm5" || suite == "counting") {
        ideal_store.push_back(ideals_up_to(*e.primes, prm.box_index_cap));
        counting_jobs(e, ideal_store.back(), prm, suite != "thm5", suite != "thm1", jobs);
      } else if (suite == "minima" || suite == "gram") {
        ideal_store.push_back(ideals_up_to(*e.primes, prm.minima_index_cap));
        const auto& ideals = ideal_store.back();
        for (std::size_t pos = 0; pos < ideals.size(); ++pos) {
          const std::string key = suite + "/" + label + "/" + ideal_key(pos, ideals[pos]);
          jobs.push_back({key, [&e, &ideals, pos, key, suite]() {
                            const auto t0 = Clock::now();
                            Record r;
                            r.key = key;
                            r.theorem = suite;
                            std::ostringstream hnf;
                            for (std::size_t i = 0; i < ideals[pos].degree(); ++i)
                              for (std::size_t j = 0; j < ideals[pos].degree(); ++j)
                                hnf << ideals[pos].hnf()(i, j) << ' ';
                            r.digest = digest(e.spec.label + " " + hnf.str());
                            try {
                              if (suite == "gram") {
                                GramCheck gc = gram_check(ideals[pos]);
                                r.product = gc.det.str(25);
                                r.divisor = gc.expected.get_str();
                                r.pass = gc.pass;
                                r.detail = "relative width " + fixed(gc.relative_width, 3);
                              } else {
                                MinimaReport mr = verify_minima(
                                    ideals[pos], e.action ? &*e.action : nullptr);
                                r.product = mr.product_volume.str(15);
                                r.divisor = "[" + mr.lower.str(15) + ", " + mr.upper.str(15) + "]";
                                r.pass = mr.pass;
                                r.tainted = e.action && !e.action->certified();
                                std::string lam;
                                for (auto& l : mr.minima.lambdas)
                                  lam += (lam.empty() ? "" : " ") + fixed(l.mid());
                                r.detail = "lambda " + lam + "; product " +
                                           fixed(mr.ratios.front().value);
                              }
                            } catch (const std::exception& ex) {
                              return std::vector<Record>{failure(key, suite, ex.what())};
                            }
                            r.wall_ms = ms_since(t0);
                            return std::vector<Record>{r};
                          }});
        }
      } else if (suite == "tame") {
        const auto t0 = Clock::now();
        Record r;
        r.key = "tame/" + label;
        r.theorem = "tame";
        r.digest = digest(label);
        try {
          TameDiscriminant td = tame_discriminant(*e.primes);
          const Integer disc = abs(e.field->discriminant());
          r.product = e.field->discriminant().get_str();
          r.divisor = td.value.get_str();
          r.pass = disc % td.value == 0 && disc < ipow(Integer(2), d * d * d) * td.value;
        } catch (const std::exception& ex) {
          r.pass = false;
          r.detail = ex.what();
        }
        r.wall_ms = ms_since(t0);
        records.push_back(std::move(r));
      } else if (suite == "mahler") {
        if (d <= 3) mahler_jobs(e, prm, jobs);
      }
    } catch (const std::exception& ex) {
      records.push_back(failure(suite + "/" + label + "/setup", suite, ex.what()));
    }
  }

  std::vector<std::vector<Record>> results(jobs.size());
  parallel_for(jobs.size(), prm.workers, [&](std::size_t i) {
    try {
      results[i] = jobs[i].run();
    } catch (const std::exception& ex) {
      results[i] = {failure(jobs[i].key, suite, ex.what())};
    }
  });
  for (auto& batch : results)
    for (auto& r : batch) records.push_back(std::move(r));
  // Unproved irreducibility taints everything computed in that field.
  for (const auto& e : fields) {
    if (!e.field || e.field->irreducibility_verified()) continue;
    const std::string mid = "/" + e.spec.label + "/", tail = "/" + e.spec.label;
    for (auto& r : records)
      if (r.key.find(mid) != std::string::npos || r.key.ends_with(tail)) r.tainted = true;
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const Record& a, const Record& b) { return a.key < b.key; });
  return records;
}

}  // namespace nfc
