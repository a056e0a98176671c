#include "nfcount/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "nfcount/error.hpp"

namespace nfc {

namespace {

using cld = std::complex<long double>;

RatPolynomial to_rat(const IntPolynomial& f) {
  std::vector<Rational> c(f.coeffs().begin(), f.coeffs().end());
  return RatPolynomial(std::move(c));
}

RatPolynomial rat_rem(const RatPolynomial& a, const RatPolynomial& b) {
  std::vector<Rational> r = a.coeffs();
  const std::size_t db = b.coeffs().size() - 1;
  const Rational lb = b.lead();
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    Rational t = r[i] / lb;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
  }
  r.resize(std::min(r.size(), db));
  return RatPolynomial(std::move(r));
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<cld> aberth(const IntPolynomial& f) {
  const long d = f.degree();
  std::vector<long double> c(d + 1);
  for (long i = 0; i <= d; ++i) c[i] = f.coeff(i).get_d();
  long double bound = 0;
  for (long i = 0; i < d; ++i) bound = std::max(bound, std::fabs(c[i]));
  bound = 1 + bound;
  // Start on a circle whose radius matches the geometric mean of |roots|.
  long double r0 = std::pow(std::max<long double>(std::fabs(c[0]), 1e-6L),
                            1.0L / d);
  r0 = std::min(r0, bound);
  std::vector<cld> z(d);
  for (long k = 0; k < d; ++k)
    z[k] = std::polar(r0, 2 * std::numbers::pi_v<long double> * k / d + 0.4L);
  auto eval = [&](cld x, cld& fx, cld& dfx) {
    fx = c[d];
    dfx = 0;
    for (long i = d - 1; i >= 0; --i) {
      dfx = dfx * x + fx;
      fx = fx * x + c[i];
    }
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (long k = 0; k < d; ++k) {
      cld fx, dfx;
      eval(z[k], fx, dfx);
      if (std::abs(fx) == 0) continue;
      cld w = fx / dfx;
      cld s = 0;
      for (long j = 0; j < d; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      cld step = w / (1.0L - w * s);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1 + std::abs(z[k])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

ComplexInterval point(long double re, long double im, mpfr_prec_t prec) {
  Interval r(prec), i(prec);
  r = Interval::from_double(static_cast<double>(re), prec);
  i = Interval::from_double(static_cast<double>(im), prec);
  return {r, i};
}

ComplexInterval eval(const IntPolynomial& f, const ComplexInterval& z) {
  const mpfr_prec_t prec = z.precision();
  ComplexInterval acc{Interval(prec), Interval(prec)};
  for (long i = f.degree(); i >= 0; --i)
    acc = acc * z + ComplexInterval{Interval(f.coeff(i), prec), Interval(prec)};
  return acc;
}

ComplexInterval mid(const ComplexInterval& z) {
  return {z.re.midpoint(), z.im.midpoint()};
}

ComplexInterval at_precision(const ComplexInterval& z, mpfr_prec_t prec) {
  return {Interval(z.re.lo(), z.re.hi(), prec), Interval(z.im.lo(), z.im.hi(), prec)};
}

// Newton iteration with doubling precision; midpoints are kept so the
// iterate stays a point.
ComplexInterval newton(const IntPolynomial& f, ComplexInterval z, bool real,
                       mpfr_prec_t target) {
  const IntPolynomial df = f.derivative();
  mpfr_prec_t prec = std::min<mpfr_prec_t>(64, target);
  for (;;) {
    z = at_precision(z, prec);
    const int steps = prec >= target ? 3 : 2;
    for (int s = 0; s < steps; ++s) {
      ComplexInterval fz = eval(f, z), dfz = eval(df, z);
      if (dfz.contains_zero()) break;
      z = mid(z - fz / dfz);
      if (real) z.im = Interval(prec);
    }
    if (prec >= target) return z;
    prec = std::min<mpfr_prec_t>(2 * prec, target);
  }
}

void sort_roots(std::vector<RootBall>& roots) {
  std::sort(roots.begin(), roots.end(), [](const RootBall& a, const RootBall& b) {
    return mpfr_greater_p(a.center.re.lo(), b.center.re.lo());
  });
  // Group consecutive balls whose real projections overlap; order each
  // group by descending imaginary part.
  std::size_t start = 0;
  while (start < roots.size()) {
    std::size_t end = start + 1;
    while (end < roots.size() &&
           roots[end - 1].box().re.overlaps(roots[end].box().re))
      ++end;
    std::sort(roots.begin() + start, roots.begin() + end,
              [](const RootBall& a, const RootBall& b) {
                return mpfr_greater_p(a.center.im.lo(), b.center.im.lo());
              });
    start = end;
  }
}

bool radius_small_enough(const std::vector<RootBall>& roots, mpfr_prec_t prec) {
  for (const auto& r : roots) {
    if (mpfr_zero_p(r.radius.hi())) continue;
    if (mpfr_get_exp(r.radius.hi()) > -static_cast<mpfr_exp_t>(prec / 2))
      return false;
  }
  return true;
}

}  // namespace

unsigned count_real_roots(const IntPolynomial& f) {
  if (f.degree() < 1) return 0;
  std::vector<RatPolynomial> seq{to_rat(f), to_rat(f.derivative())};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    RatPolynomial r = rat_rem(seq[seq.size() - 2], seq.back());
    seq.push_back(r * Rational(-1));
  }
  std::vector<int> at_pos, at_neg;
  for (const auto& p : seq) {
    if (p.is_zero()) continue;
    const int s = sgn(p.lead());
    at_pos.push_back(s);
    at_neg.push_back(p.degree() % 2 == 0 ? s : -s);
  }
  return static_cast<unsigned>(sign_changes(at_neg) - sign_changes(at_pos));
}

bool certify_disks(const IntPolynomial& f, std::vector<RootBall>& roots) {
  const std::size_t d = roots.size();
  const mpfr_prec_t prec = roots.front().center.precision();
  Interval deg(static_cast<long>(d), prec);
  for (std::size_t i = 0; i < d; ++i) {
    ComplexInterval den{Interval(1L, prec), Interval(prec)};
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) den = den * (roots[i].center - roots[j].center);
    if (den.contains_zero()) return false;
    ComplexInterval w = eval(f, roots[i].center) / den;
    Interval r = deg * sqrt(w.abs2());
    roots[i].radius = Interval(r.hi(), r.hi(), prec);
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!roots[i].real && !(abs(roots[i].center.im) - roots[i].radius).positive())
      return false;
    for (std::size_t j = i + 1; j < d; ++j) {
      Interval dist2 = (roots[i].center - roots[j].center).abs2();
      Interval rs = sqr(roots[i].radius + roots[j].radius);
      if (!rs.less_than(dist2)) return false;
    }
  }
  return true;
}

std::vector<RootBall> isolate_roots(const IntPolynomial& f, mpfr_prec_t prec,
                                    mpfr_prec_t ceiling) {
  const long d = f.degree();
  if (d < 1 || !f.monic()) throw InputError("isolate_roots: need monic f");
  const unsigned r1 = count_real_roots(f);
  std::vector<cld> approx = aberth(f);

  // The r1 approximations closest to the real axis are the real roots.
  std::vector<std::size_t> order(d);
  for (long i = 0; i < d; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(approx[a].imag()) < std::fabs(approx[b].imag());
  });
  std::vector<RootBall> seeds;
  std::vector<bool> used(d, false);
  for (unsigned k = 0; k < r1; ++k) {
    RootBall b;
    b.real = true;
    b.center = point(approx[order[k]].real(), 0, 64);
    seeds.push_back(std::move(b));
    used[order[k]] = true;
  }
  for (long i = 0; i < d; ++i) {
    if (used[i] || approx[i].imag() <= 0) continue;
    RootBall b;
    b.center = point(approx[i].real(), approx[i].imag(), 64);
    seeds.push_back(std::move(b));
    used[i] = true;
  }
  if (seeds.size() * 2 != static_cast<std::size_t>(d) + r1)
    throw CertificationError("root isolation: conjugate pairing failed for " +
                             to_string(f));

  for (mpfr_prec_t work = std::max<mpfr_prec_t>(prec, 64) + 32; work <= ceiling + 32;
       work *= 2) {
    std::vector<RootBall> roots;
    for (const auto& s : seeds) {
      RootBall b;
      b.real = s.real;
      b.center = newton(f, s.center, s.real, work);
      roots.push_back(b);
      if (!s.real) {
        RootBall c;
        c.real = false;
        c.center = b.center.conj();
        roots.push_back(std::move(c));
      }
    }
    if (certify_disks(f, roots) && radius_small_enough(roots, prec)) {
      sort_roots(roots);
      return roots;
    }
  }
  throw CertificationError("root isolation failed below precision ceiling for " +
                           to_string(f));
}

std::vector<RootBall> refine_roots(const IntPolynomial& f,
                                   const std::vector<RootBall>& roots,
                                   mpfr_prec_t prec, mpfr_prec_t ceiling) {
  for (mpfr_prec_t work = prec + 32; work <= ceiling + 32; work *= 2) {
    std::vector<RootBall> out(roots.size());
    std::vector<bool> done(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (done[i]) continue;
      out[i].real = roots[i].real;
      out[i].center = newton(f, roots[i].center, roots[i].real, work);
      done[i] = true;
      if (!roots[i].real) {
        // Keep partners exactly conjugate.
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
          if (done[j] || roots[j].real) continue;
          if (mpfr_equal_p(roots[j].center.re.lo(), roots[i].center.re.lo()) &&
              mpfr_equal_p(roots[j].center.im.lo(), roots[i].center.im.hi()) == 0 &&
              roots[j].box().overlaps(roots[i].box().conj())) {
            out[j].real = false;
            out[j].center = out[i].center.conj();
            done[j] = true;
            break;
          }
        }
      }
    }
    if (!certify_disks(f, out) || !radius_small_enough(out, prec)) continue;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (!roots[i].box().overlaps(out[i].box()))
        throw InternalInconsistency("refined root left its enclosure");
    return out;
  }
  throw CertificationError("root refinement failed below precision ceiling");
}

}  // namespace nfc
