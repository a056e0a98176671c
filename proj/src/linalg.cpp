#include "nfcount/linalg.hpp"

#include <algorithm>
#include <utility>

#include "nfcount/error.hpp"

namespace nfc {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

RatVector to_rational(std::span<const Integer> v) {
  return RatVector(v.begin(), v.end());
}

namespace {

void swap_rows(IntMatrix& a, std::size_t r1, std::size_t r2) {
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

// Fraction-free row echelon form in place; returns pivot columns.
std::vector<std::size_t> bareiss_echelon(IntMatrix& a, int* sign = nullptr) {
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t row = 0;
  if (sign) *sign = 1;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row) {
      swap_rows(a, p, row);
      if (sign) *sign = -*sign;
    }
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      for (std::size_t j = col + 1; j < a.cols(); ++j) {
        Integer t = a(i, j) * a(row, col) - a(i, col) * a(row, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, col) = 0;
    }
    prev = a(row, col);
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::size_t> gauss_echelon(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(row, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void reduce_mod(IntVector& v, std::size_t upto, const Integer& r) {
  for (std::size_t k = 0; k < upto; ++k)
    mpz_fdiv_r(v[k].get_mpz_t(), v[k].get_mpz_t(), r.get_mpz_t());
}

// Combine the working columns so that at most one has a nonzero entry in
// row i; returns its index in `cols` or -1.  Entries in rows <= i are
// reduced modulo `modulus` when one is given.
long eliminate_row(std::vector<IntVector>& cols, std::size_t i,
                   const Integer* modulus) {
  long piv = -1;
  Integer g, u, v;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c][i] == 0) continue;
    if (piv < 0) {
      piv = static_cast<long>(c);
      continue;
    }
    IntVector& p = cols[piv];
    IntVector& y = cols[c];
    const Integer x = p[i];
    const Integer yi = y[i];
    if (mpz_divisible_p(yi.get_mpz_t(), x.get_mpz_t())) {
      Integer q = yi / x;
      for (std::size_t k = 0; k <= i; ++k) y[k] -= q * p[k];
    } else {
      mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), x.get_mpz_t(),
                 yi.get_mpz_t());
      Integer xg = x / g, yg = yi / g;
      for (std::size_t k = 0; k <= i; ++k) {
        Integer np = u * p[k] + v * y[k];
        y[k] = xg * y[k] - yg * p[k];
        p[k] = std::move(np);
      }
    }
    if (modulus) {
      reduce_mod(p, i + 1, *modulus);
      reduce_mod(y, i + 1, *modulus);
    }
  }
  return piv;
}

// Reduce entries in each pivot row to [0, pivot) using earlier columns.
void reduce_above(std::vector<IntVector>& w,
                  const std::vector<std::size_t>& pivot_rows) {
  for (std::size_t c = 1; c < w.size(); ++c) {
    for (std::size_t e = c; e-- > 0;) {
      const std::size_t r = pivot_rows[e];
      Integer q = floor_div(w[c][r], w[e][r]);
      if (q == 0) continue;
      for (std::size_t k = 0; k <= r; ++k) w[c][k] -= q * w[e][k];
    }
  }
}

}  // namespace

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw InputError("determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  auto piv = bareiss_echelon(a, &sign);
  if (piv.size() < a.rows()) return 0;
  return sign * a(a.rows() - 1, a.cols() - 1);
}

Rational determinant(const RatMatrix& m) {
  if (!m.square()) throw InputError("determinant of non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  for (std::size_t col = 0; col < a.cols(); ++col) {
    std::size_t p = col;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) return 0;
    if (p != col) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  return bareiss_echelon(a).size();
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return gauss_echelon(a).size();
}

std::vector<std::size_t> independent_columns(const IntMatrix& m) {
  IntMatrix a = m;
  return bareiss_echelon(a);
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (!m.square()) throw InputError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != col)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(p, j), a(col, j));
    Rational inv = 1 / a(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) a(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, n + j);
  return out;
}

std::optional<RatVector> solve_rational(const RatMatrix& m,
                                        std::span<const Rational> v) {
  if (!m.square() || v.size() != m.rows())
    throw InputError("solve_rational: dimension mismatch");
  const std::size_t n = m.rows();
  RatMatrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n) = v[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != col)
      for (std::size_t j = 0; j <= n; ++j) std::swap(a(p, j), a(col, j));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(col, col);
      for (std::size_t j = col; j <= n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  RatVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = a(i, n);
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

IntMatrix hnf_modular(const IntMatrix& m, const Integer& det_multiple) {
  const std::size_t rows = m.rows();
  if (det_multiple <= 0) throw InputError("hnf_modular: modulus must be > 0");
  std::vector<IntVector> cols = m.columns();
  Integer r = det_multiple;
  for (auto& c : cols) reduce_mod(c, rows, r);

  std::vector<IntVector> pivots(rows);
  Integer g, u, v;
  for (std::size_t i = rows; i-- > 0;) {
    long piv = eliminate_row(cols, i, &r);
    IntVector p(rows);
    if (piv >= 0) {
      p = std::move(cols[piv]);
      cols.erase(cols.begin() + piv);
    }
    // Fold in the implicit generator r * e_i.
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), p[i].get_mpz_t(),
               r.get_mpz_t());
    for (std::size_t k = 0; k < i; ++k) p[k] *= u;
    reduce_mod(p, i, r);
    p[i] = g;
    for (std::size_t k = i + 1; k < rows; ++k) p[k] = 0;
    pivots[i] = std::move(p);
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), g.get_mpz_t());
    for (auto& c : cols) reduce_mod(c, i, r);
  }
  std::vector<std::size_t> pivot_rows(rows);
  for (std::size_t i = 0; i < rows; ++i) pivot_rows[i] = i;
  reduce_above(pivots, pivot_rows);
  return IntMatrix::from_columns(pivots, rows);
}

HnfResult hnf(const IntMatrix& m) {
  HnfResult out;
  const std::size_t rows = m.rows();
  auto indep = independent_columns(m);
  out.rank = indep.size();
  if (out.rank == rows && rows > 0) {
    IntMatrix sub(rows, rows);
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t i = 0; i < rows; ++i) sub(i, j) = m(i, indep[j]);
    Integer d = abs(determinant(sub));
    out.basis = hnf_modular(m, d);
    if (m.square()) out.det_abs = d;
    return out;
  }
  std::vector<IntVector> cols = m.columns();
  std::vector<std::pair<std::size_t, IntVector>> found;
  for (std::size_t i = rows; i-- > 0;) {
    long piv = eliminate_row(cols, i, nullptr);
    if (piv < 0) continue;
    IntVector p = std::move(cols[piv]);
    cols.erase(cols.begin() + piv);
    if (p[i] < 0)
      for (auto& e : p) e = -e;
    found.emplace_back(i, std::move(p));
  }
  std::reverse(found.begin(), found.end());
  std::vector<IntVector> w;
  std::vector<std::size_t> pivot_rows;
  for (auto& [r, c] : found) {
    pivot_rows.push_back(r);
    w.push_back(std::move(c));
  }
  reduce_above(w, pivot_rows);
  out.basis = IntMatrix::from_columns(w, rows);
  return out;
}

std::optional<IntVector> solve_integral(const IntMatrix& m,
                                        std::span<const Integer> v) {
  if (!m.square()) throw InputError("solve_integral: matrix must be square");
  auto x = solve_rational(to_rational(m), to_rational(v));
  if (!x) throw InputError("solve_integral: singular matrix");
  IntVector out(x->size());
  for (std::size_t i = 0; i < x->size(); ++i) {
    if ((*x)[i].get_den() != 1) return std::nullopt;
    out[i] = (*x)[i].get_num();
  }
  return out;
}

RatVector charpoly(const RatMatrix& m) {
  if (!m.square()) throw InputError("charpoly of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix h = m;
  // Reduce to upper Hessenberg form by similarity transforms.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t i = k;
    while (i < n && h(i, k - 1) == 0) ++i;
    if (i == n) continue;
    if (i != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(k, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, k));
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      if (h(r, k - 1) == 0) continue;
      Rational f = h(r, k - 1) / h(k, k - 1);
      for (std::size_t j = 0; j < n; ++j) h(r, j) -= f * h(k, j);
      for (std::size_t j = 0; j < n; ++j) h(j, k) += f * h(j, r);
    }
  }
  std::vector<RatVector> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t k = 0; k < n; ++k) {
    RatVector next(k + 2);
    for (std::size_t e = 0; e <= k; ++e) {
      next[e + 1] += p[k][e];
      next[e] -= h(k, k) * p[k][e];
    }
    Rational t = 1;
    for (std::size_t i = k; i-- > 0;) {
      t *= h(i + 1, i);
      if (t == 0) break;
      Rational c = t * h(i, k);
      for (std::size_t e = 0; e < p[i].size(); ++e) next[e] -= c * p[i][e];
    }
    p[k + 1] = std::move(next);
  }
  return p[n];
}

}  // namespace nfc
