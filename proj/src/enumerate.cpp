#include "nfcount/enumerate.hpp"

#include <cmath>

#include "nfcount/error.hpp"

namespace nfc {

namespace {

long double dot(const std::vector<long double>& a, const std::vector<long double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<std::vector<std::int64_t>> lll_reduce(RealBasis& b, long double delta) {
  const std::size_t n = b.cols.size();
  std::vector<std::vector<std::int64_t>> u(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  if (n == 0) return u;

  std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
  std::vector<long double> bstar(n);
  // Gram-Schmidt from scratch; n <= 10 so this is cheap and avoids drift.
  auto gso = [&]() {
    std::vector<std::vector<long double>> star = b.cols;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = bstar[j] > 0 ? dot(b.cols[i], star[j]) / bstar[j] : 0;
        for (std::size_t k = 0; k < b.dim; ++k) star[i][k] -= mu[i][j] * star[j][k];
      }
      bstar[i] = dot(star[i], star[i]);
    }
  };
  auto size_reduce = [&](std::size_t k, std::size_t j) {
    long double q = std::nearbyintl(mu[k][j]);
    if (q == 0) return;
    const auto qi = static_cast<std::int64_t>(q);
    for (std::size_t t = 0; t < b.dim; ++t) b.cols[k][t] -= q * b.cols[j][t];
    for (std::size_t t = 0; t < n; ++t) u[t][k] -= qi * u[t][j];
    for (std::size_t t = 0; t <= j; ++t) mu[k][t] -= q * (t == j ? 1 : mu[j][t]);
  };

  gso();
  std::size_t k = 1;
  int guard = 0;
  while (k < n) {
    if (++guard > 100000) throw CertificationError("LLL did not terminate");
    for (std::size_t j = k; j-- > 0;) size_reduce(k, j);
    if (bstar[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      std::swap(b.cols[k], b.cols[k - 1]);
      for (std::size_t t = 0; t < n; ++t) std::swap(u[t][k], u[t][k - 1]);
      gso();
      k = k > 1 ? k - 1 : 1;
    } else {
      ++k;
    }
  }
  return u;
}

void enumerate_ellipsoid(const RealBasis& b, long double bound,
                         const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  const std::size_t n = b.cols.size();
  // Cholesky of the Gram matrix in Fincke-Pohst form:
  // Q(y) = sum_i q[i][i] (y_i + sum_{j>i} q[i][j] y_j)^2.
  std::vector<std::vector<long double>> q(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = dot(b.cols[i], b.cols[j]);
  for (std::size_t i = 0; i < n; ++i) {
    if (q[i][i] <= 0) throw CertificationError("enumeration: Gram not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  const long double limit = bound * (1 + 1e-6L) + 1e-30L;
  std::vector<std::int64_t> y(n, 0);
  std::function<void(std::size_t, long double)> rec = [&](std::size_t i, long double used) {
    long double c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= q[i][j] * static_cast<long double>(y[j]);
    const long double room = limit - used;
    if (room < 0) return;
    const long double r = std::sqrt(room / q[i][i]);
    const auto lo = static_cast<std::int64_t>(std::ceil(c - r - 1e-9L));
    const auto hi = static_cast<std::int64_t>(std::floor(c + r + 1e-9L));
    for (std::int64_t v = lo; v <= hi; ++v) {
      y[i] = v;
      const long double t = static_cast<long double>(v) - c;
      const long double next = used + q[i][i] * t * t;
      if (next > limit) continue;
      if (i == 0)
        fn(y);
      else
        rec(i - 1, next);
    }
    y[i] = 0;
  };
  if (n > 0) rec(n - 1, 0);
}

}  // namespace nfc
