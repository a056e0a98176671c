#include "nfcount/polynomial.hpp"

#include <cctype>

#include "nfcount/error.hpp"
#include "nfcount/linalg.hpp"

namespace nfc {

Integer resultant(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const long m = a.degree(), n = b.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) return ipow(a.lead(), n);
  if (n == 0) return ipow(b.lead(), m);
  // Sylvester matrix, rows: n shifts of a, m shifts of b (descending).
  const std::size_t size = m + n;
  IntMatrix s(size, size);
  for (long r = 0; r < n; ++r)
    for (long k = 0; k <= m; ++k) s(r, r + k) = a.coeff(m - k);
  for (long r = 0; r < m; ++r)
    for (long k = 0; k <= n; ++k) s(n + r, r + k) = b.coeff(n - k);
  return determinant(s);
}

Integer discriminant(const IntPolynomial& f) {
  if (f.is_zero()) throw InputError("discriminant of the zero polynomial");
  const long d = f.degree();
  if (d < 1) throw InputError("discriminant needs degree >= 1");
  if (d == 1) return 1;
  Integer r = resultant(f, f.derivative());
  Integer q;
  mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), f.lead().get_mpz_t());
  if ((d * (d - 1) / 2) % 2 == 1) q = -q;
  return q;
}

namespace {

bool parse_coefficient_list(const std::string& t, IntPolynomial& out) {
  if (t.find('x') != std::string::npos) return false;
  std::vector<Integer> coeffs;
  std::string cur;
  for (char ch : t + ",") {
    if (ch == ',') {
      Integer v;
      if (cur.empty() || v.set_str(cur, 10) != 0)
        throw InputError("malformed coefficient list '" + t + "'");
      coeffs.push_back(v);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  out = IntPolynomial(std::move(coeffs));
  return true;
}

}  // namespace

IntPolynomial parse_polynomial(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw InputError("empty polynomial");
  IntPolynomial listed;
  if (parse_coefficient_list(t, listed)) return listed;

  std::vector<Integer> coeffs;
  std::size_t i = 0;
  auto fail = [&] { throw InputError("malformed polynomial '" + text + "'"); };
  while (i < t.size()) {
    int sign = 1;
    if (t[i] == '+' || t[i] == '-') {
      sign = t[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail();
    }
    std::string digits;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])))
      digits.push_back(t[i++]);
    Integer c = digits.empty() ? Integer(1) : Integer(digits);
    std::size_t deg = 0;
    if (i < t.size() && t[i] == '*') {
      if (digits.empty()) fail();
      ++i;
    }
    if (i < t.size() && t[i] == 'x') {
      ++i;
      deg = 1;
      if (i < t.size() && t[i] == '^') {
        ++i;
        std::string e;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])))
          e.push_back(t[i++]);
        if (e.empty()) fail();
        deg = std::stoul(e);
      }
    } else if (digits.empty()) {
      fail();
    }
    if (coeffs.size() <= deg) coeffs.resize(deg + 1);
    coeffs[deg] += sign * c;
  }
  return IntPolynomial(std::move(coeffs));
}

std::string to_string(const IntPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (long i = f.degree(); i >= 0; --i) {
    Integer c = f.coeff(i);
    if (c == 0) continue;
    const bool neg = c < 0;
    Integer a = abs(c);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (i == 0 || a != 1) out += a.get_str();
    if (i == 0) continue;
    if (a != 1) out += "*";
    out += "x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

IntPolynomial cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw InputError("cyclotomic_polynomial(0)");
  // x^n - 1 divided by Phi_e for every proper divisor e of n.
  IntPolynomial result = IntPolynomial::monomial(1, n) - IntPolynomial({1});
  for (unsigned e = 1; e < n; ++e) {
    if (n % e != 0) continue;
    result = result.divmod_monic(cyclotomic_polynomial(e)).first;
  }
  return result;
}

}  // namespace nfc
