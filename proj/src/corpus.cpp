#include "nfcount/corpus.hpp"

#include "nfcount/error.hpp"

namespace nfc {

namespace {

IntPolynomial binomial_poly(unsigned d, const Integer& m) {
  IntVector c(d + 1);
  c[0] = -m;
  c[d] = 1;
  return IntPolynomial(c);
}

}  // namespace

FieldSpec quadratic_spec(long m) {
  FieldSpec s;
  s.poly = binomial_poly(2, Integer(m));
  s.label = to_string(s.poly);
  if (((m % 4) + 4) % 4 == 1) {
    RatMatrix b(2, 2);
    b(0, 0) = 1;
    b(0, 1) = Rational(1, 2);
    b(1, 1) = Rational(1, 2);
    s.basis = b;
  }
  s.galois = "symmetric";
  return s;
}

FieldSpec cyclotomic_spec(unsigned n) {
  FieldSpec s;
  s.poly = cyclotomic_polynomial(n);
  s.label = "Phi_" + std::to_string(n);
  s.galois = "cyclotomic:" + std::to_string(n);
  return s;
}

FieldSpec pure_spec(unsigned d, const Integer& m) {
  FieldSpec s;
  s.poly = binomial_poly(d, m);
  s.label = to_string(s.poly);
  if (d >= 2 && is_probable_prime(Integer(d))) s.galois = "pure:" + std::to_string(d) + ":" + m.get_str();
  // For squarefree m = +-1 mod 9, o = Z[theta, (1 +- theta + theta^2)/3].
  Integer r = ((m % 9) + 9) % 9;
  if (d == 3 && (r == 1 || r == 8)) {
    RatMatrix b(3, 3);
    b(0, 0) = 1;
    b(1, 1) = 1;
    b(0, 2) = Rational(1, 3);
    b(1, 2) = Rational(r == 1 ? 1 : -1, 3);
    b(2, 2) = Rational(1, 3);
    s.basis = b;
  }
  return s;
}

FieldEntry load_field(const FieldSpec& spec, mpfr_prec_t ceiling) {
  FieldEntry e;
  e.spec = spec;
  try {
    e.field = make_field(spec.poly, spec.basis, spec.label, ceiling);
    e.primes = std::make_shared<PrimeTable>(e.field, spec.basis.has_value());
    if (spec.galois) e.action = build_action(*e.field, parse_galois_source(*spec.galois));
  } catch (const std::exception& ex) {
    e.field.reset();
    e.primes.reset();
    e.action.reset();
    e.error = ex.what();
  }
  return e;
}

std::vector<FieldSpec> default_corpus() {
  std::vector<FieldSpec> out;
  for (long m : {2L, -2L, 3L, -3L, 5L, -5L, 6L, -6L, 7L, -7L, 10L, -10L})
    out.push_back(quadratic_spec(m));
  for (unsigned n : {5u, 7u, 8u, 12u}) out.push_back(cyclotomic_spec(n));
  for (long m : {2L, 5L, 7L}) out.push_back(pure_spec(3, Integer(m)));
  return out;
}

}  // namespace nfc
