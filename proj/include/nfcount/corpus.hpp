#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nfcount/galois.hpp"
#include "nfcount/ramification.hpp"

namespace nfc {

struct FieldSpec {
  std::string label;
  IntPolynomial poly;
  std::optional<RatMatrix> basis;     // columns in power-basis coordinates
  std::optional<std::string> galois;  // see parse_galois_source
};

FieldSpec quadratic_spec(long m);                  // x^2 - m, half basis when m = 1 mod 4
FieldSpec cyclotomic_spec(unsigned n);
FieldSpec pure_spec(unsigned d, const Integer& m);  // x^d - m; cubic overrides built in

// A built field with its prime table and Galois action.  `error` is set
// (and the rest left empty) when construction failed.
struct FieldEntry {
  FieldSpec spec;
  FieldPtr field;
  std::shared_ptr<PrimeTable> primes;
  std::optional<GaloisAction> action;
  std::optional<std::string> error;
};

FieldEntry load_field(const FieldSpec& spec, mpfr_prec_t ceiling = 8192);

// The reference corpus: x^2 - m for m in {+-2, +-3, +-5, +-6, +-7, +-10},
// Q(zeta_n) for n in {5, 7, 8, 12}, x^3 - 2, x^3 - 5, x^3 - 7.
std::vector<FieldSpec> default_corpus();

}  // namespace nfc
