#pragma once

#include <string>
#include <vector>

#include "nfcount/verify.hpp"

namespace nfc {

// JSON corpus file; schema in README.md.
struct CorpusConfig {
  std::vector<FieldSpec> fields;
  SuiteParams suite;
  mpfr_prec_t precision_ceiling = 8192;
  std::string out_dir = "nfcount-out";
  std::string cache_dir;  // empty: no cache
};

// Throws InputError on malformed input, duplicate labels or no fields.
CorpusConfig parse_config(const std::string& json_text);
CorpusConfig load_config(const std::string& path);

// "1,0;1/2,1/2": columns separated by ';', power-basis coordinates by ','.
RatMatrix parse_basis(const std::string& text, std::size_t degree);
// Ideal generators "1,1;0,2" in integral-basis coordinates.
std::vector<IntVector> parse_vectors(const std::string& text, std::size_t degree);

// Prime decomposition data cached on disk under dir, one file per key
// (polynomial, basis, precision ceiling).  Data read back is re-validated.
class FieldCache {
 public:
  explicit FieldCache(std::string dir) : dir_(std::move(dir)) {}
  // True on a hit with matching key.
  bool restore(FieldEntry& e, mpfr_prec_t ceiling) const;
  void store(const FieldEntry& e, mpfr_prec_t ceiling) const;

 private:
  std::string path(const std::string& key) const;
  std::string dir_;
};

std::string cache_key(const FieldSpec& spec, mpfr_prec_t ceiling);

// JSON line for a report record (wall time excluded).
std::string record_json(const Record& r);

}  // namespace nfc
