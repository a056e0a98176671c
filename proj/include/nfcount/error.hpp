#pragma once

#include <stdexcept>
#include <string>

#include "nfcount/bigint.hpp"

namespace nfc {

// Malformed or inadmissible input (bad polynomial, singular matrix, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReducibleError : public InputError {
 public:
  using InputError::InputError;
};

// Z[theta] fails the Dedekind criterion at p and no basis was supplied.
class NonMonogenicError : public InputError {
 public:
  explicit NonMonogenicError(Integer p)
      : InputError("non-monogenic at " + p.get_str()), prime_(std::move(p)) {}
  const Integer& prime() const { return prime_; }

 private:
  Integer prime_;
};

class PrimeDataUnavailable : public std::runtime_error {
 public:
  explicit PrimeDataUnavailable(Integer p)
      : std::runtime_error("prime data unavailable at " + p.get_str()),
        prime_(std::move(p)) {}
  const Integer& prime() const { return prime_; }

 private:
  Integer prime_;
};

// Interval computation could not decide within the precision ceiling.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certified identity came out false: a bug, never a user error.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nfc
