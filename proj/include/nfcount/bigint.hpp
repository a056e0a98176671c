#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nfc {

using Integer = mpz_class;
using Rational = mpq_class;

Integer ipow(const Integer& base, unsigned long exp);
Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

bool is_probable_prime(const Integer& n);

// Prime factorization of |n| (n != 0), primes ascending.  Trial division
// followed by Pollard-Brent rho on the cofactor.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

// Exponent of the prime p in n (n != 0).
unsigned valuation(const Integer& n, const Integer& p);

std::vector<unsigned> primes_up_to(unsigned n);

bool is_squarefree(const Integer& n);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

// Parses "a" or "a/b"; throws InputError on malformed text.
Rational parse_rational(const std::string& text);

}  // namespace nfc
