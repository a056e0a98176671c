#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "nfcount/ideal.hpp"

namespace nfc {

struct PrimeFactor {
  unsigned e = 0;
  unsigned f = 0;
  IdealLattice ideal;
};

struct PrimeData {
  Integer p;
  std::vector<PrimeFactor> factors;
  unsigned f_sum = 0;
  std::string method;  // kummer-dedekind, generator:<coords>, registered
};

// Kummer-Dedekind with theta.  Requires p not dividing [o : Z[theta]]
// (PrimeDataUnavailable otherwise).
PrimeData factor_prime(const FieldPtr& k, const Integer& p);

// Kummer-Dedekind with an arbitrary generator alpha in o of degree d; needs
// p not dividing [o : Z[alpha]] (checked exactly), nullopt otherwise.
std::optional<PrimeData> prime_data_from_generator(const FieldPtr& k, const Integer& p,
                                                   const IntVector& alpha);

// Small elements alpha with coordinates in [-bound, bound], tried in a fixed
// order.
std::optional<PrimeData> search_generator(const FieldPtr& k, const Integer& p,
                                          int bound = 2);

// Externally supplied data: (e, f, HNF) per prime; validated by the ideal
// test, index p^f, sum e f = d and prod P^e = p o.
PrimeData validate_prime_data(const FieldPtr& k, const Integer& p,
                              const std::vector<std::tuple<unsigned, unsigned, IntMatrix>>& data);

// Per-field cache of prime decompositions.  Lookups take a shared lock;
// insertion is first-writer-wins.
class PrimeTable {
 public:
  explicit PrimeTable(FieldPtr k, bool auto_generators = false)
      : field_(std::move(k)), auto_(auto_generators) {}

  const FieldPtr& field() const { return field_; }
  void register_data(PrimeData data);
  std::shared_ptr<const PrimeData> get(const Integer& p);
  bool auto_generators() const { return auto_; }
  // Everything computed or registered so far, by prime.
  std::vector<std::shared_ptr<const PrimeData>> entries();

 private:
  FieldPtr field_;
  bool auto_;
  std::shared_mutex mu_;
  std::map<Integer, std::shared_ptr<const PrimeData>> cache_;
};

struct TameDiscriminant {
  Integer value;
  std::vector<std::pair<Integer, unsigned>> exponents;  // p, d - f_p
};

// prod_{p | Delta} p^{d - f_p}; checks that it divides Delta and that
// |Delta| < 2^{d^3} Delta_tame (InternalInconsistency otherwise).
TameDiscriminant tame_discriminant(PrimeTable& table);

// All ideals of index <= bound, as products of prime powers, sorted by
// (index, HNF).
std::vector<IdealLattice> ideals_up_to(PrimeTable& table, unsigned long bound);

}  // namespace nfc
