#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nfcount/corpus.hpp"
#include "nfcount/minkowski.hpp"

namespace nfc {

// An integer certified by an enclosure of width < 1.
struct CertifiedInteger {
  Interval ball;
  Integer value;
};

// prod_{g in G} det^2(sigma(x))_{sigma in gS, x in X}.  X: integral-basis
// coordinates of elements of n (checked), S: embedding indices, |X| = |S|.
CertifiedInteger orbit_minor_product(const IdealLattice& n, const std::vector<IntVector>& x,
                                     const std::vector<std::size_t>& s,
                                     const GaloisAction& g);

// prod over all |X|-subsets S of Sigma of det^2(sigma(x)).
CertifiedInteger all_minor_product(const IdealLattice& n, const std::vector<IntVector>& x);

struct DivisibilityReport {
  CertifiedInteger product;
  Integer required_divisor;
  std::optional<Integer> general_divisor;  // also checked when 2-homogeneous
  bool two_homogeneous = false;
  bool pass = false;
  bool zero_flag = false;
  bool uncertified_group_flag = false;
};

DivisibilityReport verify_thm3(const IdealLattice& n, const std::vector<IntVector>& x,
                               const std::vector<std::size_t>& s, const GaloisAction& g,
                               const Integer& tame);
DivisibilityReport verify_thm4(const IdealLattice& n, const std::vector<IntVector>& x,
                               const Integer& tame);

struct CountingReport {
  std::size_t count = 0;
  std::size_t rank = 0;
  Volume volume;
  Interval lower_bound;                 // vol / (2^d |Delta|^{1/2} [o:n])
  std::optional<Interval> upper_bound;  // d! vol / (|Delta|^{1/2} [o:n]) + d, when rank = d
  bool lower_pass = false;
  bool upper_pass = true;
  bool pass = false;
};

CountingReport verify_counting(const LatticeGeometry& g, const BoxBody& box);

struct Ratio {
  // product: lambda_1...lambda_d / covol; head/tail: first m and last d - m
  // minima; lambda-lo/hi: lambda_m against both exponents; -2h variants use
  // the 2-homogeneous exponents.
  std::string name;
  unsigned m = 0;
  double value = 0;
};

struct MinimaReport {
  MinimaProfile minima;
  Interval product_volume;  // lambda_1 ... lambda_d V_d
  Interval lower, upper;    // 2^d / d! covol and 2^d covol
  bool pass = false;
  std::vector<Ratio> ratios;
};

MinimaReport verify_minima(const IdealLattice& n, const GaloisAction* g = nullptr);

struct MahlerReport {
  bool premise = false;  // B/d holds d independent vectors
  bool skipped = false;  // too many points for the exhaustive search
  bool found = false;
  std::vector<IntVector> basis;
  std::size_t points = 0;
  bool pass = false;
};

MahlerReport verify_mahler_basis(const LatticeGeometry& g, const BoxBody& box,
                                 std::size_t cap = 400);

struct ChebotarevReport {
  unsigned p = 0;
  std::size_t minors = 0;
  std::size_t nonzero = 0;
  double smallest = 0;  // least |minor| seen
  bool pass = false;
};

// Every square minor of (zeta_p^{ab}), 1 <= a, b <= p - 1.
ChebotarevReport chebotarev_minors(unsigned p, mpfr_prec_t ceiling = 8192);

struct ScanRow {
  std::string label;
  Integer disc, tame, index;
  std::vector<double> lambdas;
  std::optional<std::string> error;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::vector<std::optional<double>> slopes;  // log lambda_m against log |Delta|
};

ScanResult scan_family(const std::vector<FieldSpec>& family, unsigned workers = 1,
                       mpfr_prec_t ceiling = 8192);

std::vector<FieldSpec> pure_family(unsigned d, unsigned long pmin, unsigned long pmax);
std::vector<FieldSpec> quadratic_family(long mmin, long mmax);

// Least squares slope; nullopt with fewer than two distinct abscissae.
std::optional<double> fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Suites ------------------------------------------------------------------

struct Record {
  std::string key;
  std::string theorem;
  std::string digest;
  std::string product;
  std::string divisor;
  bool pass = false;
  bool zero_flag = false;
  bool tainted = false;
  bool skipped = false;
  std::string detail;
  double wall_ms = 0;
};

struct SuiteParams {
  unsigned long ideal_index_cap = 50;
  unsigned long minima_index_cap = 100;
  unsigned long box_index_cap = 10;
  unsigned x_trials = 25;
  unsigned box_trials = 500;
  unsigned mahler_trials = 100;
  std::size_t mahler_cap = 400;
  double dependent_rate = 0.05;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

const std::vector<std::string>& suite_names();  // thm1 thm3 thm4 thm5 minima gram tame mahler chebotarev

// Runs one suite over the fields; failures of single instances become
// failing records.  Records are sorted by key.
std::vector<Record> run_suite(const std::string& suite, const std::vector<FieldEntry>& fields,
                              const SuiteParams& params);

// Random m elements of n: coordinates in [-h, h] over the HNF basis;
// dependent with probability `dependent_rate`, otherwise resampled until
// independent.
std::vector<IntVector> random_elements(const IdealLattice& n, std::size_t m,
                                       std::uint64_t seed, double dependent_rate, int h = 5);

std::uint64_t mix_seed(std::uint64_t seed, const std::string& key);
std::string digest(const std::string& text);

// Runs jobs[i] on `workers` threads; results land in slot i.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace nfc
