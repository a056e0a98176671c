#pragma once

#include <memory>
#include <vector>

#include "nfcount/enumerate.hpp"
#include "nfcount/ideal.hpp"

namespace nfc {

// Metric convention: the restriction of the Hermitian metric of C^Sigma,
// |x|^2 = sum_sigma |sigma(x)|^2.  Under it covol(o) = |Delta|^{1/2} and the
// disk |z_sigma| <= B for a conjugate pair has area 2 pi B^2.

// Radii B_sigma, indexed in embedding order; B_sigma = B_{conj sigma}.
struct BoxBody {
  std::vector<Rational> radii;

  static BoxBody uniform(std::size_t d, const Rational& b) {
    return {std::vector<Rational>(d, b)};
  }
  // Throws InputError unless positive and conjugation symmetric.
  void validate(const EmbeddingSet& emb) const;
  BoxBody scaled(const Rational& c) const;
};

// coeff * pi^pi_power.
struct Volume {
  Rational coeff;
  unsigned pi_power = 0;
  Interval enclosure(mpfr_prec_t prec) const;
};

Volume box_volume(const NumberField& k, const BoxBody& box);

struct EmbeddedLattice {
  Matrix<ComplexInterval> embedding;  // rows sigma, columns HNF basis vectors
  Matrix<Interval> gram;
  Interval covolume2;
  mpfr_prec_t precision = 0;
};

EmbeddedLattice embed_lattice(const IdealLattice& n, mpfr_prec_t prec = 256);

struct BoxCount {
  std::vector<IntVector> points;  // integral-basis coordinates, sorted
  std::size_t count = 0;
  std::size_t rank = 0;
  std::size_t candidates = 0;     // enumerated before filtering
  std::size_t escalations = 0;    // points needing interval or exact checks
  std::size_t exact_ties = 0;     // points on the boundary, decided exactly
};

struct MinimaProfile {
  std::vector<Interval> lambdas;      // lambda_i (norms, not squares)
  std::vector<IntVector> witnesses;   // integral-basis coordinates
  std::size_t enumerated = 0;
};

// Precomputed geometry of one ideal lattice; reused across many boxes.
class LatticeGeometry {
 public:
  explicit LatticeGeometry(const IdealLattice& n, mpfr_prec_t prec = 256);

  const IdealLattice& ideal() const { return n_; }
  const EmbeddingSet& embeddings() const { return *emb_; }

  BoxCount count_box(const BoxBody& box) const;
  MinimaProfile successive_minima() const;
  // sum_sigma |sigma(x)|^2 for integral-basis coordinates x.
  Interval norm2(std::span<const Integer> x, mpfr_prec_t prec) const;

  // All lattice points x (integral-basis coordinates, small integers) with
  // sum_sigma w_sigma |sigma(x)|^2 <= bound, up to the enumeration slack.
  void enumerate(const std::vector<long double>& weights, long double bound,
                 const std::function<void(const std::vector<std::int64_t>&)>& fn) const;

 private:
  enum class Side { inside, outside, undecided };
  // LLL-reduced weighted embedding basis and its integral-basis coordinates.
  std::pair<RealBasis, std::vector<std::vector<std::int64_t>>> reduce(
      const std::vector<long double>& weights) const;
  Side quick_side(const std::vector<std::int64_t>& x, std::size_t sigma,
                  long double b) const;
  bool certified_inside(const IntVector& x, std::size_t sigma, const Rational& b,
                        BoxCount& stats) const;

  IdealLattice n_;
  FieldPtr k_;
  std::shared_ptr<const EmbeddingSet> emb_;
  std::size_t d_;
  std::vector<std::vector<std::int64_t>> hnf_;  // small copy of the HNF basis
  std::vector<std::vector<long double>> re_, im_;  // sigma(b_k), rows sigma
  std::vector<std::vector<long double>> mag_;      // |sigma(b_k)|
};

BoxCount count_box(const IdealLattice& n, const BoxBody& box);
MinimaProfile successive_minima(const IdealLattice& n);

struct GramCheck {
  Interval det;
  Integer expected;  // |Delta| [o:n]^2
  double relative_width = 0;
  bool pass = false;
};

// Throws InternalInconsistency if the enclosure excludes |Delta| [o:n]^2.
GramCheck gram_check(const IdealLattice& n, mpfr_prec_t prec = 256);

// Volume of the Euclidean unit ball in R^d: coeff * pi^{floor(d/2)}.
Volume unit_ball_volume(unsigned d);

}  // namespace nfc
