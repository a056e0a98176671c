#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nfcount/linalg.hpp"
#include "nfcount/polynomial.hpp"
#include "nfcount/roots.hpp"

namespace nfc {

// Certified embeddings of a field: one root ball per sigma, in the order
// produced by isolate_roots.
struct EmbeddingSet {
  std::vector<RootBall> roots;
  std::vector<std::size_t> conj;  // conj[i] = index of conj(sigma_i)
  unsigned r1 = 0, r2 = 0;
  mpfr_prec_t precision = 0;
  // values(i, k) encloses sigma_i(b_k) for the integral basis b.
  Matrix<ComplexInterval> values;

  std::size_t size() const { return roots.size(); }
};

namespace detail {
struct EmbeddingCache;
}

enum class IrreducibilityProof { eisenstein, mod_p, degree_patterns, root_subsets, unverified };
std::string to_string(IrreducibilityProof p);

class NumberField {
 public:
  const IntPolynomial& poly() const { return poly_; }
  std::size_t degree() const { return d_; }
  // Columns: integral basis in power-basis coordinates.
  const RatMatrix& basis() const { return basis_; }
  const Integer& discriminant() const { return disc_; }
  const Integer& poly_discriminant() const { return poly_disc_; }
  const Integer& index() const { return index_; }
  const std::string& label() const { return label_; }
  unsigned r1() const { return r1_; }
  unsigned r2() const { return r2_; }
  bool irreducibility_verified() const {
    return proof_ != IrreducibilityProof::unverified;
  }
  IrreducibilityProof irreducibility_proof() const { return proof_; }
  bool monogenic() const { return index_ == 1; }

  // Column j of mult_table(k) holds the coordinates of b_k * b_j.
  const IntMatrix& mult_table(std::size_t k) const { return mult_[k]; }

  // Coordinates are always over the integral basis.
  IntMatrix mult_matrix(std::span<const Integer> a) const;
  RatMatrix mult_matrix(std::span<const Rational> a) const;
  IntVector multiply(std::span<const Integer> a, std::span<const Integer> b) const;
  RatVector multiply(std::span<const Rational> a, std::span<const Rational> b) const;
  Rational norm(std::span<const Rational> a) const;
  Rational trace(std::span<const Rational> a) const;

  RatVector to_power_basis(std::span<const Rational> a) const;
  RatVector from_power_basis(std::span<const Rational> y) const;
  // Coordinates of g(theta).
  RatVector from_polynomial(const IntPolynomial& g) const;
  IntVector unit_vector(std::size_t k) const;
  bool is_integral(std::span<const Rational> a) const;

  // Embeddings at the given precision; computed once per precision and
  // shared.  Every precision refines the same base isolation, so the root
  // order is identical across precisions.
  std::shared_ptr<const EmbeddingSet> embeddings(mpfr_prec_t prec) const;
  mpfr_prec_t precision_ceiling() const { return ceiling_; }

 private:
  friend NumberField build_field(const IntPolynomial&, const std::optional<RatMatrix>&,
                                 const std::string&, mpfr_prec_t);
  NumberField() = default;

  IntPolynomial poly_;
  std::size_t d_ = 0;
  RatMatrix basis_, basis_inv_;
  std::vector<IntMatrix> mult_;
  Integer disc_, poly_disc_, index_;
  std::string label_;
  unsigned r1_ = 0, r2_ = 0;
  IrreducibilityProof proof_ = IrreducibilityProof::unverified;
  mpfr_prec_t ceiling_ = 8192;
  std::shared_ptr<detail::EmbeddingCache> cache_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Builds k = Q[x]/(f).  Without an override the integral basis is the power
// basis, certified maximal by Dedekind's criterion at every p with
// p^2 | disc(f) (NonMonogenicError otherwise).  Throws ReducibleError when a
// factor of f is exhibited.
NumberField build_field(const IntPolynomial& f,
                        const std::optional<RatMatrix>& basis_override = std::nullopt,
                        const std::string& label = "", mpfr_prec_t ceiling = 8192);

FieldPtr make_field(const IntPolynomial& f,
                    const std::optional<RatMatrix>& basis_override = std::nullopt,
                    const std::string& label = "", mpfr_prec_t ceiling = 8192);

// Dedekind criterion: true iff Z[theta] is p-maximal.
bool dedekind_maximal(const IntPolynomial& f, unsigned long p);

// Certified irreducibility test; returns the proof used or `unverified`.
// Throws ReducibleError on a witness.
IrreducibilityProof prove_irreducible(const IntPolynomial& f);

std::shared_ptr<const EmbeddingSet> embed(const NumberField& k, mpfr_prec_t prec);

// (sigma(x)) for x given by rational coordinates over the integral basis.
std::vector<ComplexInterval> evaluate_element(const NumberField& k,
                                              std::span<const Rational> x,
                                              const EmbeddingSet& emb);
std::vector<ComplexInterval> evaluate_element(const NumberField& k,
                                              std::span<const Integer> x,
                                              const EmbeddingSet& emb);

}  // namespace nfc
