#include "nfcount/ideal.hpp"

#include "nfcount/error.hpp"

namespace nfc {

IdealLattice::IdealLattice(FieldPtr k, IntMatrix h)
    : field_(std::move(k)), hnf_(std::move(h)) {
  index_ = 1;
  for (std::size_t i = 0; i < hnf_.rows(); ++i) index_ *= hnf_(i, i);
}

IdealLattice IdealLattice::unit(FieldPtr k) {
  const std::size_t d = k->degree();
  return IdealLattice(std::move(k), IntMatrix::identity(d));
}

IdealLattice IdealLattice::from_generators(FieldPtr k,
                                           const std::vector<IntVector>& gens) {
  const std::size_t d = k->degree();
  std::vector<IntVector> cols;
  for (const auto& g : gens) {
    if (g.size() != d) throw InputError("generator has the wrong dimension");
    IntMatrix m = k->mult_matrix(g);
    for (std::size_t j = 0; j < d; ++j) cols.push_back(m.column(j));
  }
  if (cols.empty()) throw InputError("ideal needs at least one generator");
  auto h = nfc::hnf(IntMatrix::from_columns(cols, d));
  if (h.rank < d) throw InputError("all ideal generators are zero");
  return IdealLattice(std::move(k), std::move(h.basis));
}

IdealLattice IdealLattice::from_hnf(FieldPtr k, const IntMatrix& h) {
  const std::size_t d = k->degree();
  if (h.rows() != d || h.cols() != d) throw InputError("ideal HNF has the wrong shape");
  auto red = nfc::hnf(h);
  if (red.rank < d) throw InputError("ideal HNF is singular");
  IdealLattice n(std::move(k), std::move(red.basis));
  if (!n.is_ideal()) throw InputError("lattice is not an ideal");
  return n;
}

bool IdealLattice::contains(std::span<const Integer> x) const {
  return solve_integral(hnf_, x).has_value();
}

bool IdealLattice::contains(const IdealLattice& o) const {
  for (std::size_t j = 0; j < o.hnf_.cols(); ++j) {
    IntVector c = o.hnf_.column(j);
    if (!contains(c)) return false;
  }
  return true;
}

bool IdealLattice::is_ideal() const {
  const std::size_t d = degree();
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) {
      IntVector c = hnf_.column(j);
      IntVector prod = field_->mult_table(k) * std::span<const Integer>(c);
      if (!contains(prod)) return false;
    }
  return true;
}

IdealLattice IdealLattice::operator*(const IdealLattice& o) const {
  const std::size_t d = degree();
  std::vector<IntVector> cols;
  cols.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    IntMatrix m = field_->mult_matrix(generator(i));
    for (std::size_t j = 0; j < d; ++j) {
      IntVector c = o.hnf_.column(j);
      cols.push_back(m * std::span<const Integer>(c));
    }
  }
  // [o : ab] = [o : a][o : b], so the product of the indices is the
  // determinant of the result.
  IntMatrix h = hnf_modular(IntMatrix::from_columns(cols, d), index_ * o.index_);
  return IdealLattice(field_, std::move(h));
}

IdealLattice IdealLattice::operator+(const IdealLattice& o) const {
  const std::size_t d = degree();
  std::vector<IntVector> cols = hnf_.columns();
  for (auto& c : o.hnf_.columns()) cols.push_back(std::move(c));
  Integer g = gcd(index_, o.index_);
  return IdealLattice(field_, hnf_modular(IntMatrix::from_columns(cols, d), g));
}

IdealLattice IdealLattice::pow(unsigned e) const {
  IdealLattice result = unit(field_), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

unsigned ideal_valuation(const IdealLattice& n, const IdealLattice& prime,
                         unsigned inertia_degree) {
  // P^k | n forces p^{k f} | [o:n].
  Integer p = prime.index();
  Integer root;
  mpz_root(root.get_mpz_t(), p.get_mpz_t(), inertia_degree);
  const unsigned bound = valuation(n.index(), root) / inertia_degree;
  unsigned k = 0;
  IdealLattice power = prime;
  while (k < bound && power.contains(n)) {
    ++k;
    if (k < bound) power = power * prime;
  }
  return k;
}

}  // namespace nfc
