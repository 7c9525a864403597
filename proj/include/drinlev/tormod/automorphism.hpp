#pragma once

// Hom_A(N, N) for a wp-primary N = A_1 + ... + A_r, A_i = A/wp^{n_i}.
//
// phi_{i,j} in Hom_A(A_i, A_j) = wp^{n_{i,j}}/wp^{n_j}, n_{i,j} = max(0, n_j - n_i),
// is stored as the code of the image of 1 in A/wp^{n_j}. Matrices act on row
// vectors from the right: (x g)_j = sum_i x_i phi_{i,j}. Matrices are flat,
// row-major.
//
// The exponent list need not be sorted: congruence data on permuted shapes
// use the same calculus.

#include <cstdint>
#include <memory>
#include <vector>

#include "drinlev/tormod/torsion_module.hpp"

namespace drinlev::tormod {

using Matrix = std::vector<ResidueRing::Elem>;

class PrimaryShape {
 public:
  PrimaryShape(PrimeInfo prime, std::vector<int> exponents);

  const PrimeInfo& prime() const noexcept { return prime_; }
  const std::vector<int>& exponents() const noexcept { return n_; }
  int rank() const noexcept { return static_cast<int>(n_.size()); }
  int exponent(int i) const { return n_[i]; }
  const ResidueRing& ring(int i) const { return *rings_[i]; }
  /// kappa(wp) = A/wp.
  const ResidueRing& kappa() const { return *kappa_; }
  /// n_{i,j} = max(0, n_j - n_i)
  int hom_exponent(int i, int j) const { return n_[j] > n_[i] ? n_[j] - n_[i] : 0; }

  /// Moves a code from A/wp^{from} to A/wp^{to}: reduction when to <= from,
  /// the canonical lift otherwise.
  ResidueRing::Elem transfer(ResidueRing::Elem a, int from, int to) const;

  /// Number of matrices with entries in the full rings (mixed radix).
  std::uint64_t code_space() const;
  std::uint64_t pack(const Matrix& g) const;
  Matrix unpack(std::uint64_t code) const;

  friend bool operator==(const PrimaryShape& a, const PrimaryShape& b) {
    return a.prime_ == b.prime_ && a.n_ == b.n_;
  }

 private:
  PrimeInfo prime_;
  std::vector<int> n_;
  std::vector<ff::RingPtr> rings_;
  ff::RingPtr kappa_;
  std::vector<std::uint64_t> radix_;  // per entry, row-major
  std::vector<std::uint64_t> pow_;    // q_wp^k
};

using ShapePtr = std::shared_ptr<const PrimaryShape>;

Matrix identity_matrix(const PrimaryShape& s);
/// g h (apply g first).
Matrix multiply(const PrimaryShape& s, const Matrix& g, const Matrix& h);
/// x g for a row vector x.
std::vector<ResidueRing::Elem> apply(const PrimaryShape& s, const std::vector<ResidueRing::Elem>& x,
                                     const Matrix& g);
/// Every phi_{i,j} lies in wp^{n_{i,j}}/wp^{n_j}.
bool entries_valid(const PrimaryShape& s, const Matrix& g);
/// The kappa(wp)-matrix of g restricted to N[wp] (basis p^{n_i - 1} e_i).
Matrix socle_matrix(const PrimaryShape& s, const Matrix& g);
/// Determinant of a square matrix over kappa(wp).
ResidueRing::Elem kappa_determinant(const ResidueRing& kappa, Matrix m, int r);
/// g is an automorphism iff its socle matrix is invertible.
bool is_invertible(const PrimaryShape& s, const Matrix& g);
/// Throws NotInvertible.
Matrix inverse(const PrimaryShape& s, const Matrix& g);

/// An element of Aut_A(N) for wp-primary N.
class ModuleAutomorphism {
 public:
  /// Validates entry ranges (InvalidInput) and invertibility (NotInvertible).
  ModuleAutomorphism(ShapePtr shape, Matrix m);

  const PrimaryShape& shape() const noexcept { return *shape_; }
  const ShapePtr& shape_ptr() const noexcept { return shape_; }
  const Matrix& matrix() const noexcept { return m_; }
  ResidueRing::Elem entry(int i, int j) const { return m_[i * shape_->rank() + j]; }

  ModuleAutomorphism operator*(const ModuleAutomorphism& h) const;
  ModuleAutomorphism inverse() const;
  TorsionModule::Elem apply(const TorsionModule::Elem& x) const;

  friend bool operator==(const ModuleAutomorphism& a, const ModuleAutomorphism& b) {
    return *a.shape_ == *b.shape_ && a.m_ == b.m_;
  }

 private:
  ShapePtr shape_;
  Matrix m_;
};

/// The primary shape of a primary TorsionModule (ShapeMismatch otherwise).
ShapePtr primary_shape(const TorsionModule& n);

/// The image M g. Throws ShapeMismatch when g does not act on M's ambient.
Submodule act(const Submodule& m, const ModuleAutomorphism& g);

}  // namespace drinlev::tormod
