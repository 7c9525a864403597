#include "drinlev/tormod/automorphism.hpp"

#include <algorithm>

namespace drinlev::tormod {

PrimaryShape::PrimaryShape(PrimeInfo prime, std::vector<int> exponents)
    : prime_(std::move(prime)), n_(std::move(exponents)) {
  if (n_.empty()) throw Error(Errc::InvalidInput, "empty shape");
  for (int e : n_) {
    if (e < 1) throw Error(Errc::InvalidInput, "shape exponents must be >= 1");
    rings_.push_back(ff::residue_ring(prime_, e));
  }
  kappa_ = ff::residue_ring(prime_, 1);
  pow_.push_back(1);
  for (int k = 1; k <= *std::max_element(n_.begin(), n_.end()); ++k) pow_.push_back(pow_.back() * prime_.q_wp);
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) radix_.push_back(rings_[j]->size());
}

ResidueRing::Elem PrimaryShape::transfer(ResidueRing::Elem a, int from, int to) const {
  if (to >= from) return a;
  return static_cast<ResidueRing::Elem>(a % pow_[to]);
}

std::uint64_t PrimaryShape::code_space() const {
  std::uint64_t s = 1;
  for (auto r : radix_) {
    if (s > (~std::uint64_t{0}) / r) throw Error(Errc::CapacityExceeded, "matrix code space exceeds 64 bits");
    s *= r;
  }
  return s;
}

std::uint64_t PrimaryShape::pack(const Matrix& g) const {
  std::uint64_t c = 0;
  for (std::size_t k = 0; k < g.size(); ++k) c = c * radix_[k] + g[k];
  return c;
}

Matrix PrimaryShape::unpack(std::uint64_t code) const {
  Matrix g(radix_.size());
  for (std::size_t k = radix_.size(); k-- > 0;) {
    g[k] = static_cast<ResidueRing::Elem>(code % radix_[k]);
    code /= radix_[k];
  }
  return g;
}

Matrix identity_matrix(const PrimaryShape& s) {
  const int r = s.rank();
  Matrix g(r * r, 0);
  for (int i = 0; i < r; ++i) g[i * r + i] = 1;
  return g;
}

Matrix multiply(const PrimaryShape& s, const Matrix& g, const Matrix& h) {
  const int r = s.rank();
  Matrix out(r * r, 0);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      const auto& ring = s.ring(k);
      ResidueRing::Elem acc = 0;
      for (int j = 0; j < r; ++j) {
        const auto a = g[i * r + j];
        const auto b = h[j * r + k];
        if (a == 0 || b == 0) continue;
        acc = ring.add(acc, ring.mul(s.transfer(a, s.exponent(j), s.exponent(k)), b));
      }
      out[i * r + k] = acc;
    }
  return out;
}

std::vector<ResidueRing::Elem> apply(const PrimaryShape& s, const std::vector<ResidueRing::Elem>& x,
                                     const Matrix& g) {
  const int r = s.rank();
  if (static_cast<int>(x.size()) != r) throw Error(Errc::ShapeMismatch, "vector length");
  std::vector<ResidueRing::Elem> out(r, 0);
  for (int j = 0; j < r; ++j) {
    const auto& ring = s.ring(j);
    for (int i = 0; i < r; ++i) {
      if (x[i] == 0 || g[i * r + j] == 0) continue;
      out[j] = ring.add(out[j], ring.mul(s.transfer(x[i], s.exponent(i), s.exponent(j)), g[i * r + j]));
    }
  }
  return out;
}

bool entries_valid(const PrimaryShape& s, const Matrix& g) {
  const int r = s.rank();
  if (static_cast<int>(g.size()) != r * r) return false;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const auto a = g[i * r + j];
      if (a >= s.ring(j).size()) return false;
      if (a != 0 && s.ring(j).valuation(a) < s.hom_exponent(i, j)) return false;
    }
  return true;
}

Matrix socle_matrix(const PrimaryShape& s, const Matrix& g) {
  const int r = s.rank();
  Matrix k(r * r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (s.exponent(j) >= s.exponent(i))
        k[i * r + j] = s.ring(j).digit(g[i * r + j], s.exponent(j) - s.exponent(i));
  return k;
}

ResidueRing::Elem kappa_determinant(const ResidueRing& kappa, Matrix m, int r) {
  ResidueRing::Elem det = 1;
  for (int c = 0; c < r; ++c) {
    int piv = -1;
    for (int i = c; i < r; ++i)
      if (m[i * r + c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int k = 0; k < r; ++k) std::swap(m[c * r + k], m[piv * r + k]);
      det = kappa.neg(det);
    }
    det = kappa.mul(det, m[c * r + c]);
    const auto inv = kappa.inv(m[c * r + c]);
    for (int i = c + 1; i < r; ++i) {
      const auto f = kappa.mul(m[i * r + c], inv);
      if (f == 0) continue;
      for (int k = c; k < r; ++k) m[i * r + k] = kappa.sub(m[i * r + k], kappa.mul(f, m[c * r + k]));
    }
  }
  return det;
}

bool is_invertible(const PrimaryShape& s, const Matrix& g) {
  return kappa_determinant(s.kappa(), socle_matrix(s, g), s.rank()) != 0;
}

Matrix inverse(const PrimaryShape& s, const Matrix& g) {
  if (!is_invertible(s, g)) throw Error(Errc::NotInvertible, "matrix is not an automorphism");
  // The group is finite, so g^{ord-1} is the inverse.
  const Matrix id = identity_matrix(s);
  Matrix prev = id, cur = g;
  for (std::uint64_t k = 0; k < kDefaultEnumCap * 16; ++k) {
    if (cur == id) return prev;
    prev = cur;
    cur = multiply(s, cur, g);
  }
  throw Error(Errc::CapacityExceeded, "element order too large");
}

ModuleAutomorphism::ModuleAutomorphism(ShapePtr shape, Matrix m) : shape_(std::move(shape)), m_(std::move(m)) {
  if (!entries_valid(*shape_, m_)) throw Error(Errc::InvalidInput, "entry outside Hom_A(A_i, A_j)");
  if (!is_invertible(*shape_, m_)) throw Error(Errc::NotInvertible, "matrix is not an automorphism");
}

ModuleAutomorphism ModuleAutomorphism::operator*(const ModuleAutomorphism& h) const {
  if (!(*shape_ == *h.shape_)) throw Error(Errc::ShapeMismatch, "different shapes");
  return ModuleAutomorphism(shape_, multiply(*shape_, m_, h.m_));
}

ModuleAutomorphism ModuleAutomorphism::inverse() const { return ModuleAutomorphism(shape_, tormod::inverse(*shape_, m_)); }

TorsionModule::Elem ModuleAutomorphism::apply(const TorsionModule::Elem& x) const {
  return tormod::apply(*shape_, x, m_);
}

ShapePtr primary_shape(const TorsionModule& n) {
  if (!n.is_primary()) throw Error(Errc::ShapeMismatch, "module is not primary");
  const auto& c = n.components().front();
  return std::make_shared<const PrimaryShape>(c.prime, c.exponents);
}

Submodule act(const Submodule& m, const ModuleAutomorphism& g) {
  const auto& n = m.ambient();
  if (!n.is_primary() || !(n.components().front().prime == g.shape().prime()) ||
      n.components().front().exponents != g.shape().exponents())
    throw Error(Errc::ShapeMismatch, "automorphism does not act on the ambient module");
  if (!is_invertible(g.shape(), g.matrix())) throw Error(Errc::NotInvertible, "matrix is not an automorphism");
  std::vector<std::uint64_t> image;
  for (const auto& x : m.elements()) image.push_back(n.index(g.apply(x)));
  return Submodule::from_indices(m.ambient_ptr(), std::move(image));
}

}  // namespace drinlev::tormod
