#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "drinlev/ffpoly/fq_poly.hpp"

namespace drinlev::ff {

/// F_{q^m} = F_q[x]/(f) for a monic irreducible f of degree m.
///
/// An element is its coordinate vector over F_q in the basis 1, x, ...,
/// x^{m-1}; vectors always have length m, so equality is syntactic.
class FiniteField {
 public:
  using Elem = std::vector<SmallField::Elem>;

  /// Canonical model: the lexicographically first irreducible of degree m.
  FiniteField(FieldPtr base, int m);
  /// Model with an explicit modulus; throws NotIrreducible / NotMonic.
  FiniteField(FieldPtr base, Poly modulus);

  const SmallField& base() const noexcept { return *base_; }
  const FieldPtr& base_ptr() const noexcept { return base_; }
  int degree() const noexcept { return m_; }
  const Poly& modulus() const noexcept { return modulus_; }
  /// q^m when it fits in 64 bits.
  std::optional<std::uint64_t> size() const noexcept;

  Elem zero() const { return Elem(m_, 0); }
  Elem one() const;
  Elem gen() const;  // the class of x
  Elem from_base(SmallField::Elem c) const;
  bool is_zero(const Elem& a) const noexcept;
  bool equal(const Elem& a, const Elem& b) const noexcept { return a == b; }
  /// True iff a lies in the prime-power subfield F_q.
  bool in_base(const Elem& a) const noexcept;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, SmallField::Elem c) const;
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, std::uint64_t k) const;
  /// x -> x^q
  Elem frobenius(const Elem& a) const { return pow(a, base_->size()); }
  /// x -> x^{q^k}
  Elem frobenius(const Elem& a, int k) const;

  /// Bijection with [0, q^m): base-q digits of the coordinates.
  std::uint64_t code(const Elem& a) const;
  Elem from_code(std::uint64_t c) const;
  /// Coordinates may be shorter than m; they are reduced modulo f.
  Elem from_poly(const Poly& p) const;

  /// Minimal polynomial over F_q (product over Frobenius conjugates).
  Poly minimal_polynomial(const Elem& a) const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.base_->size() == b.base_->size() && a.modulus_ == b.modulus_;
  }

 private:
  FieldPtr base_;
  int m_ = 0;
  Poly modulus_;
};

using ExtPtr = std::shared_ptr<const FiniteField>;

/// An F_q-algebra embedding src -> dst, stored as the image of the generator.
class FieldEmbedding {
 public:
  FieldEmbedding(ExtPtr src, ExtPtr dst, FiniteField::Elem image_of_gen);
  FiniteField::Elem operator()(const FiniteField::Elem& a) const;
  const ExtPtr& source() const noexcept { return src_; }
  const ExtPtr& target() const noexcept { return dst_; }

 private:
  ExtPtr src_;
  ExtPtr dst_;
  std::vector<FiniteField::Elem> powers_;
};

/// All roots in `field` of a nonzero polynomial over `field`, sorted by code.
/// Deterministic: the split part gcd(f, X^{|L|} - X) is separated with
/// absolute-trace splittings over the power basis.
std::vector<FiniteField::Elem> roots(const FiniteField& field, const upoly::Poly<FiniteField>& f);

/// Embedding of src into dst (requires deg src | deg dst); the generator is
/// sent to the smallest root of its minimal polynomial.
FieldEmbedding embed(const ExtPtr& src, const ExtPtr& dst);

}  // namespace drinlev::ff
