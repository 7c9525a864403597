#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drinlev/ffpoly/small_field.hpp"

namespace drinlev::ff {

/// F[[z_1..z_n]] / m^P, m = (z_1..z_n), for a finite field F.
///
/// Dense storage over the monomials of total degree < P, in graded-lex
/// order (degree first, then exponent vectors descending lexicographically).
/// Truncation is a ring congruence, so every operation is exact in the
/// quotient.
class SeriesRing {
 public:
  using Elem = std::vector<SmallField::Elem>;
  using Exponent = std::vector<int>;

  SeriesRing(FieldPtr field, int nvars, int trunc, std::vector<std::string> names = {});

  const SmallField& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  int nvars() const noexcept { return nvars_; }
  int truncation() const noexcept { return trunc_; }
  std::size_t dimension() const noexcept { return monomials_.size(); }
  const std::vector<Exponent>& monomials() const noexcept { return monomials_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  /// Index of a monomial, or -1 when its degree is >= P.
  long index_of(const Exponent& e) const;

  Elem zero() const { return Elem(monomials_.size(), 0); }
  Elem one() const { return constant(1); }
  Elem constant(SmallField::Elem c) const;
  Elem var(int i) const;
  Elem monomial(const Exponent& e, SmallField::Elem c = 1) const;
  bool is_zero(const Elem& a) const noexcept;
  bool equal(const Elem& a, const Elem& b) const noexcept { return a == b; }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, SmallField::Elem c) const;
  Elem pow(const Elem& a, std::uint64_t k) const;
  /// Inverse of a unit (nonzero constant term); throws NonUnitInverse.
  Elem inv(const Elem& a) const;

  /// Lowest total degree of a nonzero term; P for zero.
  int order(const Elem& a) const noexcept;
  SmallField::Elem constant_term(const Elem& a) const noexcept { return a[0]; }
  SmallField::Elem coeff(const Elem& a, const Exponent& e) const;

  /// f(images[0], ..., images[n-1]); every image must lie in m.
  Elem substitute(const Elem& f, const std::vector<Elem>& images) const;
  /// Sets the listed variables to zero.
  Elem kill_vars(const Elem& f, const std::vector<int>& vars) const;

  std::map<std::string, long long> to_map(const Elem& a) const;

 private:
  FieldPtr field_;
  int nvars_ = 0;
  int trunc_ = 0;
  std::vector<std::string> names_;
  std::vector<Exponent> monomials_;
  std::map<Exponent, std::size_t> index_;
  std::vector<int> degree_;
  // For each pair (i, j) with deg_i + deg_j < P, the product index.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> products_;
};

}  // namespace drinlev::ff
