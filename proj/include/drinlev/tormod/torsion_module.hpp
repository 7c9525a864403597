#pragma once

// Finite torsion A-modules N = (+)_wp (+)_i A/wp^{n_i} and their submodules.
//
// Elements are flat tuples of residue codes, one per cyclic summand, with
// summands ordered by prime (poly_less) and then by exponent. An element also
// has a mixed-radix index (first summand most significant) used for explicit
// submodule element sets.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "drinlev/ffpoly/residue.hpp"

namespace drinlev::tormod {

using ff::Poly;
using ff::PrimeInfo;
using ff::ResidueRing;

struct PrimaryComponent {
  PrimeInfo prime;
  std::vector<int> exponents;  // ascending, all >= 1
};

class TorsionModule {
 public:
  using Elem = std::vector<ResidueRing::Elem>;

  /// Components are sorted by prime; exponent lists must be ascending and >= 1.
  TorsionModule(ff::FieldPtr fq, std::vector<PrimaryComponent> components);

  const ff::FieldPtr& fq() const noexcept { return fq_; }
  const std::vector<PrimaryComponent>& components() const noexcept { return components_; }
  /// Number of cyclic summands.
  int length() const noexcept { return static_cast<int>(rings_.size()); }
  const ResidueRing& ring(int j) const { return *rings_[j]; }
  /// Index of the component that owns summand j.
  int component_of(int j) const { return owner_[j]; }
  /// Component index for the prime, if it lies in the support.
  std::optional<int> find(const Poly& p) const;
  bool is_primary() const noexcept { return components_.size() == 1; }

  /// |N|, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> size() const noexcept { return size_; }

  Elem zero() const { return Elem(rings_.size(), 0); }
  /// The j-th standard generator.
  Elem basis(int j) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem sub(const Elem& x, const Elem& y) const { return add(x, neg(y)); }
  /// a * x for a in A.
  Elem mul(const Poly& a, const Elem& x) const;
  /// c * x for c in F_q.
  Elem scale(ff::SmallField::Elem c, const Elem& x) const;
  bool is_zero(const Elem& x) const noexcept;

  /// Mixed-radix index; requires size() to be known.
  std::uint64_t index(const Elem& x) const;
  Elem element(std::uint64_t index) const;

  friend bool operator==(const TorsionModule& a, const TorsionModule& b);

 private:
  ff::FieldPtr fq_;
  std::vector<PrimaryComponent> components_;
  std::vector<ff::RingPtr> rings_;
  std::vector<int> owner_;
  std::optional<std::uint64_t> size_;
};

using ModulePtr = std::shared_ptr<const TorsionModule>;

/// Re-expresses (+) A/(d_i) as a sum of primary cyclic modules.
/// Throws ConstantDivisor for a constant (or zero) divisor.
TorsionModule primary_decomposition(const ff::FieldPtr& fq, const std::vector<Poly>& divisors);

/// Submodules of explicit-enumeration size at most this are stored as element
/// sets; anything larger must be rectangular.
inline constexpr std::uint64_t kExplicitLimit = std::uint64_t{1} << 16;

/// A submodule of a TorsionModule, stored either as a per-summand ideal
/// description (+)_j wp^{a_j}/wp^{n_j} ("rectangular") or as a sorted list of
/// element indices.
class Submodule {
 public:
  /// (+)_j wp_j^{a_j} A_j; exponents are clamped into [0, n_j].
  static Submodule rectangular(ModulePtr ambient, std::vector<int> ideal_exponents);
  /// Takes a set of element indices that must already be a submodule.
  static Submodule from_indices(ModulePtr ambient, std::vector<std::uint64_t> indices);
  /// The A-submodule generated by `gens` (enumerated; CapacityExceeded when
  /// |N| > kExplicitLimit).
  static Submodule span(ModulePtr ambient, const std::vector<TorsionModule::Elem>& gens);

  const TorsionModule& ambient() const noexcept { return *ambient_; }
  const ModulePtr& ambient_ptr() const noexcept { return ambient_; }
  bool is_rectangular() const noexcept { return rect_.has_value(); }
  const std::vector<int>& ideal_exponents() const { return *rect_; }

  std::uint64_t size() const;
  bool contains(const TorsionModule::Elem& x) const;
  /// Sorted element indices; CapacityExceeded if size() > cap.
  std::vector<std::uint64_t> indices(std::uint64_t cap = kDefaultEnumCap) const;
  std::vector<TorsionModule::Elem> elements(std::uint64_t cap = kDefaultEnumCap) const;

  friend bool operator==(const Submodule& a, const Submodule& b);

 private:
  Submodule(ModulePtr ambient) : ambient_(std::move(ambient)) {}

  ModulePtr ambient_;
  std::optional<std::vector<int>> rect_;
  std::vector<std::uint64_t> explicit_;
};

/// N[a] = {x : a x = 0}.
Submodule kernel_of(const Poly& a, const ModulePtr& n);
/// N[I] for the ideal generated by `gens` (= N[gcd]).
Submodule kernel_of(const std::vector<Poly>& gens, const ModulePtr& n);

struct Socle {
  Submodule sub;
  int dimension;  // over kappa(wp)
};

/// N[wp]; throws PrimeNotInSupport.
Socle socle(const ModulePtr& n, const Poly& p);

/// Minimal number of generators of the wp-primary part (= socle dimension).
int min_generators(const TorsionModule& n, const Poly& p);

}  // namespace drinlev::tormod
