#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "drinlev/ffpoly/fq_poly.hpp"

namespace drinlev::ff {

/// A nonzero prime of A = F_q[t]: monic irreducible p, delta = deg p, and
/// q_wp = |kappa(wp)| = q^delta.
struct PrimeInfo {
  FieldPtr fq;
  Poly p;
  int delta = 0;
  std::uint64_t q_wp = 0;

  friend bool operator==(const PrimeInfo& a, const PrimeInfo& b) {
    return a.fq->size() == b.fq->size() && a.p == b.p;
  }
};

/// Validates p (NotMonic, NotIrreducible) and returns its prime data.
PrimeInfo prime_data(const FieldPtr& fq, const Poly& p);

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

/// A/wp^n.
///
/// Element codes are the p-adic digits of the canonical representative of
/// degree < n*delta: x = sum_i d_i p^i with deg d_i < delta, and
/// code(x) = sum_i code(d_i) q_wp^i where code(d_i) is the base-q integer of
/// the coefficients of d_i. Consequences used throughout:
///   * reduction A/wp^n -> A/wp^k is code mod q_wp^k,
///   * a representative mod wp^k keeps its code in A/wp^n for n >= k,
///   * multiplication by p^s shifts the code by s digits,
///   * v_wp is the number of trailing zero digits.
/// Addition is F_q-linear on codes (digit-wise in base q).
class ResidueRing {
 public:
  using Elem = std::uint32_t;

  ResidueRing(PrimeInfo prime, int n);

  const PrimeInfo& prime() const noexcept { return prime_; }
  int exponent() const noexcept { return n_; }
  /// q_wp^n
  std::uint32_t size() const noexcept { return size_; }
  /// |(A/wp^n)^x| = q_wp^{n-1}(q_wp - 1)
  std::uint64_t unit_count() const noexcept { return size_ / prime_.q_wp * (prime_.q_wp - 1); }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  bool is_zero(Elem a) const noexcept { return a == 0; }
  bool equal(Elem a, Elem b) const noexcept { return a == b; }

  Elem add(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t k) const;
  /// Throws NonUnitInverse when v_wp(a) > 0.
  Elem inv(Elem a) const;

  /// v_wp(a) in {0..n-1}, or kInfiniteValuation for zero.
  int valuation(Elem a) const noexcept;
  bool is_unit(Elem a) const noexcept { return a % prime_.q_wp != 0; }
  /// The i-th p-adic digit, as an element code of kappa(wp) = A/wp.
  Elem digit(Elem a, int i) const noexcept;
  /// a * p^s
  Elem shift(Elem a, int s) const noexcept;
  /// Image in A/wp^k (k <= n).
  Elem reduce(Elem a, int k) const noexcept;
  /// Elements of wp^k / wp^n, ascending.
  std::uint32_t ideal_size(int k) const noexcept;

  Elem from_poly(const Poly& a) const;
  Poly to_poly(Elem a) const;

 private:
  Elem slow_mul(Elem a, Elem b) const;

  PrimeInfo prime_;
  int n_ = 0;
  std::uint32_t size_ = 0;
  std::vector<std::uint32_t> pow_q_wp_;  // q_wp^i, i = 0..n
  Poly modulus_;                         // p^n
  std::vector<Elem> mul_table_;          // present when size_ <= kTableLimit
  std::vector<Elem> neg_table_;
  static constexpr std::uint32_t kTableLimit = 1024;
};

using RingPtr = std::shared_ptr<const ResidueRing>;

/// Cached A/wp^n instances keyed by (q, p, n).
RingPtr residue_ring(const PrimeInfo& prime, int n);

}  // namespace drinlev::ff
