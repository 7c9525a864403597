#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace drinlev::ff {

/// The prime-power field F_q, q = p^e < 2^20.
///
/// Elements are integer codes: the base-p digits of the code are the
/// coefficients of the representative polynomial over F_p (lowest degree in
/// the least significant digit), reduced modulo a canonical irreducible of
/// degree e. Multiplication goes through discrete log tables.
class SmallField {
 public:
  using Elem = std::uint32_t;

  explicit SmallField(std::uint32_t q);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return e_; }
  std::uint32_t size() const noexcept { return q_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  bool is_zero(Elem a) const noexcept { return a == 0; }
  bool equal(Elem a, Elem b) const noexcept { return a == b; }

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const noexcept;

  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long long v) const noexcept;
  /// A fixed generator of the multiplicative group.
  Elem primitive() const noexcept { return exp_[1]; }
  /// Defining polynomial of F_q over F_p (monic, low degree first).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  friend bool operator==(const SmallField& a, const SmallField& b) noexcept { return a.q_ == b.q_; }

 private:
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const SmallField>;

/// Shared, cached instance of F_q.
FieldPtr field(std::uint32_t q);

/// Returns (p, e) with q = p^e, or (0, 0) when q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) noexcept;

}  // namespace drinlev::ff
