#pragma once

// Congruence subgroups H = H_(m_ij) ∩ Aut_A(N) of Aut_A(N) for a wp-primary
// N = A/wp^{n_1} + ... + A/wp^{n_r}, their structure (S, ~, blocks, flag,
// Levi images), the J / J^k / J^{k,l} chains with representative sets
// Q^{k,l}, the named examples, and the lift to (A/wp^n)^d.
//
// Entry (i,j) of an element of H lies in (delta_ij + wp^{m_ij}) / wp^{n_j}.
// The exponents satisfy n_{i,j} <= m_{i,j} <= n_j with
// n_{i,j} = max(0, n_j - n_i); m_{i,j} = n_j pins the entry to delta_ij.
//
// User-facing indices in reports are 1-based; matrices are 0-based.

#include <cstdint>
#include <vector>

#include "drinlev/tormod/automorphism.hpp"

namespace drinlev::admissible {

using tormod::Matrix;
using tormod::PrimaryShape;
using tormod::ShapePtr;
using IntMatrix = std::vector<std::vector<int>>;
using ff::ResidueRing;
using ff::Poly;

enum class Closure { Triangle, Enumeration };

class CongruenceDatum {
 public:
  /// Validates r <= d (InvalidInput), a square r x r matrix (ShapeMismatch)
  /// and the bounds (BoundViolation). Closure is certified by triangle_check
  /// or, failing that, by enumeration (NotClosedUnderProduct when disproved,
  /// CapacityExceeded when the enumeration is beyond `cap`).
  static CongruenceDatum build(const ff::PrimeInfo& prime, std::vector<int> shape, IntMatrix m, int d,
                               std::uint64_t cap = kDefaultEnumCap);

  const PrimaryShape& shape() const noexcept { return *shape_; }
  const ShapePtr& shape_ptr() const noexcept { return shape_; }
  const ff::PrimeInfo& prime() const noexcept { return shape_->prime(); }
  const IntMatrix& m() const noexcept { return m_; }
  int m(int i, int j) const { return m_[i][j]; }
  int rank() const noexcept { return shape_->rank(); }
  int d() const noexcept { return d_; }
  Closure closure() const noexcept { return closure_; }
  /// All n_i equal and r = d.
  bool is_standard() const;

  /// Entry-wise congruences plus invertibility.
  bool contains(const Matrix& g) const;

 private:
  CongruenceDatum() = default;
  ShapePtr shape_;
  IntMatrix m_;
  int d_ = 0;
  Closure closure_ = Closure::Triangle;
};

/// ShapeMismatch when g acts on a different module.
bool contains(const CongruenceDatum& h, const tormod::ModuleAutomorphism& g);

/// n_{i,j} <= m_{i,j} <= n_j for all i, j.
bool within_bounds(const PrimaryShape& s, const IntMatrix& m);

/// m_{i,j} + m_{j,k} >= m_{i,k} for all triples.
bool triangle_check(const IntMatrix& m);
inline bool triangle_check(const CongruenceDatum& h) { return triangle_check(h.m()); }

/// Packed codes (PrimaryShape::pack) of the invertible matrices with
/// entries in delta_ij + wp^{e_ij}, ascending. CapacityExceeded when the
/// candidate count exceeds cap.
std::vector<std::uint64_t> enumerate_codes(const PrimaryShape& s, const IntMatrix& e,
                                           std::uint64_t cap = kDefaultEnumCap);

/// Whether a sorted code set containing the identity is closed under
/// products (hence a subgroup). Cost is O(|set| log^2 |set|) products.
bool is_closed(const PrimaryShape& s, const std::vector<std::uint64_t>& codes);

/// Whether the congruence set of (shape, m) is a group, by enumeration.
bool closed_by_enumeration(const PrimaryShape& s, const IntMatrix& m, std::uint64_t cap = kDefaultEnumCap);

/// Elements of H in canonical (packed-code) order.
std::vector<Matrix> enumerate(const CongruenceDatum& h, std::uint64_t cap = kDefaultEnumCap);

struct StructureReport {
  std::vector<std::pair<int, int>> S;      // 1-based pairs, lexicographic
  std::vector<std::vector<int>> classes;   // equivalence classes of ~, by least member
  std::vector<std::vector<int>> blocks;    // R_1 < ... < R_u in the chosen total order
  std::vector<int> permutation;            // new position -> original index (1-based)
  std::vector<int> block_sizes;            // d_s
  std::vector<int> filtration_dims;        // dim F_0, ..., dim F_u
  std::vector<int> R;                      // s in {1..u} with R_s x R_s inside S
  std::uint64_t h_order = 0;
  std::uint64_t k_order = 0;
  std::uint64_t levi_image_order = 0;
  std::uint64_t levi_expected_order = 0;   // prod_{s in R} |GL_{d_s}(kappa)|
  bool s_transitive = false;
  bool equivalence = false;                // ~ reflexive, symmetric, transitive
  bool singleton_property = false;         // (i,i) not in S => class {i}
  bool k_matches_description = false;     // K = {B : B_ij = delta_ij off S}
  bool star2 = false;                      // K preserves the flag F_.
  bool star3 = false;                      // Levi image = prod_{s in R} L_s
  int u() const { return static_cast<int>(blocks.size()); }
};

/// Structure analysis with the enumeration checks of K (CapacityExceeded).
StructureReport analyze(const CongruenceDatum& h, std::uint64_t cap = kDefaultEnumCap);

CongruenceDatum gamma0(int d, const ff::PrimeInfo& prime, int n);
CongruenceDatum gamma1(int d, const ff::PrimeInfo& prime, int n);
/// Block upper-triangular parabolic; BadPartition for empty or nonpositive parts.
CongruenceDatum parabolic(const std::vector<int>& partition, const ff::PrimeInfo& prime, int n);

struct JLevel {
  int k = 0;
  int l = 0;
  IntMatrix exponents;            // J^{k,l}_{i,j} = wp^{e_ij}
  std::uint64_t predicted = 0;    // prod q_wp^{n - e_ij}
  std::uint64_t enumerated = 0;
  bool normal_in_previous = true; // J^{k,l} normal in J^{k,l-1} (checked for k >= 1, l >= 1)
};

struct QLevel {
  int k = 0;
  int l = 0;
  std::vector<Matrix> representatives;
  std::uint64_t index = 0;        // |J^{k,l}| / |J^{k,l+1}|
  bool subset = false;            // Q^{k,l} inside J^{k,l}
  bool complete = false;          // disjoint cosets covering J^{k,l}
  bool image_subgroup = false;    // image in J^{k,l}/J^{k+1} is a subgroup
};

struct JChain {
  IntMatrix m_prime;
  std::vector<JLevel> levels;     // (k,l) for 0 <= k < n, 0 <= l <= d, then J^n
  std::vector<QLevel> q;          // (k,l) for 0 <= k < n, 0 <= l < d
  bool j_is_levi_kernel = false;  // J^{0,0} = Ker[H -> prod L_s], by enumeration
  bool chain_nested = false;      // J^{k,l} ⊇ J^{k,l+1}, J^{k,d} = J^{k+1,0}
  bool sizes_match = false;       // enumerated = predicted everywhere
  bool k_normal = false;          // J^{k+1} normal in J^k for all k
  bool kl_normal = false;         // J^{k,l+1} normal in J^{k,l} for k >= 1
  bool q_ok = false;
};

/// m' by the case formula; requires a standard shape (NotStandardShape).
IntMatrix m_prime(const CongruenceDatum& h);
/// Exponent matrix of J^{k,l}: e_ij = min(n, max(m'_ij, k + [i <= l])) (i 1-based).
IntMatrix j_exponents(const IntMatrix& m_prime, int n, int k, int l);
JChain j_chain(const CongruenceDatum& h, std::uint64_t cap = kDefaultEnumCap);

/// Rows of m' agree within each block R_s (NotStandardShape).
bool block_row_constancy(const CongruenceDatum& h);

/// The exponent matrix of H~ on (A/wp^n)^d for the embedding
/// A/wp^{n_i} -> A/wp^n, 1 -> p^{n - n_i} into the i-th coordinate.
IntMatrix tilde_exponents(const PrimaryShape& s, const IntMatrix& m, int n, int d);
/// The lifted datum (closure certified like build). n >= max n_i, r <= d.
CongruenceDatum tilde_lift(const CongruenceDatum& h, int n, int d, std::uint64_t cap = kDefaultEnumCap);

/// Brute-force oracle: packed codes of {g in GL_d(A/wp^n) : g(N) = N, g|_N in
/// the congruence set of (shape, m)}, ascending.
std::vector<std::uint64_t> stabilizer_codes(const PrimaryShape& s, const IntMatrix& m, int n, int d,
                                            std::uint64_t cap = kDefaultEnumCap);

}  // namespace drinlev::admissible
