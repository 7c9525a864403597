#pragma once

// Drinfeld A-modules over finite A-fields K = F_{q^m}, A = F_q[t], given by
// phi_t in K{tau}: rank, characteristic, height, supersingularity, torsion
// points in a finite extension, level structures on torsion modules, and
// the degree bookkeeping of the Hecke correspondences T_{wp,k}.

#include <cstdint>
#include <optional>
#include <vector>

#include "drinlev/ffpoly/finite_field.hpp"
#include "drinlev/tormod/torsion_module.hpp"

namespace drinlev::drinfeld {

using ff::ExtPtr;
using ff::FiniteField;
using ff::Poly;
using KElem = FiniteField::Elem;

/// sum_i a_i tau^i over K, with tau a = a^q tau.
class TwistedPolynomial {
 public:
  TwistedPolynomial(ExtPtr field, std::vector<KElem> coeffs);
  static TwistedPolynomial zero(ExtPtr field) { return {std::move(field), {}}; }
  static TwistedPolynomial constant(ExtPtr field, KElem c);
  static TwistedPolynomial tau(ExtPtr field, int k = 1);

  const FiniteField& field() const noexcept { return *field_; }
  const ExtPtr& field_ptr() const noexcept { return field_; }
  /// tau-degree, -1 for zero.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<KElem>& coeffs() const noexcept { return c_; }
  KElem coeff(int i) const;
  bool is_zero() const noexcept { return c_.empty(); }
  /// Least i with a_i != 0; nullopt for zero.
  std::optional<int> lowest_index() const;

  TwistedPolynomial operator+(const TwistedPolynomial& o) const;
  TwistedPolynomial operator-(const TwistedPolynomial& o) const;
  TwistedPolynomial operator*(const TwistedPolynomial& o) const;
  bool operator==(const TwistedPolynomial& o) const { return c_ == o.c_; }

  /// sum_i a_i x^{q^i}.
  KElem eval(const KElem& x) const;
  /// The additive polynomial sum_i a_i X^{q^i} as an ordinary polynomial.
  upoly::Poly<FiniteField> as_polynomial() const;
  /// Coefficients pushed through a field embedding.
  TwistedPolynomial map(const ff::FieldEmbedding& e) const;

 private:
  ExtPtr field_;
  std::vector<KElem> c_;
};

class DrinfeldModule {
 public:
  /// phi_t = coeffs[0] + coeffs[1] tau + ... with gamma(t) = coeffs[0].
  /// InvalidInput when rank < 1, ZeroLeadingCoefficient when the top
  /// coefficient vanishes.
  DrinfeldModule(ExtPtr field, std::vector<KElem> coeffs);

  const FiniteField& field() const noexcept { return phi_t_.field(); }
  const ExtPtr& field_ptr() const noexcept { return phi_t_.field_ptr(); }
  const TwistedPolynomial& phi_t() const noexcept { return phi_t_; }
  const KElem& gamma_t() const { return phi_t_.coeffs()[0]; }
  int rank() const noexcept { return phi_t_.degree(); }
  const ff::FieldPtr& fq() const noexcept { return phi_t_.field().base_ptr(); }

  /// phi_a by Horner's rule in phi_t.
  TwistedPolynomial phi(const Poly& a) const;
  /// gamma(a) = a(gamma(t)).
  KElem gamma(const Poly& a) const;
  /// The monic generator of ker gamma (the minimal polynomial of gamma(t)).
  /// K is finite, so the characteristic is never generic.
  Poly characteristic() const;
  /// Base change along an embedding of K.
  DrinfeldModule base_change(const ff::FieldEmbedding& e) const;

 private:
  TwistedPolynomial phi_t_;
};

/// K = F_{q^m} in its canonical model; coefficients as field codes.
DrinfeldModule make_drinfeld(std::uint32_t q, int m, const std::vector<std::uint64_t>& coeff_codes);

/// (least tau-index of a nonzero coefficient of phi_p) / deg p, p the characteristic.
int height(const DrinfeldModule& phi);
/// height = rank.
bool is_supersingular(const DrinfeldModule& phi);

struct TorsionPoints {
  ExtPtr field;                  // L = F_{q^{mM}}
  std::vector<KElem> basis;      // F_q-basis of the kernel
  std::vector<KElem> points;     // all roots, sorted by code
};

/// Roots of phi_a(X) in F_{q^{mM}}, as the kernel of an F_q-linear map.
/// CapacityExceeded when the kernel has more than cap points.
TorsionPoints torsion_points(const DrinfeldModule& phi, const Poly& a, int ext_deg,
                             std::uint64_t cap = kDefaultEnumCap);

/// An A-linear map psi: N -> L given by the images of the standard generators.
struct LevelStructureMap {
  tormod::ModulePtr source;
  ExtPtr target;
  std::vector<KElem> generator_images;
};

/// The extension F_{q^{mM}} of the base of phi and phi over it.
struct Extension {
  ExtPtr field;
  DrinfeldModule phi;
};
Extension extend(const DrinfeldModule& phi, int ext_deg);

/// Evaluates psi on every element of N, indexed by TorsionModule::index.
/// NotLinear when a generator image is not killed by its annihilator.
std::vector<KElem> evaluate_level_map(const DrinfeldModule& phi, const LevelStructureMap& psi,
                                      std::uint64_t cap = kDefaultEnumCap);

/// For every prime wp in Supp N and 1 <= j <= the top exponent at wp, with
/// a = p^j: prod_{x in N[a]} (X - psi(x)) divides phi_a(X) over L. Over a
/// field this is equivalent to the condition for every a in A, since N
/// splits into primary parts and N[a] only sees the wp-parts with wp | a.
/// Literal polynomial division; NotLinear as in evaluate_level_map.
bool check_level_structure(const DrinfeldModule& phi, const LevelStructureMap& psi,
                           std::uint64_t cap = kDefaultEnumCap);
/// The same test by root multiplicities: every root of phi_a has
/// multiplicity q^v (v the least tau-index of phi_a), so divisibility holds
/// iff each psi(x) is a root hit at most q^v times.
bool check_level_structure_fast(const DrinfeldModule& phi, const LevelStructureMap& psi,
                                std::uint64_t cap = kDefaultEnumCap);

/// Number of valid psi with values in F_{q^{mM}}, by exhaustive search over
/// generator images among the points killed by each annihilator.
/// CapacityExceeded when the candidate count exceeds cap.
std::uint64_t count_level_structures(const DrinfeldModule& phi, const tormod::ModulePtr& n, int ext_deg,
                                     std::uint64_t cap = kDefaultEnumCap);

struct HeckeDegrees {
  std::uint64_t q_wp = 0;
  int d = 0;
  int k = 0;
  std::uint64_t deg_r = 0;
  std::uint64_t deg_m = 0;
  std::uint64_t order_g_k = 0;
  std::uint64_t deg_h_r = 0;
  std::uint64_t deg_h_m = 0;
};

/// deg r_k = deg m_k = prod_{i<k} (q_wp^d - q_wp^i), |G_k| = |GL_k(kappa)|,
/// deg h = deg / |G_k| (NonIntegralDegree otherwise). InvalidInput unless
/// 0 <= k <= d; CapacityExceeded on 64-bit overflow.
HeckeDegrees hecke_degrees(std::uint64_t q_wp, int d, int k);

/// A supersingular rank-d module in characteristic wp = (p). For p = t this
/// is phi_t = tau^d over F_q. Otherwise phi_t = gamma(t) + g_1 tau + ... +
/// g_d tau^d over F_{q_wp^M} for M = 1..max_ext, tuples (g_1..g_d) in
/// lexicographic code order; SearchExhausted past max_ext or cap candidates.
DrinfeldModule supersingular_witness(std::uint32_t q, int d, const Poly& p, int max_ext = 3,
                                     std::uint64_t cap = kDefaultEnumCap);

}  // namespace drinlev::drinfeld
