#pragma once

// Formal O-modules over truncated local rings, O = kappa[[pi]] the
// completion of A at wp: the shape f_pi(X) = pi X + t_1 X^{q_wp} + ... +
// t_{d-1} X^{q_wp^{d-1}} + X^{q_wp^d}, level-structure divisibility, height,
// the d = 1 Lubin-Tate tower, and the additive polynomials f^M.

#include <cstdint>
#include <string>
#include <vector>

#include "drinlev/drinfeld/drinfeld.hpp"
#include "drinlev/ffpoly/series.hpp"
#include "drinlev/tormod/torsion_module.hpp"

namespace drinlev::formal {

using ff::SeriesRing;
using SElem = SeriesRing::Elem;
using SPoly = upoly::Poly<SeriesRing>;

/// f_pi over a truncated local ring R whose coefficient field is kappa(wp)
/// (or an extension). pi and the t_i are elements of the maximal ideal in
/// the deformation setting, but any elements are accepted.
class FormalOModule {
 public:
  /// InvalidInput when params.size() != d - 1 or the ring's field is not an
  /// extension of a field of size q_wp.
  FormalOModule(const SeriesRing& ring, std::uint64_t q_wp, int d, SElem pi, std::vector<SElem> params);

  const SeriesRing& ring() const noexcept { return ring_; }
  std::uint64_t q_wp() const noexcept { return q_wp_; }
  int d() const noexcept { return d_; }
  const SElem& pi() const noexcept { return pi_; }
  const std::vector<SElem>& params() const noexcept { return params_; }

  /// f_pi as a polynomial in X over R (coefficients only at X^{q_wp^i}).
  const SPoly& f_pi() const noexcept { return f_pi_; }
  /// f_a(X) = a X for a in the copy of kappa inside the coefficient field
  /// (a^{q_wp} = a); InvalidInput otherwise.
  SPoly f_scalar(ff::SmallField::Elem a) const;
  /// f_pi evaluated at an element of R.
  SElem apply_pi(const SElem& x) const;

 private:
  SeriesRing ring_;
  std::uint64_t q_wp_ = 0;
  int d_ = 0;
  SElem pi_;
  std::vector<SElem> params_;
  SPoly f_pi_;
};

/// h = least i with t_i != 0, counting t_d = 1 (so h = d when all vanish).
/// The parameters are the reductions of t_1..t_{d-1} (pi -> 0) in a field.
int formal_height(const std::vector<ff::SmallField::Elem>& reduced_params);
/// The same on the constant terms of the module's parameters.
int formal_height(const FormalOModule& f);

/// Polynomial composition p(q(X)) over R.
SPoly compose(const SeriesRing& r, const SPoly& p, const SPoly& q);

/// The field embedding kappa(wp) = A/wp -> F, indexed by kappa element code
/// (the residue code in A/wp). InvalidInput when F does not contain a field
/// of size q_wp.
std::vector<ff::SmallField::Elem> kappa_embedding(const ff::PrimeInfo& prime, const ff::SmallField& target);

/// Expansion x = sum_k omega(a_k) p^k in A/wp^n with omega the multiplicative
/// section kappa -> A/wp^n, omega(a) = a~^{q_wp^n}; returns the kappa codes a_k.
std::vector<ff::ResidueRing::Elem> teichmuller_digits(const ff::ResidueRing& r, ff::ResidueRing::Elem x);

/// psi on every element of a wp-primary N (indexed by TorsionModule::index),
/// from the images of the standard generators. O = kappa[[pi]] acts on N
/// through teichmuller_digits and on R by a * y = a y, pi * y = f_pi(y). NotLinear when pi^{n_j} does not
/// kill the j-th generator image.
std::vector<SElem> evaluate_formal_map(const FormalOModule& f, const tormod::ModulePtr& n,
                                       const std::vector<SElem>& generator_images);

/// prod_{alpha in N[pi]} (X - psi(alpha)) divides f_pi in R[X] (monic
/// division, exact modulo m^P). TruncationTooCoarse when pi vanishes in R,
/// so that the truncation cannot see the deformation at all.
bool check_formal_level(const FormalOModule& f, const tormod::ModulePtr& n,
                        const std::vector<SElem>& generator_images);

struct LubinTateReport {
  std::uint64_t q = 0;
  int n = 0;
  int precision = 0;
  SElem pi;                          // pi as a series in v = theta_n
  std::vector<SElem> theta;          // theta_0 .. theta_n
  std::vector<int> theta_orders;     // v-adic orders
  int ramification = 0;              // ord_v(pi)
  std::uint64_t expected = 0;        // q^{n-1}(q - 1) = |(O/wp^n)^x|
  bool chain_ok = false;             // f_pi(theta_j) = theta_{j-1}, theta_0 = 0, theta_j != 0
  bool ratios_ok = false;            // ord(pi) / ord(theta_j) = q^{j-1}(q - 1)
  bool local_parameter = false;      // ord(theta_n) = 1
  int eisenstein_degree = 0;         // deg of f^{(n)}(X) / f^{(n-1)}(X) over kappa[[pi]]
  bool eisenstein = false;           // monic, lower coefficients in (pi), constant of order 1
};

/// The d = 1 tower over O = F_q[[pi]] with f_pi(X) = pi X + X^q: solves
/// f_pi^{(n)}(v) = 0, f_pi^{(n-1)}(v) != 0 for pi in F_q[[v]]/(v^P) by the
/// fixed point pi = -(f_pi^{(n-1)}(v))^{q-1}. PrecisionExceeded when P is
/// too small for the valuations to be visible (P <= q^{n-1}(q-1)).
LubinTateReport lubin_tate_chain(std::uint32_t q, int n, int precision);

struct AdditiveRootPolynomial {
  std::vector<std::uint64_t> exponents;   // exponents with nonzero coefficient
  std::size_t degree = 0;
  bool additive = false;                  // only powers of the base field size
};

/// prod_{alpha in values} (X - alpha) over R.
SPoly root_polynomial(const SeriesRing& r, const std::vector<SElem>& values);
/// The same over a finite field.
upoly::Poly<ff::FiniteField> root_polynomial(const ff::FiniteField& l,
                                             const std::vector<ff::FiniteField::Elem>& values);

/// f^M for a submodule M of N and psi on N (values indexed by element
/// index); `additive` tests for exponents in {q^i}.
AdditiveRootPolynomial additive_from_submodule(const SeriesRing& r, const tormod::Submodule& m,
                                               const std::vector<SElem>& psi_values, std::uint64_t q);
AdditiveRootPolynomial additive_from_submodule(const ff::FiniteField& l, const tormod::Submodule& m,
                                               const std::vector<ff::FiniteField::Elem>& psi_values);

struct FmReport {
  std::uint32_t q = 0;
  int d = 0;
  int n = 0;
  int ext_deg = 0;
  std::uint64_t automorphisms = 0;     // sampled g
  std::uint64_t submodules = 0;        // sampled M
  bool transport_ok = false;           // f^M for psi o g = f^{Mg} for psi
  bool scalar_ok = false;              // z f^M(X) = f^M(z X), z in kappa
  bool kernel_ok = false;              // N[pi^m] = (wp^{n-m})^d
  bool torsion_ok = false;             // f^{N[pi^m]} = monic phi_{p^m}(X)
  std::vector<std::string> counterexamples;
};

/// Checks the f^M identities on N = (A/wp^n)^d, wp = (p) of degree 1 and
/// good for phi (so kappa = F_q acts by scalars), with psi a full level
/// structure found in F_{q^{mM}} (SearchExhausted when none exists there).
/// Samples every automorphism up to `max_aut` and every rectangular M.
FmReport verify_fm_identities(const drinfeld::DrinfeldModule& phi, const ff::Poly& p, int n, int ext_deg,
                              std::uint64_t max_aut = 512, std::uint64_t cap = kDefaultEnumCap);

}  // namespace drinlev::formal
