#pragma once

// Modular invariant theory of linear groups over F_q: polynomials, matrix
// group actions, degree-wise invariant dimensions, Dickson generators from
// Moore determinants, and the freeness / parameter check for a finite
// group acting on a truncated power series ring.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drinlev/error.hpp"
#include "drinlev/ffpoly/series.hpp"
#include "drinlev/ffpoly/small_field.hpp"

namespace drinlev::dickson {

using ff::FieldPtr;
using ff::SmallField;
using Elem = SmallField::Elem;
using Exponent = std::vector<int>;
/// Sparse polynomial: exponent vector -> nonzero coefficient.
using MPoly = std::map<Exponent, Elem>;
/// Square matrix over F_q, row-major.
using FMatrix = std::vector<std::vector<Elem>>;

namespace mpoly {
MPoly constant(int nvars, Elem c);
MPoly var(int nvars, int i);
MPoly add(const SmallField& f, const MPoly& a, const MPoly& b);
MPoly sub(const SmallField& f, const MPoly& a, const MPoly& b);
MPoly scale(const SmallField& f, const MPoly& a, Elem c);
MPoly mul(const SmallField& f, const MPoly& a, const MPoly& b);
MPoly pow(const SmallField& f, const MPoly& a, std::uint64_t k);
/// Exact quotient a / b; InvalidInput when b does not divide a.
MPoly divide_exact(const SmallField& f, const MPoly& a, const MPoly& b);
/// Total degree of a homogeneous polynomial, -1 for zero; InvalidInput when inhomogeneous.
int homogeneous_degree(const MPoly& a);
/// f(x g): x_j -> sum_i g_ij x_i.
MPoly act(const SmallField& f, const FMatrix& g, const MPoly& a);
/// Variables named x1..xd (or x, y, z when d <= 3).
std::string format(const MPoly& a, const std::vector<std::string>& names = {});
std::vector<std::string> default_names(int nvars);
}  // namespace mpoly

/// Degree-D monomials in d variables, descending lexicographic.
std::vector<Exponent> monomials(int nvars, int degree);
/// C(D + d - 1, d - 1).
std::uint64_t component_dimension(int nvars, int degree);

/// A finite group of invertible d x d matrices over F_q given by generators.
/// The element list is generated on construction (CapacityExceeded beyond cap).
class MatrixGroupAction {
 public:
  MatrixGroupAction(FieldPtr field, int d, std::vector<FMatrix> generators,
                    std::uint64_t cap = kDefaultEnumCap);

  const SmallField& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  int d() const noexcept { return d_; }
  const std::vector<FMatrix>& generators() const noexcept { return generators_; }
  const std::vector<FMatrix>& elements() const noexcept { return elements_; }
  std::uint64_t order() const noexcept { return elements_.size(); }

 private:
  FieldPtr field_;
  int d_ = 0;
  std::vector<FMatrix> generators_;
  std::vector<FMatrix> elements_;
};

FMatrix identity(int d);
FMatrix multiply(const SmallField& f, const FMatrix& a, const FMatrix& b);
/// Elementary transvections plus diag(w, 1, ..., 1) for a primitive w.
std::vector<FMatrix> gl_generators(const SmallField& f, int d);
std::uint64_t gl_order(std::uint64_t q, int d);

/// Matrix of f -> g f - f on the degree-D component in the monomial basis.
std::vector<std::vector<Elem>> fixed_point_equations(const SmallField& f, const FMatrix& g, int nvars,
                                                     int degree);

/// dim of the fixed subspace of the degree-D component: the kernel of the
/// stacked (g - 1) over the generators. CapacityExceeded when the component
/// dimension exceeds cap.
std::uint64_t invariant_dimension(const MatrixGroupAction& action, int degree,
                                  std::uint64_t cap = kDefaultEnumCap);

/// c_{d,i} for i = d-1, ..., 0 (degrees q^d - q^i), each the ratio of the
/// Moore determinant with row q^i removed to the Moore determinant
/// det(x_j^{q^k})_{0 <= k < d}.
std::vector<MPoly> dickson_generators(std::uint32_t q, int d);

struct DicksonReport {
  std::uint32_t q = 0;
  int d = 0;
  int dmax = 0;
  std::vector<int> degrees;
  std::vector<std::string> generators;
  std::vector<std::uint64_t> invariant_dims;  // by degree 0..dmax
  std::vector<std::uint64_t> generator_dims;  // monomials in the generators of degree D
  std::vector<std::uint64_t> span_dims;       // rank of those monomials as polynomials
  bool generators_invariant = false;
  bool equal = false;                         // the three series agree
};

DicksonReport verify_dickson(std::uint32_t q, int d, int dmax, std::uint64_t cap = kDefaultEnumCap);

// ------------------------------------------------------------ local models

/// An automorphism of F[[x_1..x_{n-1}, y]] / m^P by the images of the
/// variables (y is the last variable).
using SeriesAction = std::vector<ff::SeriesRing::Elem>;

/// y -> zeta y, the x_i fixed.
SeriesAction scaling_action(const ff::SeriesRing& ring, Elem zeta);
/// y -> y + c x_i, the x_i fixed.
SeriesAction translation_action(const ff::SeriesRing& ring, Elem c, int i = 0);

struct KmReport {
  std::uint64_t group_order = 0;
  ff::SeriesRing::Elem norm;           // prod_g g(y)
  int norm_order = 0;
  std::size_t ring_dimension = 0;      // dim_F of the truncated ring
  std::size_t family_rank = 0;         // rank of {x^a N^b y^i : i < #G}
  bool free_basis_ok = false;
  std::size_t param_count = 0;         // #{x^a N^b} of order < P
  std::size_t param_rank = 0;
  std::size_t fixed_dim = 0;           // dim of the fixed subspace of the truncated ring
  bool norm_invariant = false;
  bool params_ok = false;
};

/// Checks the hypotheses g(x_i) = x_i and g(y) = y * unit mod (x) on every
/// element of the generated group (HypothesisViolated otherwise), then
/// verifies freeness over the fixed ring with basis 1, y, ..., y^{#G-1} and
/// the parameter system (x_1, ..., x_{n-1}, N(y)) to the ring's truncation.
KmReport km_check(const ff::SeriesRing& ring, const std::vector<SeriesAction>& generators,
                  std::uint64_t cap = 1 << 12);

}  // namespace drinlev::dickson
