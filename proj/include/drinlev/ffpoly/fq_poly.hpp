#pragma once

// Elements of A = F_q[t] and the handful of number-theoretic routines the
// library needs on them: irreducibility, canonical irreducibles, trial
// factorisation and the normalised absolute value |a| = q^deg a.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "drinlev/ffpoly/small_field.hpp"
#include "drinlev/ffpoly/upoly.hpp"

namespace drinlev::ff {

using Poly = upoly::Poly<SmallField>;

/// t
Poly var_t(const SmallField& f);

/// Deterministic irreducibility test: a monic p of degree n >= 1 is
/// irreducible iff gcd(p, t^{q^i} - t) = 1 for every 1 <= i <= n/2.
bool is_irreducible(const SmallField& f, const Poly& p);

/// Lexicographically first monic irreducible of degree n (lower coefficients
/// compared as the base-q integer sum c_i q^i).
Poly canonical_irreducible(const SmallField& f, int n);

/// Factorisation into monic irreducible prime powers by trial division,
/// primes ordered by (degree, base-q code). The unit factor is dropped.
std::vector<std::pair<Poly, int>> factor(const SmallField& f, const Poly& a);

/// |a| = |A/(a)| = q^{deg a}; throws ZeroElement for a = 0.
std::uint64_t absolute_value(const SmallField& f, const Poly& a);

/// Total order on A used for canonical output: degree, then base-q code.
bool poly_less(const Poly& a, const Poly& b);

/// Parses "t^2+t+1", "2t+1", "t", "[1,1,1]" (coefficient list, low degree
/// first). Integer coefficients are reduced into the prime field; for q = p^e
/// with e > 1 coefficient lists may carry full F_q codes.
Poly parse_poly(const SmallField& f, const std::string& text);
std::string format_poly(const Poly& p);

/// Coefficient list with integers reduced mod p (F_q codes when e > 1).
std::vector<long long> coefficients(const Poly& p);
Poly from_coefficients(const SmallField& f, const std::vector<long long>& c);

}  // namespace drinlev::ff
