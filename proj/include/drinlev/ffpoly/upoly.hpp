#pragma once

// Dense univariate polynomials over an arbitrary commutative ring R.
//
// R must provide `Elem`, zero(), one(), add, sub, neg, mul, is_zero, equal.
// Field-only routines (divmod, gcd, powmod) additionally need inv().
// Coefficients are stored lowest degree first; the zero polynomial is the
// empty vector and no other polynomial has a zero leading coefficient.

#include <cstdint>
#include <utility>
#include <vector>

#include "drinlev/error.hpp"

namespace drinlev::upoly {

template <class R>
using Poly = std::vector<typename R::Elem>;

template <class R>
void trim(const R& ring, Poly<R>& a) {
  while (!a.empty() && ring.is_zero(a.back())) a.pop_back();
}

template <class R>
int degree(const Poly<R>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class R>
Poly<R> constant(const R& ring, typename R::Elem c) {
  Poly<R> r;
  if (!ring.is_zero(c)) r.push_back(std::move(c));
  return r;
}

/// c * X^k
template <class R>
Poly<R> monomial(const R& ring, typename R::Elem c, std::size_t k) {
  if (ring.is_zero(c)) return {};
  Poly<R> r(k + 1, ring.zero());
  r[k] = std::move(c);
  return r;
}

template <class R>
bool equal(const R& ring, const Poly<R>& a, const Poly<R>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!ring.equal(a[i], b[i])) return false;
  return true;
}

template <class R>
bool is_monic(const R& ring, const Poly<R>& a) {
  return !a.empty() && ring.equal(a.back(), ring.one());
}

template <class R>
Poly<R> add(const R& ring, const Poly<R>& a, const Poly<R>& b) {
  Poly<R> r = a.size() >= b.size() ? a : b;
  const Poly<R>& s = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = ring.add(r[i], s[i]);
  trim(ring, r);
  return r;
}

template <class R>
Poly<R> neg(const R& ring, const Poly<R>& a) {
  Poly<R> r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(ring.neg(c));
  return r;
}

template <class R>
Poly<R> sub(const R& ring, const Poly<R>& a, const Poly<R>& b) {
  return add(ring, a, neg(ring, b));
}

template <class R>
Poly<R> scale(const R& ring, const Poly<R>& a, const typename R::Elem& c) {
  Poly<R> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(ring.mul(x, c));
  trim(ring, r);
  return r;
}

template <class R>
Poly<R> mul(const R& ring, const Poly<R>& a, const Poly<R>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<R> r(a.size() + b.size() - 1, ring.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ring.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = ring.add(r[i + j], ring.mul(a[i], b[j]));
  }
  trim(ring, r);
  return r;
}

template <class R>
typename R::Elem eval(const R& ring, const Poly<R>& a, const typename R::Elem& x) {
  auto acc = ring.zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), a[i]);
  return acc;
}

/// Long division by a monic divisor; valid over any commutative ring.
template <class R>
std::pair<Poly<R>, Poly<R>> divmod_monic(const R& ring, const Poly<R>& a, const Poly<R>& b) {
  if (!is_monic(ring, b)) throw Error(Errc::NotMonic, "divisor must be monic");
  if (a.size() < b.size()) return {{}, a};
  Poly<R> rem = a;
  const std::size_t db = b.size() - 1;
  Poly<R> quo(a.size() - db, ring.zero());
  for (std::size_t k = rem.size(); k-- > db;) {
    const auto c = rem[k];
    if (ring.is_zero(c)) continue;
    quo[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) rem[k - db + i] = ring.sub(rem[k - db + i], ring.mul(c, b[i]));
  }
  rem.resize(db);
  trim(ring, rem);
  trim(ring, quo);
  return {std::move(quo), std::move(rem)};
}

template <class F>
Poly<F> make_monic(const F& field, const Poly<F>& a) {
  if (a.empty()) return a;
  return scale(field, a, field.inv(a.back()));
}

/// Division with remainder over a field.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const F& field, const Poly<F>& a, const Poly<F>& b) {
  if (b.empty()) throw Error(Errc::ZeroElement, "polynomial division by zero");
  const auto lead_inv = field.inv(b.back());
  auto [q, r] = divmod_monic(field, a, scale(field, b, lead_inv));
  return {scale(field, q, lead_inv), std::move(r)};
}

template <class F>
Poly<F> rem(const F& field, const Poly<F>& a, const Poly<F>& b) {
  return divmod(field, a, b).second;
}

/// Monic gcd over a field.
template <class F>
Poly<F> gcd(const F& field, Poly<F> a, Poly<F> b) {
  while (!b.empty()) {
    auto r = rem(field, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(field, a);
}

/// Returns (g, s) with g = gcd(a, m) monic and s*a = g mod m.
template <class F>
std::pair<Poly<F>, Poly<F>> gcd_inverse(const F& field, const Poly<F>& a, const Poly<F>& m) {
  Poly<F> r0 = m, r1 = rem(field, a, m);
  Poly<F> s0, s1 = constant(field, field.one());
  while (!r1.empty()) {
    auto [q, r2] = divmod(field, r0, r1);
    auto s2 = sub(field, s0, mul(field, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.empty()) return {{}, {}};
  const auto li = field.inv(r0.back());
  return {scale(field, r0, li), rem(field, scale(field, s0, li), m)};
}

template <class F>
Poly<F> mulmod(const F& field, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return rem(field, mul(field, a, b), m);
}

template <class F>
Poly<F> powmod(const F& field, Poly<F> base, std::uint64_t k, const Poly<F>& m) {
  Poly<F> result = rem(field, constant(field, field.one()), m);
  base = rem(field, base, m);
  while (k > 0) {
    if (k & 1) result = mulmod(field, result, base, m);
    k >>= 1;
    if (k > 0) base = mulmod(field, base, base, m);
  }
  return result;
}

/// prod_i (X - roots[i])
template <class R>
Poly<R> from_roots(const R& ring, const std::vector<typename R::Elem>& roots) {
  Poly<R> r{ring.one()};
  for (const auto& x : roots) {
    Poly<R> next(r.size() + 1, ring.zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i + 1] = ring.add(next[i + 1], r[i]);
      next[i] = ring.sub(next[i], ring.mul(r[i], x));
    }
    r = std::move(next);
  }
  trim(ring, r);
  return r;
}

/// Formal derivative.
template <class R>
Poly<R> derivative(const R& ring, const Poly<R>& a) {
  Poly<R> r;
  for (std::size_t i = 1; i < a.size(); ++i) {
    auto c = ring.zero();
    for (std::size_t k = 0; k < i; ++k) c = ring.add(c, a[i]);
    r.push_back(c);
  }
  trim(ring, r);
  return r;
}

/// Multiplicity of `x` as a root of a nonzero polynomial `a`.
template <class R>
int root_multiplicity(const R& ring, Poly<R> a, const typename R::Elem& x) {
  if (a.empty()) throw Error(Errc::ZeroElement, "multiplicity in the zero polynomial");
  int mult = 0;
  while (!a.empty()) {
    // synthetic division by X - x
    Poly<R> q(a.size() > 1 ? a.size() - 1 : 0, ring.zero());
    auto carry = ring.zero();
    for (std::size_t i = a.size(); i-- > 0;) {
      carry = ring.add(ring.mul(carry, x), a[i]);
      if (i > 0) q[i - 1] = carry;
    }
    if (!ring.is_zero(carry)) break;
    ++mult;
    trim(ring, q);
    a = std::move(q);
  }
  return mult;
}

}  // namespace drinlev::upoly
