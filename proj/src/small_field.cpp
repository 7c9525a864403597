#include "drinlev/ffpoly/small_field.hpp"

#include <map>
#include <mutex>

#include "drinlev/error.hpp"

namespace drinlev::ff {

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) noexcept {
  if (q < 2) return {0, 0};
  std::uint64_t p = 0;
  for (std::uint64_t c = 2; c * c <= q; ++c) {
    if (q % c == 0) {
      p = c;
      break;
    }
  }
  if (p == 0) return {static_cast<std::uint32_t>(q), 1};
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return {0, 0};
  return {static_cast<std::uint32_t>(p), e};
}

namespace {

// Arithmetic on F_p[x] digit vectors, only used while bootstrapping tables.
using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint32_t code, std::uint32_t p, std::uint32_t e) {
  Digits d(e);
  for (std::uint32_t i = 0; i < e; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

// Product of two residues modulo the monic `mod` (degree e) over F_p.
Digits mulmod(const Digits& a, const Digits& b, const Digits& mod, std::uint32_t p) {
  const std::size_t e = mod.size() - 1;
  std::vector<std::uint64_t> prod(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t k = prod.size(); k-- > e;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= e; ++i) prod[k - e + i] = (prod[k - e + i] + (p - c) * mod[i]) % p;
  }
  Digits r(e);
  for (std::size_t i = 0; i < e; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
  return r;
}

// Monic polynomial of degree e over F_p without roots or factors of degree
// <= e/2, found by trial division in lexicographic order.
bool has_factor_of_degree(const Digits& f, std::uint32_t p, std::uint32_t deg) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < deg; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Digits g(deg + 1);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < deg; ++i) {
      g[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    g[deg] = 1;
    // remainder of f modulo g
    std::vector<std::int64_t> r(f.begin(), f.end());
    for (std::size_t k = r.size(); k-- > deg;) {
      const std::int64_t lead = ((r[k] % p) + p) % p;
      if (lead == 0) continue;
      for (std::uint32_t i = 0; i <= deg; ++i) r[k - deg + i] = ((r[k - deg + i] - lead * g[i]) % p + p) % p;
    }
    bool zero = true;
    for (std::uint32_t i = 0; i < deg; ++i) zero = zero && (((r[i] % p) + p) % p == 0);
    if (zero) return true;
  }
  return false;
}

Digits canonical_modulus(std::uint32_t p, std::uint32_t e) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Digits f(e + 1);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[e] = 1;
    if (f[0] == 0) continue;
    bool irreducible = true;
    for (std::uint32_t deg = 1; 2 * deg <= e && irreducible; ++deg)
      irreducible = !has_factor_of_degree(f, p, deg);
    if (irreducible) return f;
  }
  throw Error(Errc::InvalidInput, "no irreducible polynomial found");
}

}  // namespace

SmallField::SmallField(std::uint32_t q) {
  const auto [p, e] = prime_power(q);
  if (p == 0 || q >= (1u << 20)) throw Error(Errc::InvalidInput, "field size must be a prime power below 2^20");
  p_ = p;
  e_ = e;
  q_ = q;
  if (e == 1) {
    modulus_ = {0, 1};
  } else {
    modulus_ = canonical_modulus(p, e);
  }
  // The residue class of x (or a small integer when e = 1) need not be
  // primitive, so search for a generator.
  const Digits mod = e == 1 ? Digits{0, 1} : modulus_;
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (e == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
    return from_digits(mulmod(to_digits(a, p, e), to_digits(b, p, e), mod, p), p);
  };
  exp_.assign(2 * static_cast<std::size_t>(q), 0);
  log_.assign(q, 0);
  for (std::uint32_t g = 1; g < q; ++g) {
    std::uint32_t x = 1;
    std::uint32_t order = 0;
    do {
      x = slow_mul(x, g);
      ++order;
    } while (x != 1);
    if (order != q - 1) continue;
    x = 1;
    for (std::uint32_t k = 0; k < q - 1; ++k) {
      exp_[k] = x;
      exp_[k + q - 1] = x;
      log_[x] = k;
      x = slow_mul(x, g);
    }
    break;
  }
}

SmallField::Elem SmallField::add(Elem a, Elem b) const noexcept {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) return (a + b) % p_;
  Elem r = 0;
  Elem scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

SmallField::Elem SmallField::neg(Elem a) const noexcept {
  if (p_ == 2) return a;
  if (e_ == 1) return (p_ - a) % p_;
  Elem r = 0;
  Elem scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

SmallField::Elem SmallField::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

SmallField::Elem SmallField::inv(Elem a) const {
  if (a == 0) throw Error(Errc::ZeroElement, "inverse of zero in F_q");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

SmallField::Elem SmallField::pow(Elem a, std::uint64_t k) const noexcept {
  if (k == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1)];
}

SmallField::Elem SmallField::from_int(long long v) const noexcept {
  const long long p = p_;
  return static_cast<Elem>(((v % p) + p) % p);
}

FieldPtr field(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const SmallField>(q);
  cache.emplace(q, f);
  return f;
}

}  // namespace drinlev::ff
