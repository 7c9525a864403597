#include "drinlev/ffpoly/residue.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace drinlev::ff {

PrimeInfo prime_data(const FieldPtr& fq, const Poly& p) {
  if (upoly::degree<SmallField>(p) < 1) throw Error(Errc::InvalidInput, "prime must have degree >= 1");
  if (!upoly::is_monic(*fq, p)) throw Error(Errc::NotMonic, format_poly(p));
  if (!is_irreducible(*fq, p)) throw Error(Errc::NotIrreducible, format_poly(p));
  PrimeInfo info;
  info.fq = fq;
  info.p = p;
  info.delta = upoly::degree<SmallField>(p);
  info.q_wp = 1;
  for (int i = 0; i < info.delta; ++i) info.q_wp *= fq->size();
  return info;
}

ResidueRing::ResidueRing(PrimeInfo prime, int n) : prime_(std::move(prime)), n_(n) {
  if (n < 1) throw Error(Errc::InvalidInput, "residue ring exponent must be >= 1");
  std::uint64_t s = 1;
  pow_q_wp_.push_back(1);
  for (int i = 0; i < n; ++i) {
    s *= prime_.q_wp;
    if (s > (std::uint64_t{1} << 31)) throw Error(Errc::CapacityExceeded, "|A/wp^n| exceeds 2^31");
    pow_q_wp_.push_back(static_cast<std::uint32_t>(s));
  }
  size_ = static_cast<std::uint32_t>(s);
  const SmallField& f = *prime_.fq;
  modulus_ = Poly{f.one()};
  for (int i = 0; i < n; ++i) modulus_ = upoly::mul(f, modulus_, prime_.p);
  if (size_ <= kTableLimit) {
    mul_table_.resize(std::size_t{size_} * size_);
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = a; b < size_; ++b) {
        const Elem c = slow_mul(a, b);
        mul_table_[std::size_t{a} * size_ + b] = c;
        mul_table_[std::size_t{b} * size_ + a] = c;
      }
    neg_table_.resize(size_);
    for (Elem a = 0; a < size_; ++a) {
      Elem r = 0;
      Elem scale = 1;
      Elem x = a;
      for (int i = 0; i < n_ * prime_.delta; ++i) {
        r += f.neg(x % f.size()) * scale;
        x /= f.size();
        scale *= f.size();
      }
      neg_table_[a] = r;
    }
  }
}

ResidueRing::Elem ResidueRing::add(Elem a, Elem b) const noexcept {
  const SmallField& f = *prime_.fq;
  if (f.characteristic() == 2 && f.degree() == 1) return a ^ b;
  const std::uint32_t q = f.size();
  Elem r = 0;
  Elem scale = 1;
  while (a != 0 || b != 0) {
    r += f.add(a % q, b % q) * scale;
    a /= q;
    b /= q;
    scale *= q;
  }
  return r;
}

ResidueRing::Elem ResidueRing::neg(Elem a) const noexcept {
  if (!neg_table_.empty()) return neg_table_[a];
  const SmallField& f = *prime_.fq;
  if (f.characteristic() == 2) return a;
  const std::uint32_t q = f.size();
  Elem r = 0;
  Elem scale = 1;
  while (a != 0) {
    r += f.neg(a % q) * scale;
    a /= q;
    scale *= q;
  }
  return r;
}

ResidueRing::Elem ResidueRing::mul(Elem a, Elem b) const {
  if (!mul_table_.empty()) return mul_table_[std::size_t{a} * size_ + b];
  return slow_mul(a, b);
}

ResidueRing::Elem ResidueRing::slow_mul(Elem a, Elem b) const {
  const SmallField& f = *prime_.fq;
  return from_poly(upoly::rem(f, upoly::mul(f, to_poly(a), to_poly(b)), modulus_));
}

ResidueRing::Elem ResidueRing::pow(Elem a, std::uint64_t k) const {
  Elem r = 1;
  while (k > 0) {
    if (k & 1) r = mul(r, a);
    k >>= 1;
    if (k > 0) a = mul(a, a);
  }
  return r;
}

ResidueRing::Elem ResidueRing::inv(Elem a) const {
  if (!is_unit(a)) throw Error(Errc::NonUnitInverse, "element is not a unit of A/wp^n");
  return pow(a, unit_count() - 1);
}

int ResidueRing::valuation(Elem a) const noexcept {
  if (a == 0) return kInfiniteValuation;
  int v = 0;
  while (a % prime_.q_wp == 0) {
    a /= static_cast<Elem>(prime_.q_wp);
    ++v;
  }
  return v;
}

ResidueRing::Elem ResidueRing::digit(Elem a, int i) const noexcept {
  if (i >= n_) return 0;
  return (a / pow_q_wp_[i]) % static_cast<Elem>(prime_.q_wp);
}

ResidueRing::Elem ResidueRing::shift(Elem a, int s) const noexcept {
  if (s >= n_) return 0;
  return static_cast<Elem>((std::uint64_t{a} * pow_q_wp_[s]) % size_);
}

ResidueRing::Elem ResidueRing::reduce(Elem a, int k) const noexcept {
  if (k >= n_) return a;
  return a % pow_q_wp_[k];
}

std::uint32_t ResidueRing::ideal_size(int k) const noexcept {
  if (k >= n_) return 1;
  return pow_q_wp_[n_ - k];
}

ResidueRing::Elem ResidueRing::from_poly(const Poly& a) const {
  const SmallField& f = *prime_.fq;
  Poly r = upoly::rem(f, a, modulus_);
  Elem code = 0;
  for (int i = 0; i < n_; ++i) {
    auto [quo, d] = upoly::divmod_monic(f, r, prime_.p);
    Elem dc = 0;
    for (std::size_t k = d.size(); k-- > 0;) dc = dc * f.size() + d[k];
    code += dc * pow_q_wp_[i];
    r = std::move(quo);
  }
  return code;
}

Poly ResidueRing::to_poly(Elem a) const {
  const SmallField& f = *prime_.fq;
  Poly r;
  for (int i = n_; i-- > 0;) {
    Elem dc = digit(a, i);
    Poly d;
    for (int k = 0; k < prime_.delta; ++k) {
      d.push_back(dc % f.size());
      dc /= f.size();
    }
    upoly::trim(f, d);
    r = upoly::add(f, upoly::mul(f, r, prime_.p), d);
  }
  return r;
}

RingPtr residue_ring(const PrimeInfo& prime, int n) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, Poly, int>, RingPtr> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(prime.fq->size(), prime.p, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ring = std::make_shared<const ResidueRing>(prime, n);
  cache.emplace(std::move(key), ring);
  return ring;
}

}  // namespace drinlev::ff
