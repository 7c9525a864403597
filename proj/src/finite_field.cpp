#include "drinlev/ffpoly/finite_field.hpp"

#include <algorithm>

namespace drinlev::ff {

namespace {

void check_modulus(const SmallField& f, const Poly& modulus) {
  if (!upoly::is_monic(f, modulus)) throw Error(Errc::NotMonic, "field modulus must be monic");
  if (!is_irreducible(f, modulus)) throw Error(Errc::NotIrreducible, "field modulus " + format_poly(modulus));
}

}  // namespace

FiniteField::FiniteField(FieldPtr base, int m) : base_(std::move(base)), m_(m) {
  if (m < 1) throw Error(Errc::InvalidInput, "extension degree must be positive");
  modulus_ = canonical_irreducible(*base_, m);
}

FiniteField::FiniteField(FieldPtr base, Poly modulus) : base_(std::move(base)), modulus_(std::move(modulus)) {
  check_modulus(*base_, modulus_);
  m_ = upoly::degree<SmallField>(modulus_);
}

std::optional<std::uint64_t> FiniteField::size() const noexcept {
  std::uint64_t s = 1;
  for (int i = 0; i < m_; ++i) {
    if (s > (~std::uint64_t{0}) / base_->size()) return std::nullopt;
    s *= base_->size();
  }
  return s;
}

FiniteField::Elem FiniteField::one() const {
  Elem r(m_, 0);
  r[0] = 1;
  return r;
}

FiniteField::Elem FiniteField::gen() const {
  if (m_ == 1) return from_poly(Poly{0, 1});
  Elem r(m_, 0);
  r[1] = 1;
  return r;
}

FiniteField::Elem FiniteField::from_base(SmallField::Elem c) const {
  Elem r(m_, 0);
  r[0] = c;
  return r;
}

bool FiniteField::is_zero(const Elem& a) const noexcept {
  return std::all_of(a.begin(), a.end(), [](auto c) { return c == 0; });
}

bool FiniteField::in_base(const Elem& a) const noexcept {
  return std::all_of(a.begin() + 1, a.end(), [](auto c) { return c == 0; });
}

FiniteField::Elem FiniteField::add(const Elem& a, const Elem& b) const {
  Elem r(m_);
  for (int i = 0; i < m_; ++i) r[i] = base_->add(a[i], b[i]);
  return r;
}

FiniteField::Elem FiniteField::sub(const Elem& a, const Elem& b) const {
  Elem r(m_);
  for (int i = 0; i < m_; ++i) r[i] = base_->sub(a[i], b[i]);
  return r;
}

FiniteField::Elem FiniteField::neg(const Elem& a) const {
  Elem r(m_);
  for (int i = 0; i < m_; ++i) r[i] = base_->neg(a[i]);
  return r;
}

FiniteField::Elem FiniteField::scale(const Elem& a, SmallField::Elem c) const {
  Elem r(m_);
  for (int i = 0; i < m_; ++i) r[i] = base_->mul(a[i], c);
  return r;
}

FiniteField::Elem FiniteField::mul(const Elem& a, const Elem& b) const {
  const SmallField& f = *base_;
  std::vector<SmallField::Elem> prod(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < m_; ++j)
      if (b[j] != 0) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
  }
  for (int k = 2 * m_ - 2; k >= m_; --k) {
    const auto c = prod[k];
    if (c == 0) continue;
    for (int i = 0; i < m_; ++i) prod[k - m_ + i] = f.sub(prod[k - m_ + i], f.mul(c, modulus_[i]));
  }
  prod.resize(m_);
  return prod;
}

FiniteField::Elem FiniteField::inv(const Elem& a) const {
  if (is_zero(a)) throw Error(Errc::ZeroElement, "inverse of zero");
  Poly pa(a.begin(), a.end());
  upoly::trim(*base_, pa);
  auto [g, s] = upoly::gcd_inverse(*base_, pa, modulus_);
  return from_poly(s);
}

FiniteField::Elem FiniteField::pow(const Elem& a, std::uint64_t k) const {
  Elem result = one();
  Elem b = a;
  while (k > 0) {
    if (k & 1) result = mul(result, b);
    k >>= 1;
    if (k > 0) b = mul(b, b);
  }
  return result;
}

FiniteField::Elem FiniteField::frobenius(const Elem& a, int k) const {
  Elem r = a;
  for (int i = 0; i < k; ++i) r = frobenius(r);
  return r;
}

std::uint64_t FiniteField::code(const Elem& a) const {
  std::uint64_t c = 0;
  for (int i = m_; i-- > 0;) c = c * base_->size() + a[i];
  return c;
}

FiniteField::Elem FiniteField::from_code(std::uint64_t c) const {
  Elem r(m_);
  for (int i = 0; i < m_; ++i) {
    r[i] = static_cast<SmallField::Elem>(c % base_->size());
    c /= base_->size();
  }
  return r;
}

FiniteField::Elem FiniteField::from_poly(const Poly& p) const {
  Poly r = p.size() > static_cast<std::size_t>(m_) ? upoly::rem(*base_, p, modulus_) : p;
  r.resize(m_, 0);
  return r;
}

Poly FiniteField::minimal_polynomial(const Elem& a) const {
  std::vector<Elem> conj{a};
  for (Elem c = frobenius(a); c != a; c = frobenius(c)) conj.push_back(c);
  const auto prod = upoly::from_roots(*this, conj);
  Poly out;
  for (const auto& c : prod) out.push_back(c[0]);
  return out;
}

FieldEmbedding::FieldEmbedding(ExtPtr src, ExtPtr dst, FiniteField::Elem image_of_gen)
    : src_(std::move(src)), dst_(std::move(dst)) {
  FiniteField::Elem p = dst_->one();
  for (int i = 0; i < src_->degree(); ++i) {
    powers_.push_back(p);
    p = dst_->mul(p, image_of_gen);
  }
}

FiniteField::Elem FieldEmbedding::operator()(const FiniteField::Elem& a) const {
  FiniteField::Elem r = dst_->zero();
  for (int i = 0; i < src_->degree(); ++i)
    if (a[i] != 0) r = dst_->add(r, dst_->scale(powers_[i], a[i]));
  return r;
}

namespace {

using XPoly = upoly::Poly<FiniteField>;

XPoly x_power_q(const FiniteField& L, const XPoly& h, const XPoly& mod) {
  return upoly::powmod(L, h, L.base().size(), mod);
}

void split(const FiniteField& L, const XPoly& g, std::vector<FiniteField::Elem>& out) {
  const int deg = upoly::degree<FiniteField>(g);
  if (deg <= 0) return;
  if (deg == 1) {
    out.push_back(L.neg(L.mul(g[0], L.inv(g[1]))));
    return;
  }
  const SmallField& f = L.base();
  const int n = L.degree();
  for (int b = 0; b < n; ++b) {
    FiniteField::Elem beta = L.zero();
    beta[b] = 1;
    XPoly u = upoly::rem(L, XPoly{L.zero(), beta}, g);
    XPoly tr = u;
    for (int i = 1; i < n; ++i) {
      u = x_power_q(L, u, g);
      tr = upoly::add(L, tr, u);
    }
    for (SmallField::Elem c = 0; c < f.size(); ++c) {
      XPoly shifted = upoly::sub(L, tr, upoly::constant(L, L.from_base(c)));
      XPoly h = upoly::gcd(L, g, shifted);
      const int dh = upoly::degree<FiniteField>(h);
      if (dh > 0 && dh < deg) {
        split(L, h, out);
        split(L, upoly::divmod(L, g, h).first, out);
        return;
      }
    }
  }
  throw Error(Errc::InvalidInput, "root splitting failed");
}

}  // namespace

std::vector<FiniteField::Elem> roots(const FiniteField& L, const upoly::Poly<FiniteField>& f) {
  if (f.empty()) throw Error(Errc::ZeroElement, "roots of the zero polynomial");
  const XPoly monic = upoly::make_monic(L, f);
  if (upoly::degree<FiniteField>(monic) == 0) return {};
  // X^{|L|} mod f via m_L * e successive q-th powers.
  XPoly h = upoly::rem(L, XPoly{L.zero(), L.one()}, monic);
  for (int i = 0; i < L.degree(); ++i) h = x_power_q(L, h, monic);
  const XPoly g = upoly::gcd(L, monic, upoly::sub(L, h, XPoly{L.zero(), L.one()}));
  std::vector<FiniteField::Elem> out;
  split(L, g, out);
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return L.code(a) < L.code(b); });
  return out;
}

FieldEmbedding embed(const ExtPtr& src, const ExtPtr& dst) {
  if (!(src->base() == dst->base()) || dst->degree() % src->degree() != 0)
    throw Error(Errc::InvalidInput, "no embedding between these fields");
  XPoly f;
  for (auto c : src->modulus()) f.push_back(dst->from_base(c));
  const auto rs = roots(*dst, f);
  if (rs.empty()) throw Error(Errc::InvalidInput, "modulus has no root in the target field");
  return FieldEmbedding(src, dst, rs.front());
}

}  // namespace drinlev::ff
