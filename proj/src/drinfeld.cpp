#include "drinlev/drinfeld/drinfeld.hpp"

#include <algorithm>
#include <map>

#include "drinlev/ffpoly/linalg.hpp"

namespace drinlev::drinfeld {

using XPoly = upoly::Poly<FiniteField>;

// ------------------------------------------------------- twisted polynomials

TwistedPolynomial::TwistedPolynomial(ExtPtr field, std::vector<KElem> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  for (const auto& a : c_)
    if (static_cast<int>(a.size()) != field_->degree()) throw Error(Errc::InvalidInput, "coefficient of wrong size");
  while (!c_.empty() && field_->is_zero(c_.back())) c_.pop_back();
}

TwistedPolynomial TwistedPolynomial::constant(ExtPtr field, KElem c) {
  return {std::move(field), {std::move(c)}};
}

TwistedPolynomial TwistedPolynomial::tau(ExtPtr field, int k) {
  std::vector<KElem> c(k + 1, field->zero());
  c[k] = field->one();
  return {std::move(field), std::move(c)};
}

KElem TwistedPolynomial::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : field_->zero();
}

std::optional<int> TwistedPolynomial::lowest_index() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!field_->is_zero(c_[i])) return static_cast<int>(i);
  return std::nullopt;
}

TwistedPolynomial TwistedPolynomial::operator+(const TwistedPolynomial& o) const {
  std::vector<KElem> r(std::max(c_.size(), o.c_.size()), field_->zero());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return {field_, std::move(r)};
}

TwistedPolynomial TwistedPolynomial::operator-(const TwistedPolynomial& o) const {
  std::vector<KElem> r(std::max(c_.size(), o.c_.size()), field_->zero());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return {field_, std::move(r)};
}

TwistedPolynomial TwistedPolynomial::operator*(const TwistedPolynomial& o) const {
  if (is_zero() || o.is_zero()) return zero(field_);
  std::vector<KElem> r(c_.size() + o.c_.size() - 1, field_->zero());
  // a tau^i * b tau^j = a b^{q^i} tau^{i+j}
  for (std::size_t j = 0; j < o.c_.size(); ++j) {
    KElem b = o.c_[j];
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0) b = field_->frobenius(b);
      r[i + j] = field_->add(r[i + j], field_->mul(c_[i], b));
    }
  }
  return {field_, std::move(r)};
}

KElem TwistedPolynomial::eval(const KElem& x) const {
  KElem r = field_->zero();
  KElem xi = x;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i > 0) xi = field_->frobenius(xi);
    r = field_->add(r, field_->mul(c_[i], xi));
  }
  return r;
}

XPoly TwistedPolynomial::as_polynomial() const {
  if (c_.empty()) return {};
  const std::uint64_t q = field_->base().size();
  std::uint64_t top = 1;
  for (int i = 0; i < degree(); ++i) {
    if (top > (std::uint64_t{1} << 24) / q) throw Error(Errc::CapacityExceeded, "additive polynomial too large");
    top *= q;
  }
  XPoly p(top + 1, field_->zero());
  std::uint64_t e = 1;
  for (std::size_t i = 0; i < c_.size(); ++i, e *= q) p[e] = c_[i];
  upoly::trim(*field_, p);
  return p;
}

TwistedPolynomial TwistedPolynomial::map(const ff::FieldEmbedding& e) const {
  std::vector<KElem> r;
  for (const auto& a : c_) r.push_back(e(a));
  return {e.target(), std::move(r)};
}

// ------------------------------------------------------------ Drinfeld modules

namespace {
TwistedPolynomial checked_phi_t(ExtPtr field, std::vector<KElem> coeffs) {
  if (coeffs.size() < 2) throw Error(Errc::InvalidInput, "phi_t needs rank at least 1");
  if (field->is_zero(coeffs.back())) throw Error(Errc::ZeroLeadingCoefficient, "leading coefficient of phi_t is zero");
  return {std::move(field), std::move(coeffs)};
}
}  // namespace

DrinfeldModule::DrinfeldModule(ExtPtr field, std::vector<KElem> coeffs)
    : phi_t_(checked_phi_t(std::move(field), std::move(coeffs))) {}

TwistedPolynomial DrinfeldModule::phi(const Poly& a) const {
  const auto& k = phi_t_.field_ptr();
  auto r = TwistedPolynomial::zero(k);
  for (std::size_t i = a.size(); i-- > 0;) r = r * phi_t_ + TwistedPolynomial::constant(k, k->from_base(a[i]));
  return r;
}

KElem DrinfeldModule::gamma(const Poly& a) const {
  const auto& k = field();
  KElem r = k.zero();
  for (std::size_t i = a.size(); i-- > 0;) r = k.add(k.mul(r, gamma_t()), k.from_base(a[i]));
  return r;
}

Poly DrinfeldModule::characteristic() const { return field().minimal_polynomial(gamma_t()); }

DrinfeldModule DrinfeldModule::base_change(const ff::FieldEmbedding& e) const {
  return DrinfeldModule(e.target(), phi_t_.map(e).coeffs());
}

DrinfeldModule make_drinfeld(std::uint32_t q, int m, const std::vector<std::uint64_t>& coeff_codes) {
  if (m < 1) throw Error(Errc::InvalidInput, "extension degree must be positive");
  auto k = std::make_shared<const FiniteField>(ff::field(q), m);
  std::vector<KElem> coeffs;
  for (auto c : coeff_codes) {
    if (c >= *k->size()) throw Error(Errc::InvalidInput, "coefficient code outside the field");
    coeffs.push_back(k->from_code(c));
  }
  return DrinfeldModule(k, std::move(coeffs));
}

int height(const DrinfeldModule& phi) {
  const Poly p = phi.characteristic();
  const int delta = upoly::degree<ff::SmallField>(p);
  const auto low = phi.phi(p).lowest_index();
  // phi_p has zero constant term gamma(p) and tau-degree d delta, so low exists.
  return *low / delta;
}

bool is_supersingular(const DrinfeldModule& phi) { return height(phi) == phi.rank(); }

// ---------------------------------------------------------------- torsion

Extension extend(const DrinfeldModule& phi, int ext_deg) {
  if (ext_deg < 1) throw Error(Errc::InvalidInput, "extension degree must be positive");
  if (ext_deg == 1) return {phi.field_ptr(), phi};
  auto l = std::make_shared<const FiniteField>(phi.fq(), phi.field().degree() * ext_deg);
  return {l, phi.base_change(ff::embed(phi.field_ptr(), l))};
}

namespace {

// phi over the field L (identity when L is the base of phi).
DrinfeldModule over(const DrinfeldModule& phi, const ExtPtr& l) {
  if (*phi.field_ptr() == *l) return DrinfeldModule(l, phi.phi_t().coeffs());
  return phi.base_change(ff::embed(phi.field_ptr(), l));
}

std::vector<KElem> kernel_basis(const TwistedPolynomial& f) {
  const auto& l = f.field();
  const int n = l.degree();
  ff::Rows rows(n, ff::Row(n, 0));
  for (int k = 0; k < n; ++k) {
    KElem e = l.zero();
    e[k] = 1;
    const auto img = f.eval(e);
    for (int r = 0; r < n; ++r) rows[r][k] = img[r];
  }
  return ff::null_space(l.base(), std::move(rows), n);
}

std::vector<KElem> span_all(const FiniteField& l, const std::vector<KElem>& basis, std::uint64_t cap) {
  const std::uint64_t q = l.base().size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (total > cap / q) throw Error(Errc::CapacityExceeded, "torsion group exceeds the cap");
    total *= q;
  }
  std::vector<KElem> pts;
  pts.reserve(total);
  for (std::uint64_t c = 0; c < total; ++c) {
    KElem x = l.zero();
    auto t = c;
    for (const auto& b : basis) {
      x = l.add(x, l.scale(b, static_cast<ff::SmallField::Elem>(t % q)));
      t /= q;
    }
    pts.push_back(std::move(x));
  }
  std::sort(pts.begin(), pts.end(), [&](const KElem& a, const KElem& b) { return l.code(a) < l.code(b); });
  return pts;
}

Poly prime_power(const ff::SmallField& f, const Poly& p, int j) {
  Poly r = upoly::constant(f, f.one());
  for (int i = 0; i < j; ++i) r = upoly::mul(f, r, p);
  return r;
}

}  // namespace

TorsionPoints torsion_points(const DrinfeldModule& phi, const Poly& a, int ext_deg, std::uint64_t cap) {
  const auto ext = extend(phi, ext_deg);
  TorsionPoints tp;
  tp.field = ext.field;
  if (a.empty()) throw Error(Errc::ZeroElement, "torsion of a = 0 is all of L");
  tp.basis = kernel_basis(ext.phi.phi(a));
  tp.points = span_all(*ext.field, tp.basis, cap);
  return tp;
}

// ----------------------------------------------------------- level structures

std::vector<KElem> evaluate_level_map(const DrinfeldModule& phi_in, const LevelStructureMap& psi, std::uint64_t cap) {
  const auto& n = *psi.source;
  const auto& l = *psi.target;
  if (static_cast<int>(psi.generator_images.size()) != n.length())
    throw Error(Errc::ShapeMismatch, "one image per cyclic summand is required");
  for (const auto& x : psi.generator_images)
    if (static_cast<int>(x.size()) != l.degree()) throw Error(Errc::InvalidInput, "image outside the target field");
  const auto size = n.size();
  if (!size || *size > cap) throw Error(Errc::CapacityExceeded, "module too large to evaluate");
  const auto phi = over(phi_in, psi.target);
  const auto& fq = *n.fq();
  // powers[j][k] = psi(t^k b_j) = phi_t^k (psi(b_j)).
  std::vector<std::vector<KElem>> powers(n.length());
  for (int j = 0; j < n.length(); ++j) {
    const auto& ring = n.ring(j);
    const auto ann = prime_power(fq, ring.prime().p, ring.exponent());
    if (!l.is_zero(phi.phi(ann).eval(psi.generator_images[j])))
      throw Error(Errc::NotLinear, "image of generator " + std::to_string(j + 1) + " is not killed by its annihilator");
    const int span = ring.exponent() * ring.prime().delta;
    powers[j].push_back(psi.generator_images[j]);
    for (int k = 1; k < span; ++k) powers[j].push_back(phi.phi_t().eval(powers[j].back()));
  }
  std::vector<KElem> values;
  values.reserve(*size);
  for (std::uint64_t idx = 0; idx < *size; ++idx) {
    const auto x = n.element(idx);
    KElem v = l.zero();
    for (int j = 0; j < n.length(); ++j) {
      const auto rep = n.ring(j).to_poly(x[j]);
      for (std::size_t k = 0; k < rep.size(); ++k)
        if (rep[k] != 0) v = l.add(v, l.scale(powers[j][k], rep[k]));
    }
    values.push_back(std::move(v));
  }
  return values;
}

namespace {

template <class Test>
bool for_each_condition(const DrinfeldModule& phi_in, const LevelStructureMap& psi, std::uint64_t cap, Test test) {
  const auto values = evaluate_level_map(phi_in, psi, cap);
  const auto phi = over(phi_in, psi.target);
  const auto& n = psi.source;
  for (const auto& comp : n->components()) {
    const int top = comp.exponents.back();
    for (int j = 1; j <= top; ++j) {
      const auto a = prime_power(*n->fq(), comp.prime.p, j);
      std::vector<const KElem*> pts;
      for (auto idx : tormod::kernel_of(a, n).indices(cap)) pts.push_back(&values[idx]);
      if (!test(phi.phi(a), pts)) return false;
    }
  }
  return true;
}

}  // namespace

bool check_level_structure(const DrinfeldModule& phi, const LevelStructureMap& psi, std::uint64_t cap) {
  const auto& l = *psi.target;
  return for_each_condition(phi, psi, cap, [&](const TwistedPolynomial& fa, const std::vector<const KElem*>& pts) {
    XPoly prod = upoly::constant(l, l.one());
    for (const auto* x : pts) prod = upoly::mul(l, prod, XPoly{l.neg(*x), l.one()});
    return upoly::divmod_monic(l, fa.as_polynomial(), prod).second.empty();
  });
}

bool check_level_structure_fast(const DrinfeldModule& phi, const LevelStructureMap& psi, std::uint64_t cap) {
  const auto& l = *psi.target;
  const std::uint64_t q = l.base().size();
  return for_each_condition(phi, psi, cap, [&](const TwistedPolynomial& fa, const std::vector<const KElem*>& pts) {
    std::uint64_t mult = 1;
    for (int i = 0; i < *fa.lowest_index(); ++i) mult *= q;
    std::map<std::uint64_t, std::uint64_t> hits;
    for (const auto* x : pts) {
      if (++hits[l.code(*x)] > mult) return false;
      if (!l.is_zero(fa.eval(*x))) return false;
    }
    return true;
  });
}

std::uint64_t count_level_structures(const DrinfeldModule& phi, const tormod::ModulePtr& n, int ext_deg,
                                     std::uint64_t cap) {
  const auto ext = extend(phi, ext_deg);
  const auto& fq = *n->fq();
  std::vector<std::vector<KElem>> candidates;
  std::uint64_t total = 1;
  for (int j = 0; j < n->length(); ++j) {
    const auto& ring = n->ring(j);
    const auto ann = prime_power(fq, ring.prime().p, ring.exponent());
    candidates.push_back(span_all(*ext.field, kernel_basis(ext.phi.phi(ann)), cap));
    if (total > cap / candidates.back().size()) throw Error(Errc::CapacityExceeded, "too many candidate maps");
    total *= candidates.back().size();
  }
  std::uint64_t count = 0;
  LevelStructureMap psi{n, ext.field, std::vector<KElem>(n->length())};
  for (std::uint64_t c = 0; c < total; ++c) {
    auto t = c;
    for (int j = n->length(); j-- > 0;) {
      psi.generator_images[j] = candidates[j][t % candidates[j].size()];
      t /= candidates[j].size();
    }
    if (check_level_structure_fast(ext.phi, psi, cap)) ++count;
  }
  return count;
}

// ------------------------------------------------------------------- Hecke

HeckeDegrees hecke_degrees(std::uint64_t q_wp, int d, int k) {
  if (q_wp < 2 || d < 1 || k < 0 || k > d) throw Error(Errc::InvalidInput, "need q_wp >= 2 and 0 <= k <= d");
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::CapacityExceeded, "degree exceeds 64 bits");
    return r;
  };
  std::vector<std::uint64_t> qp{1};
  for (int i = 1; i <= d; ++i) qp.push_back(mul(qp.back(), q_wp));
  HeckeDegrees h;
  h.q_wp = q_wp;
  h.d = d;
  h.k = k;
  h.deg_r = 1;
  h.order_g_k = 1;
  for (int i = 0; i < k; ++i) {
    h.deg_r = mul(h.deg_r, qp[d] - qp[i]);
    h.order_g_k = mul(h.order_g_k, qp[k] - qp[i]);
  }
  h.deg_m = h.deg_r;
  if (h.deg_r % h.order_g_k != 0 || h.deg_m % h.order_g_k != 0)
    throw Error(Errc::NonIntegralDegree, "degree not divisible by |G_k|");
  h.deg_h_r = h.deg_r / h.order_g_k;
  h.deg_h_m = h.deg_m / h.order_g_k;
  return h;
}

// ------------------------------------------------------------ supersingular

DrinfeldModule supersingular_witness(std::uint32_t q, int d, const Poly& p, int max_ext, std::uint64_t cap) {
  if (d < 1) throw Error(Errc::InvalidInput, "rank must be positive");
  const auto fq = ff::field(q);
  const auto prime = ff::prime_data(fq, p);
  if (prime.delta == 1 && p[0] == 0) {
    auto k = std::make_shared<const FiniteField>(fq, 1);
    std::vector<KElem> c(d + 1, k->zero());
    c[d] = k->one();
    return DrinfeldModule(k, std::move(c));
  }
  auto kappa = std::make_shared<const FiniteField>(fq, p);
  std::uint64_t tried = 0;
  for (int m = 1; m <= max_ext; ++m) {
    auto l = std::make_shared<const FiniteField>(fq, prime.delta * m);
    const auto gamma_t = ff::embed(kappa, l)(kappa->gen());
    const std::uint64_t size = *l->size();
    // Lexicographic in (g_1, ..., g_d), g_1 most significant, g_d != 0.
    std::vector<std::uint64_t> g(d, 0);
    g[d - 1] = 1;
    while (true) {
      if (++tried > cap) break;
      std::vector<KElem> coeffs{gamma_t};
      for (auto c : g) coeffs.push_back(l->from_code(c));
      DrinfeldModule phi(l, std::move(coeffs));
      if (is_supersingular(phi)) return phi;
      int i = d - 1;
      while (i >= 0 && ++g[i] == size) g[i--] = 0;
      if (i < 0) break;
      if (g[d - 1] == 0) g[d - 1] = 1;  // skip g_d = 0 after a carry
    }
    if (tried > cap) break;
  }
  throw Error(Errc::SearchExhausted, "no supersingular module found with extension degree <= " +
                                         std::to_string(max_ext) + " and " + std::to_string(cap) + " candidates");
}

}  // namespace drinlev::drinfeld
