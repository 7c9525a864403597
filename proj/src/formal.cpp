#include "drinlev/formal/formal.hpp"

#include <algorithm>
#include <sstream>

#include "drinlev/error.hpp"
#include "drinlev/tormod/automorphism.hpp"

namespace drinlev::formal {

using ff::SmallField;

namespace {

constexpr std::uint64_t kMaxFormalDegree = std::uint64_t{1} << 16;

bool is_power_of(std::uint64_t x, std::uint64_t base) {
  if (base < 2 || x == 0) return false;
  while (x % base == 0) x /= base;
  return x == 1;
}

std::uint64_t checked_pow(std::uint64_t b, int e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > limit / b) throw Error(Errc::CapacityExceeded, "formal degree too large");
    r *= b;
  }
  return r;
}

bool is_in_kappa(const SmallField& f, SmallField::Elem a, std::uint64_t q_wp) { return f.pow(a, q_wp) == a; }

}  // namespace

// ------------------------------------------------------------ FormalOModule

FormalOModule::FormalOModule(const SeriesRing& ring, std::uint64_t q_wp, int d, SElem pi, std::vector<SElem> params)
    : ring_(ring), q_wp_(q_wp), d_(d), pi_(std::move(pi)), params_(std::move(params)) {
  if (d < 1) throw Error(Errc::InvalidInput, "formal height bound d must be >= 1");
  if (params_.size() != static_cast<std::size_t>(d - 1))
    throw Error(Errc::InvalidInput, "expected d - 1 parameters t_1..t_{d-1}");
  const auto& f = ring_.field();
  if (!is_power_of(q_wp, f.characteristic()) || !is_power_of(f.size(), q_wp))
    throw Error(Errc::InvalidInput, "the coefficient field must contain a field of size q_wp");
  if (pi_.size() != ring_.dimension()) throw Error(Errc::InvalidInput, "pi is not an element of R");
  for (const auto& t : params_)
    if (t.size() != ring_.dimension()) throw Error(Errc::InvalidInput, "parameter is not an element of R");
  const auto top = checked_pow(q_wp, d, kMaxFormalDegree);
  f_pi_.assign(top + 1, ring_.zero());
  f_pi_[1] = pi_;
  std::uint64_t e = 1;
  for (int i = 1; i < d; ++i) {
    e *= q_wp;
    f_pi_[e] = params_[i - 1];
  }
  f_pi_[top] = ring_.one();
}

SPoly FormalOModule::f_scalar(SmallField::Elem a) const {
  if (a >= ring_.field().size() || !is_in_kappa(ring_.field(), a, q_wp_))
    throw Error(Errc::InvalidInput, "scalar does not lie in kappa");
  SPoly r{ring_.zero(), ring_.constant(a)};
  upoly::trim(ring_, r);
  return r;
}

SElem FormalOModule::apply_pi(const SElem& x) const {
  auto acc = ring_.mul(pi_, x);
  auto xp = x;
  for (int i = 1; i <= d_; ++i) {
    xp = ring_.pow(xp, q_wp_);
    const auto& c = i == d_ ? ring_.one() : params_[i - 1];
    acc = ring_.add(acc, ring_.mul(c, xp));
  }
  return acc;
}

int formal_height(const std::vector<SmallField::Elem>& reduced_params) {
  for (std::size_t i = 0; i < reduced_params.size(); ++i)
    if (reduced_params[i] != 0) return static_cast<int>(i) + 1;
  return static_cast<int>(reduced_params.size()) + 1;
}

int formal_height(const FormalOModule& f) {
  std::vector<SmallField::Elem> reduced;
  for (const auto& t : f.params()) reduced.push_back(f.ring().constant_term(t));
  return formal_height(reduced);
}

SPoly compose(const SeriesRing& r, const SPoly& p, const SPoly& q) {
  SPoly acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = upoly::add(r, upoly::mul(r, acc, q), upoly::constant(r, p[i]));
  return acc;
}

// ---------------------------------------------------------- O-structure

std::vector<SmallField::Elem> kappa_embedding(const ff::PrimeInfo& prime, const SmallField& target) {
  const auto& fq = *prime.fq;
  if (fq.characteristic() != target.characteristic() || !is_power_of(target.size(), prime.q_wp))
    throw Error(Errc::InvalidInput, "target field does not contain kappa(wp)");
  const auto Q = target.size();
  // F_q -> target through a root of the defining polynomial of F_q over F_p.
  std::vector<SmallField::Elem> fq_map(fq.size());
  if (fq.degree() == 1) {
    for (SmallField::Elem c = 0; c < fq.size(); ++c) fq_map[c] = target.from_int(c);
  } else {
    const auto& mod = fq.modulus();
    SmallField::Elem g = 0;
    for (; g < Q; ++g) {
      SmallField::Elem v = 0;
      for (std::size_t i = mod.size(); i-- > 0;) v = target.add(target.mul(v, g), target.from_int(mod[i]));
      if (v == 0) break;
    }
    if (g == Q) throw Error(Errc::InvalidInput, "target field does not contain F_q");
    for (SmallField::Elem c = 0; c < fq.size(); ++c) {
      SmallField::Elem v = 0;
      std::vector<std::uint32_t> digits;
      for (auto t = c; t > 0; t /= fq.characteristic()) digits.push_back(t % fq.characteristic());
      for (std::size_t i = digits.size(); i-- > 0;) v = target.add(target.mul(v, g), target.from_int(digits[i]));
      fq_map[c] = v;
    }
  }
  // kappa = F_q[t]/(p) -> target through a root of the image of p.
  auto eval_mapped = [&](const ff::Poly& a, SmallField::Elem x) {
    SmallField::Elem v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = target.add(target.mul(v, x), fq_map[a[i]]);
    return v;
  };
  SmallField::Elem theta = 0;
  for (; theta < Q; ++theta)
    if (eval_mapped(prime.p, theta) == 0) break;
  if (theta == Q) throw Error(Errc::InvalidInput, "target field does not contain kappa(wp)");
  const auto kappa = ff::residue_ring(prime, 1);
  std::vector<SmallField::Elem> out(prime.q_wp);
  for (std::uint64_t c = 0; c < prime.q_wp; ++c)
    out[c] = eval_mapped(kappa->to_poly(static_cast<ff::ResidueRing::Elem>(c)), theta);
  return out;
}

std::vector<ff::ResidueRing::Elem> teichmuller_digits(const ff::ResidueRing& r, ff::ResidueRing::Elem x) {
  const auto qn = checked_pow(r.prime().q_wp, r.exponent(), ~std::uint64_t{0});
  std::vector<ff::ResidueRing::Elem> out;
  for (int k = 0; k < r.exponent(); ++k) {
    const auto a = r.reduce(x, 1);
    x = r.sub(x, r.pow(a, qn));
    x = static_cast<ff::ResidueRing::Elem>(x / r.prime().q_wp);
    out.push_back(a);
  }
  return out;
}

std::vector<SElem> evaluate_formal_map(const FormalOModule& f, const tormod::ModulePtr& n,
                                       const std::vector<SElem>& generator_images) {
  const auto& ring = f.ring();
  if (static_cast<int>(generator_images.size()) != n->length())
    throw Error(Errc::ShapeMismatch, "one image per cyclic summand is required");
  if (n->length() == 0) return {ring.zero()};
  if (!n->is_primary()) throw Error(Errc::InvalidInput, "formal level structures need a wp-primary module");
  const auto& prime = n->components()[0].prime;
  if (prime.q_wp != f.q_wp()) throw Error(Errc::InvalidInput, "module prime does not match q_wp");
  for (const auto& y : generator_images) {
    if (y.size() != ring.dimension()) throw Error(Errc::InvalidInput, "generator image is not an element of R");
    if (ring.constant_term(y) != 0) throw Error(Errc::InvalidInput, "generator image is not in the maximal ideal");
  }
  if (!n->size() || *n->size() > kDefaultEnumCap) throw Error(Errc::CapacityExceeded, "module too large to evaluate");
  const auto emb = kappa_embedding(prime, ring.field());

  // contribution[j][c] = psi(c * b_j) for every residue code c of summand j.
  std::vector<std::vector<SElem>> contribution(n->length());
  for (int j = 0; j < n->length(); ++j) {
    const auto& rj = n->ring(j);
    std::vector<SElem> orbit{generator_images[j]};
    for (int k = 0; k < rj.exponent(); ++k) orbit.push_back(f.apply_pi(orbit.back()));
    if (!ring.is_zero(orbit.back())) {
      std::ostringstream msg;
      msg << "pi^" << rj.exponent() << " does not kill the image of generator " << j;
      throw Error(Errc::NotLinear, msg.str());
    }
    contribution[j].reserve(rj.size());
    for (std::uint32_t c = 0; c < rj.size(); ++c) {
      auto v = ring.zero();
      const auto digits = teichmuller_digits(rj, c);
      for (std::size_t k = 0; k < digits.size(); ++k)
        if (digits[k] != 0) v = ring.add(v, ring.scale(orbit[k], emb[digits[k]]));
      contribution[j].push_back(std::move(v));
    }
  }
  std::vector<SElem> values(*n->size());
  for (std::uint64_t idx = 0; idx < values.size(); ++idx) {
    const auto x = n->element(idx);
    auto v = ring.zero();
    for (int j = 0; j < n->length(); ++j) v = ring.add(v, contribution[j][x[j]]);
    values[idx] = std::move(v);
  }
  return values;
}

bool check_formal_level(const FormalOModule& f, const tormod::ModulePtr& n,
                        const std::vector<SElem>& generator_images) {
  if (f.ring().is_zero(f.pi()))
    throw Error(Errc::TruncationTooCoarse, "pi vanishes in R; raise the truncation");
  const auto values = evaluate_formal_map(f, n, generator_images);
  if (n->length() == 0) return true;
  const auto socle = tormod::kernel_of(n->components()[0].prime.p, n);
  std::vector<SElem> roots;
  for (auto idx : socle.indices()) roots.push_back(values[idx]);
  const auto prod = root_polynomial(f.ring(), roots);
  return upoly::divmod_monic(f.ring(), f.f_pi(), prod).second.empty();
}

// ----------------------------------------------------------- Lubin-Tate

LubinTateReport lubin_tate_chain(std::uint32_t q, int n, int precision) {
  if (n < 1 || precision < 1) throw Error(Errc::InvalidInput, "need n >= 1 and precision >= 1");
  if (ff::prime_power(q).first == 0) throw Error(Errc::InvalidInput, "q must be a prime power");
  LubinTateReport rep;
  rep.q = q;
  rep.n = n;
  rep.precision = precision;
  rep.expected = checked_pow(q, n - 1, kMaxFormalDegree) * (q - 1);
  if (rep.expected >= static_cast<std::uint64_t>(precision))
    throw Error(Errc::PrecisionExceeded, "precision must exceed q^{n-1}(q-1)");
  const SeriesRing r(ff::field(q), 1, precision, {"v"});
  const auto v = r.var(0);

  auto theta_from = [&](const SElem& pi) {
    std::vector<SElem> th(n + 1);
    th[n] = v;
    for (int j = n; j > 0; --j) th[j - 1] = r.add(r.mul(pi, th[j]), r.pow(th[j], q));
    return th;
  };
  auto pi = r.zero();
  bool converged = false;
  for (int it = 0; it <= precision + 1; ++it) {
    const auto th = theta_from(pi);
    auto next = r.neg(r.pow(th[1], q - 1));
    if (next == pi) {
      converged = true;
      break;
    }
    pi = std::move(next);
  }
  if (!converged) throw Error(Errc::PrecisionExceeded, "fixed point iteration did not stabilise");
  rep.pi = pi;
  rep.theta = theta_from(pi);
  rep.ramification = r.order(pi);
  rep.chain_ok = r.is_zero(rep.theta[0]);
  for (int j = 0; j <= n; ++j) {
    rep.theta_orders.push_back(r.order(rep.theta[j]));
    if (j > 0 && r.is_zero(rep.theta[j])) rep.chain_ok = false;
  }
  rep.ratios_ok = static_cast<std::uint64_t>(rep.ramification) == rep.expected;
  for (int j = 1; j <= n; ++j) {
    const auto want = checked_pow(q, j - 1, kMaxFormalDegree) * (q - 1);
    if (static_cast<std::uint64_t>(rep.theta_orders[j]) * want != static_cast<std::uint64_t>(rep.ramification))
      rep.ratios_ok = false;
  }
  rep.local_parameter = rep.theta_orders[n] == 1;

  // f^{(k)} over F_q[[pi]], exact to pi-degree q^{n-1} + 1.
  const int t = static_cast<int>(std::min<std::uint64_t>(checked_pow(q, n - 1, kMaxFormalDegree), 1022)) + 2;
  const SeriesRing s(ff::field(q), 1, t, {"pi"});
  const auto pis = s.var(0);
  SPoly prev{s.zero(), s.one()};
  SPoly cur = prev;
  for (int k = 1; k <= n; ++k) {
    prev = cur;
    SPoly frob(q * (cur.size() - 1) + 1, s.zero());
    for (std::size_t i = 0; i < cur.size(); ++i) frob[q * i] = s.pow(cur[i], q);
    cur = upoly::add(s, upoly::scale(s, cur, pis), frob);
  }
  const auto [quo, rem] = upoly::divmod_monic(s, cur, prev);
  rep.eisenstein_degree = upoly::degree<SeriesRing>(quo);
  bool ok = rem.empty() && static_cast<std::uint64_t>(rep.eisenstein_degree) == rep.expected &&
            s.equal(quo.back(), s.one());
  for (std::size_t i = 0; ok && i + 1 < quo.size(); ++i)
    if (s.constant_term(quo[i]) != 0) ok = false;
  if (ok && s.order(quo[0]) != 1) ok = false;
  rep.eisenstein = ok;
  return rep;
}

// ------------------------------------------------------ additive f^M

SPoly root_polynomial(const SeriesRing& r, const std::vector<SElem>& values) { return upoly::from_roots(r, values); }

upoly::Poly<ff::FiniteField> root_polynomial(const ff::FiniteField& l,
                                             const std::vector<ff::FiniteField::Elem>& values) {
  return upoly::from_roots(l, values);
}

namespace {

template <class R>
AdditiveRootPolynomial summarise(const R& ring, const upoly::Poly<R>& f, std::uint64_t q) {
  AdditiveRootPolynomial out;
  out.degree = f.empty() ? 0 : f.size() - 1;
  out.additive = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (ring.is_zero(f[i])) continue;
    out.exponents.push_back(i);
    std::uint64_t e = i;
    while (e > 1 && e % q == 0) e /= q;
    if (e != 1) out.additive = false;
  }
  return out;
}

template <class V>
std::vector<V> pick(const tormod::Submodule& m, const std::vector<V>& values) {
  std::vector<V> out;
  for (auto idx : m.indices()) {
    if (idx >= values.size()) throw Error(Errc::ShapeMismatch, "psi values do not cover the ambient module");
    out.push_back(values[idx]);
  }
  return out;
}

}  // namespace

AdditiveRootPolynomial additive_from_submodule(const SeriesRing& r, const tormod::Submodule& m,
                                               const std::vector<SElem>& psi_values, std::uint64_t q) {
  return summarise(r, root_polynomial(r, pick(m, psi_values)), q);
}

AdditiveRootPolynomial additive_from_submodule(const ff::FiniteField& l, const tormod::Submodule& m,
                                               const std::vector<ff::FiniteField::Elem>& psi_values) {
  return summarise(l, root_polynomial(l, pick(m, psi_values)), l.base().size());
}

// ------------------------------------------------------ f^M identities

FmReport verify_fm_identities(const drinfeld::DrinfeldModule& phi, const ff::Poly& p, int n, int ext_deg,
                              std::uint64_t max_aut, std::uint64_t cap) {
  if (n < 1 || ext_deg < 1) throw Error(Errc::InvalidInput, "need n >= 1 and ext_deg >= 1");
  const auto& fq = *phi.fq();
  const auto prime = ff::prime_data(phi.fq(), p);
  if (prime.delta != 1) throw Error(Errc::InvalidInput, "the prime must have degree 1");
  if (phi.characteristic() == prime.p) throw Error(Errc::InvalidInput, "the prime must be good (not the characteristic)");
  const int d = phi.rank();
  const auto module = std::make_shared<const tormod::TorsionModule>(
      phi.fq(), std::vector<tormod::PrimaryComponent>{{prime, std::vector<int>(d, n)}});

  FmReport rep;
  rep.q = fq.size();
  rep.d = d;
  rep.n = n;
  rep.ext_deg = ext_deg;

  // psi: a full level structure (an isomorphism onto E[p^n] at a good prime).
  ff::Poly pn = upoly::constant(fq, fq.one());
  for (int i = 0; i < n; ++i) pn = upoly::mul(fq, pn, p);
  const auto ext = drinfeld::extend(phi, ext_deg);
  const auto torsion = drinfeld::torsion_points(phi, pn, ext_deg, cap);
  if (torsion.points.size() != *module->size())
    throw Error(Errc::SearchExhausted, "E[p^n] is not split over the chosen extension");
  const auto& l = *ext.field;
  const std::uint64_t np = torsion.points.size();
  std::uint64_t total = 1;
  for (int j = 0; j < d; ++j) {
    if (total > cap / np) throw Error(Errc::CapacityExceeded, "too many candidate level structures");
    total *= np;
  }
  drinfeld::LevelStructureMap psi{module, ext.field, std::vector<drinfeld::KElem>(d)};
  bool found = false;
  for (std::uint64_t c = 0; c < total && !found; ++c) {
    auto t = c;
    for (int j = d; j-- > 0;) {
      psi.generator_images[j] = torsion.points[t % np];
      t /= np;
    }
    found = drinfeld::check_level_structure_fast(ext.phi, psi, cap);
  }
  if (!found) throw Error(Errc::SearchExhausted, "no full level structure over the chosen extension");
  const auto values = drinfeld::evaluate_level_map(ext.phi, psi, cap);

  auto fm = [&](const tormod::Submodule& m, const std::vector<drinfeld::KElem>& vals) {
    return root_polynomial(l, pick(m, vals));
  };
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    if (rep.counterexamples.size() < 16) rep.counterexamples.push_back(what);
  };

  std::vector<tormod::Submodule> subs;
  std::vector<int> a(d, 0);
  while (true) {
    subs.push_back(tormod::Submodule::rectangular(module, a));
    int j = d - 1;
    while (j >= 0 && a[j] == n) a[j--] = 0;
    if (j < 0) break;
    ++a[j];
  }
  rep.submodules = subs.size();
  std::vector<upoly::Poly<ff::FiniteField>> base_fm;
  for (const auto& m : subs) base_fm.push_back(fm(m, values));

  // Scalars z in kappa = F_q: f^M(z X) = z f^M(X).
  rep.scalar_ok = true;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& f = base_fm[i];
    for (SmallField::Elem z = 0; z < fq.size(); ++z) {
      const auto zl = l.from_base(z);
      upoly::Poly<ff::FiniteField> lhs, rhs;
      auto zp = l.one();
      for (const auto& c : f) {
        lhs.push_back(l.mul(c, zp));
        zp = l.mul(zp, zl);
      }
      upoly::trim(l, lhs);
      rhs = upoly::scale(l, f, zl);
      if (!upoly::equal(l, lhs, rhs)) fail(rep.scalar_ok, "scalar rule fails for M #" + std::to_string(i) + ", z = " + std::to_string(z));
    }
  }

  // Transport: f^M for psi o g equals f^{Mg} for psi.
  rep.transport_ok = true;
  const auto shape = tormod::primary_shape(*module);
  std::uint64_t sampled = 0;
  for (std::uint64_t code = 0; code < shape->code_space() && sampled < max_aut; ++code) {
    const auto mat = shape->unpack(code);
    if (!tormod::entries_valid(*shape, mat) || !tormod::is_invertible(*shape, mat)) continue;
    const tormod::ModuleAutomorphism g(shape, mat);
    ++sampled;
    std::vector<drinfeld::KElem> moved(values.size());
    for (std::uint64_t idx = 0; idx < values.size(); ++idx)
      moved[idx] = values[module->index(g.apply(module->element(idx)))];
    for (std::size_t i = 0; i < subs.size(); ++i) {
      const auto lhs = fm(subs[i], moved);
      const auto rhs = fm(tormod::act(subs[i], g), values);
      if (!upoly::equal(l, lhs, rhs))
        fail(rep.transport_ok, "transport fails for automorphism code " + std::to_string(code) + ", M #" +
                                   std::to_string(i));
    }
  }
  rep.automorphisms = sampled;

  // N[p^m] = (wp^{n-m})^d and f^{N[p^m]} = phi_{p^m} made monic.
  rep.kernel_ok = true;
  rep.torsion_ok = true;
  ff::Poly pm = upoly::constant(fq, fq.one());
  for (int m = 0; m <= n; ++m) {
    const auto ker = tormod::kernel_of(pm, module);
    if (!(ker == tormod::Submodule::rectangular(module, std::vector<int>(d, n - m))))
      fail(rep.kernel_ok, "N[p^" + std::to_string(m) + "] is not (wp^" + std::to_string(n - m) + ")^d");
    const auto lhs = fm(ker, values);
    const auto rhs = upoly::make_monic(l, ext.phi.phi(pm).as_polynomial());
    if (!upoly::equal(l, lhs, rhs)) fail(rep.torsion_ok, "f^{N[p^" + std::to_string(m) + "]} != monic phi_{p^m}");
    pm = upoly::mul(fq, pm, p);
  }
  return rep;
}

}  // namespace drinlev::formal
