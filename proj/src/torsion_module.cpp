#include "drinlev/tormod/torsion_module.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace drinlev::tormod {

TorsionModule::TorsionModule(ff::FieldPtr fq, std::vector<PrimaryComponent> components)
    : fq_(std::move(fq)), components_(std::move(components)) {
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const auto& comp = components_[c];
    if (!(*comp.prime.fq == *fq_)) throw Error(Errc::InvalidInput, "prime over a different base field");
    if (c > 0 && !ff::poly_less(components_[c - 1].prime.p, comp.prime.p))
      throw Error(Errc::InvalidInput, "components must be sorted by prime without repetition");
    if (comp.exponents.empty()) throw Error(Errc::InvalidInput, "empty exponent list");
    for (std::size_t i = 0; i < comp.exponents.size(); ++i) {
      if (comp.exponents[i] < 1) throw Error(Errc::InvalidInput, "exponents must be >= 1");
      if (i > 0 && comp.exponents[i] < comp.exponents[i - 1])
        throw Error(Errc::InvalidInput, "exponents must be ascending");
    }
  }
  std::uint64_t s = 1;
  bool fits = true;
  for (std::size_t c = 0; c < components_.size(); ++c)
    for (int n : components_[c].exponents) {
      rings_.push_back(ff::residue_ring(components_[c].prime, n));
      owner_.push_back(static_cast<int>(c));
      const std::uint64_t rs = rings_.back()->size();
      if (fits && s > (~std::uint64_t{0}) / rs) fits = false;
      if (fits) s *= rs;
    }
  if (fits) size_ = s;
}

std::optional<int> TorsionModule::find(const Poly& p) const {
  for (std::size_t c = 0; c < components_.size(); ++c)
    if (components_[c].prime.p == p) return static_cast<int>(c);
  return std::nullopt;
}

TorsionModule::Elem TorsionModule::basis(int j) const {
  Elem e = zero();
  e.at(j) = 1;
  return e;
}

TorsionModule::Elem TorsionModule::add(const Elem& x, const Elem& y) const {
  Elem r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = rings_[j]->add(x[j], y[j]);
  return r;
}

TorsionModule::Elem TorsionModule::neg(const Elem& x) const {
  Elem r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = rings_[j]->neg(x[j]);
  return r;
}

TorsionModule::Elem TorsionModule::mul(const Poly& a, const Elem& x) const {
  Elem r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = rings_[j]->mul(rings_[j]->from_poly(a), x[j]);
  return r;
}

TorsionModule::Elem TorsionModule::scale(ff::SmallField::Elem c, const Elem& x) const {
  return mul(upoly::constant(*fq_, c), x);
}

bool TorsionModule::is_zero(const Elem& x) const noexcept {
  return std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; });
}

std::uint64_t TorsionModule::index(const Elem& x) const {
  if (!size_) throw Error(Errc::CapacityExceeded, "module too large to index");
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < x.size(); ++j) idx = idx * rings_[j]->size() + x[j];
  return idx;
}

TorsionModule::Elem TorsionModule::element(std::uint64_t index) const {
  Elem x(rings_.size());
  for (std::size_t j = rings_.size(); j-- > 0;) {
    x[j] = static_cast<ResidueRing::Elem>(index % rings_[j]->size());
    index /= rings_[j]->size();
  }
  return x;
}

bool operator==(const TorsionModule& a, const TorsionModule& b) {
  if (!(*a.fq_ == *b.fq_) || a.components_.size() != b.components_.size()) return false;
  for (std::size_t c = 0; c < a.components_.size(); ++c)
    if (!(a.components_[c].prime == b.components_[c].prime) ||
        a.components_[c].exponents != b.components_[c].exponents)
      return false;
  return true;
}

TorsionModule primary_decomposition(const ff::FieldPtr& fq, const std::vector<Poly>& divisors) {
  std::map<Poly, std::vector<int>, decltype(&ff::poly_less)> parts(&ff::poly_less);
  for (const auto& d : divisors) {
    if (upoly::degree<ff::SmallField>(d) < 1) throw Error(Errc::ConstantDivisor, "divisor must be nonconstant");
    for (auto& [p, e] : ff::factor(*fq, d)) parts[p].push_back(e);
  }
  std::vector<PrimaryComponent> comps;
  for (auto& [p, es] : parts) {
    std::sort(es.begin(), es.end());
    comps.push_back({ff::prime_data(fq, p), es});
  }
  return TorsionModule(fq, std::move(comps));
}

// ---------------------------------------------------------------- Submodule

Submodule Submodule::rectangular(ModulePtr ambient, std::vector<int> ideal_exponents) {
  if (static_cast<int>(ideal_exponents.size()) != ambient->length())
    throw Error(Errc::ShapeMismatch, "one ideal exponent per summand expected");
  for (int j = 0; j < ambient->length(); ++j)
    ideal_exponents[j] = std::clamp(ideal_exponents[j], 0, ambient->ring(j).exponent());
  Submodule s(std::move(ambient));
  s.rect_ = std::move(ideal_exponents);
  return s;
}

Submodule Submodule::from_indices(ModulePtr ambient, std::vector<std::uint64_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (indices.empty() || indices.front() != 0) throw Error(Errc::InvalidInput, "a submodule contains 0");
  Submodule s(std::move(ambient));
  s.explicit_ = std::move(indices);
  return s;
}

Submodule Submodule::span(ModulePtr ambient, const std::vector<TorsionModule::Elem>& gens) {
  const auto& n = *ambient;
  if (!n.size() || *n.size() > kExplicitLimit)
    throw Error(Errc::CapacityExceeded, "span requires |N| <= 2^16");
  // F_q-spanning set: t^k g for all k until the orbit repeats.
  const Poly t = ff::var_t(*n.fq());
  std::vector<TorsionModule::Elem> vecs;
  for (auto g : gens) {
    if (static_cast<int>(g.size()) != n.length()) throw Error(Errc::ShapeMismatch, "generator length");
    std::set<std::uint64_t> seen;
    while (!n.is_zero(g) && seen.insert(n.index(g)).second) {
      vecs.push_back(g);
      g = n.mul(t, g);
    }
  }
  std::set<std::uint64_t> members{0};
  for (const auto& v : vecs) {
    if (members.count(n.index(v))) continue;
    std::vector<std::uint64_t> cur(members.begin(), members.end());
    for (auto idx : cur) {
      const auto x = n.element(idx);
      for (ff::SmallField::Elem c = 1; c < n.fq()->size(); ++c) members.insert(n.index(n.add(x, n.scale(c, v))));
    }
  }
  Submodule s(std::move(ambient));
  s.explicit_.assign(members.begin(), members.end());
  return s;
}

std::uint64_t Submodule::size() const {
  if (!rect_) return explicit_.size();
  std::uint64_t s = 1;
  for (int j = 0; j < ambient_->length(); ++j) s *= ambient_->ring(j).ideal_size((*rect_)[j]);
  return s;
}

bool Submodule::contains(const TorsionModule::Elem& x) const {
  if (static_cast<int>(x.size()) != ambient_->length()) throw Error(Errc::ShapeMismatch, "element length");
  if (rect_) {
    for (int j = 0; j < ambient_->length(); ++j)
      if (x[j] != 0 && ambient_->ring(j).valuation(x[j]) < (*rect_)[j]) return false;
    return true;
  }
  return std::binary_search(explicit_.begin(), explicit_.end(), ambient_->index(x));
}

std::vector<std::uint64_t> Submodule::indices(std::uint64_t cap) const {
  if (!rect_) return explicit_;
  if (size() > cap) throw Error(Errc::CapacityExceeded, "submodule too large to enumerate");
  // Elements of wp^a/wp^n are the codes that are multiples of q_wp^a.
  const int len = ambient_->length();
  std::vector<std::uint32_t> step(len), count(len);
  for (int j = 0; j < len; ++j) {
    const auto& r = ambient_->ring(j);
    step[j] = r.size() / r.ideal_size((*rect_)[j]);
    count[j] = r.ideal_size((*rect_)[j]);
  }
  std::vector<std::uint64_t> out;
  TorsionModule::Elem x(len, 0);
  std::vector<std::uint32_t> digit(len, 0);
  for (;;) {
    out.push_back(ambient_->index(x));
    int j = len - 1;
    while (j >= 0 && ++digit[j] == count[j]) {
      digit[j] = 0;
      x[j] = 0;
      --j;
    }
    if (j < 0) break;
    x[j] = digit[j] * step[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TorsionModule::Elem> Submodule::elements(std::uint64_t cap) const {
  std::vector<TorsionModule::Elem> out;
  for (auto idx : indices(cap)) out.push_back(ambient_->element(idx));
  return out;
}

bool operator==(const Submodule& a, const Submodule& b) {
  if (!(*a.ambient_ == *b.ambient_)) return false;
  if (a.rect_ && b.rect_) return *a.rect_ == *b.rect_;
  return a.size() == b.size() && a.indices() == b.indices();
}

// ------------------------------------------------------- kernels and socles

Submodule kernel_of(const Poly& a, const ModulePtr& n) {
  const auto& f = *n->fq();
  std::vector<int> ideal(n->length());
  for (int j = 0; j < n->length(); ++j) {
    const auto& ring = n->ring(j);
    const int e = ring.exponent();
    int v = e;  // a = 0 kills everything
    if (!a.empty()) {
      Poly rest = a;
      v = 0;
      while (v < e) {
        auto [quo, rem] = upoly::divmod_monic(f, rest, ring.prime().p);
        if (!rem.empty()) break;
        rest = std::move(quo);
        ++v;
      }
    }
    ideal[j] = e - v;
  }
  return Submodule::rectangular(n, std::move(ideal));
}

Submodule kernel_of(const std::vector<Poly>& gens, const ModulePtr& n) {
  Poly g;
  for (const auto& a : gens) g = upoly::gcd(*n->fq(), g, a);
  return kernel_of(g, n);
}

Socle socle(const ModulePtr& n, const Poly& p) {
  const auto c = n->find(p);
  if (!c) throw Error(Errc::PrimeNotInSupport, "prime " + ff::format_poly(p) + " not in the support");
  std::vector<int> ideal(n->length());
  int dim = 0;
  for (int j = 0; j < n->length(); ++j) {
    const int e = n->ring(j).exponent();
    if (n->component_of(j) == *c) {
      ideal[j] = e - 1;
      ++dim;
    } else {
      ideal[j] = e;
    }
  }
  return {Submodule::rectangular(n, std::move(ideal)), dim};
}

int min_generators(const TorsionModule& n, const Poly& p) {
  const auto c = n.find(p);
  return c ? static_cast<int>(n.components()[*c].exponents.size()) : 0;
}

}  // namespace drinlev::tormod
