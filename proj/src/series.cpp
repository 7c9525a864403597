#include "drinlev/ffpoly/series.hpp"

#include <algorithm>

#include "drinlev/error.hpp"

namespace drinlev::ff {

namespace {

void enumerate_degree(int nvars, int deg, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
  if (pos == nvars - 1) {
    cur[pos] = deg;
    out.push_back(cur);
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur[pos] = e;
    enumerate_degree(nvars, deg - e, cur, pos + 1, out);
  }
}

}  // namespace

SeriesRing::SeriesRing(FieldPtr field, int nvars, int trunc, std::vector<std::string> names)
    : field_(std::move(field)), nvars_(nvars), trunc_(trunc), names_(std::move(names)) {
  if (nvars < 1 || trunc < 1) throw Error(Errc::InvalidInput, "series ring needs >= 1 variable and P >= 1");
  if (names_.empty())
    for (int i = 0; i < nvars; ++i) names_.push_back("z" + std::to_string(i + 1));
  if (static_cast<int>(names_.size()) != nvars) throw Error(Errc::InvalidInput, "variable name count mismatch");
  for (int d = 0; d < trunc; ++d) {
    std::vector<int> cur(nvars, 0);
    std::vector<std::vector<int>> layer;
    enumerate_degree(nvars, d, cur, 0, layer);
    for (auto& e : layer) {
      index_.emplace(e, monomials_.size());
      monomials_.push_back(std::move(e));
      degree_.push_back(d);
    }
  }
  if (monomials_.size() > 200000) throw Error(Errc::CapacityExceeded, "truncated series ring too large");
  products_.resize(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    for (std::size_t j = 0; j < monomials_.size(); ++j) {
      if (degree_[i] + degree_[j] >= trunc_) continue;
      Exponent e(nvars_);
      for (int k = 0; k < nvars_; ++k) e[k] = monomials_[i][k] + monomials_[j][k];
      products_[i].emplace_back(j, index_.at(e));
    }
}

long SeriesRing::index_of(const Exponent& e) const {
  auto it = index_.find(e);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

SeriesRing::Elem SeriesRing::constant(SmallField::Elem c) const {
  Elem r = zero();
  r[0] = c;
  return r;
}

SeriesRing::Elem SeriesRing::var(int i) const {
  Exponent e(nvars_, 0);
  e.at(i) = 1;
  return monomial(e);
}

SeriesRing::Elem SeriesRing::monomial(const Exponent& e, SmallField::Elem c) const {
  Elem r = zero();
  const long idx = index_of(e);
  if (idx >= 0) r[idx] = c;
  return r;
}

bool SeriesRing::is_zero(const Elem& a) const noexcept {
  return std::all_of(a.begin(), a.end(), [](auto c) { return c == 0; });
}

SeriesRing::Elem SeriesRing::add(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field_->add(a[i], b[i]);
  return r;
}

SeriesRing::Elem SeriesRing::sub(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field_->sub(a[i], b[i]);
  return r;
}

SeriesRing::Elem SeriesRing::neg(const Elem& a) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field_->neg(a[i]);
  return r;
}

SeriesRing::Elem SeriesRing::scale(const Elem& a, SmallField::Elem c) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field_->mul(a[i], c);
  return r;
}

SeriesRing::Elem SeriesRing::mul(const Elem& a, const Elem& b) const {
  Elem r = zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (const auto& [j, k] : products_[i])
      if (b[j] != 0) r[k] = field_->add(r[k], field_->mul(a[i], b[j]));
  }
  return r;
}

SeriesRing::Elem SeriesRing::pow(const Elem& a, std::uint64_t k) const {
  Elem result = one();
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

SeriesRing::Elem SeriesRing::inv(const Elem& a) const {
  if (a[0] == 0) throw Error(Errc::NonUnitInverse, "series with zero constant term");
  // a = c(1 - u), u in m: a^{-1} = c^{-1} sum_{k<P} u^k
  const auto c_inv = field_->inv(a[0]);
  Elem u = neg(scale(a, c_inv));
  u[0] = 0;
  Elem sum = one();
  Elem term = one();
  for (int k = 1; k < trunc_; ++k) {
    term = mul(term, u);
    sum = add(sum, term);
  }
  return scale(sum, c_inv);
}

int SeriesRing::order(const Elem& a) const noexcept {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) return degree_[i];
  return trunc_;
}

SmallField::Elem SeriesRing::coeff(const Elem& a, const Exponent& e) const {
  const long idx = index_of(e);
  return idx < 0 ? 0 : a[idx];
}

SeriesRing::Elem SeriesRing::substitute(const Elem& f, const std::vector<Elem>& images) const {
  if (static_cast<int>(images.size()) != nvars_) throw Error(Errc::InvalidInput, "substitution arity mismatch");
  for (const auto& img : images)
    if (img[0] != 0) throw Error(Errc::InvalidInput, "substituted series must lie in the maximal ideal");
  // powers[k][e] = images[k]^e
  std::vector<std::vector<Elem>> powers(nvars_);
  for (int k = 0; k < nvars_; ++k) {
    powers[k].push_back(one());
    for (int e = 1; e < trunc_; ++e) powers[k].push_back(mul(powers[k].back(), images[k]));
  }
  Elem r = zero();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    Elem term = constant(f[i]);
    for (int k = 0; k < nvars_; ++k)
      if (monomials_[i][k] > 0) term = mul(term, powers[k][monomials_[i][k]]);
    r = add(r, term);
  }
  return r;
}

SeriesRing::Elem SeriesRing::kill_vars(const Elem& f, const std::vector<int>& vars) const {
  Elem r = f;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int v : vars)
      if (monomials_[i][v] > 0) r[i] = 0;
  return r;
}

std::map<std::string, long long> SeriesRing::to_map(const Elem& a) const {
  std::map<std::string, long long> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    std::string key;
    for (int k = 0; k < nvars_; ++k) {
      if (monomials_[i][k] == 0) continue;
      if (!key.empty()) key += "*";
      key += names_[k];
      if (monomials_[i][k] > 1) key += "^" + std::to_string(monomials_[i][k]);
    }
    if (key.empty()) key = "1";
    out[key] = a[i];
  }
  return out;
}

}  // namespace drinlev::ff
