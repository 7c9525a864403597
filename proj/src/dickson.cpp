#include "drinlev/dickson/dickson.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "drinlev/ffpoly/linalg.hpp"

namespace drinlev::dickson {

namespace mpoly {

namespace {
void accumulate(const SmallField& f, MPoly& into, const Exponent& e, Elem c) {
  if (c == 0) return;
  auto [it, inserted] = into.try_emplace(e, c);
  if (inserted) return;
  it->second = f.add(it->second, c);
  if (it->second == 0) into.erase(it);
}
}  // namespace

MPoly constant(int nvars, Elem c) {
  MPoly r;
  if (c != 0) r[Exponent(nvars, 0)] = c;
  return r;
}

MPoly var(int nvars, int i) {
  Exponent e(nvars, 0);
  e.at(i) = 1;
  return {{e, 1}};
}

MPoly add(const SmallField& f, const MPoly& a, const MPoly& b) {
  MPoly r = a;
  for (const auto& [e, c] : b) accumulate(f, r, e, c);
  return r;
}

MPoly sub(const SmallField& f, const MPoly& a, const MPoly& b) {
  MPoly r = a;
  for (const auto& [e, c] : b) accumulate(f, r, e, f.neg(c));
  return r;
}

MPoly scale(const SmallField& f, const MPoly& a, Elem c) {
  MPoly r;
  if (c == 0) return r;
  for (const auto& [e, x] : a) r[e] = f.mul(x, c);
  return r;
}

MPoly mul(const SmallField& f, const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      accumulate(f, r, e, f.mul(ca, cb));
    }
  return r;
}

MPoly pow(const SmallField& f, const MPoly& a, std::uint64_t k) {
  if (a.empty()) return {};  // the arity of 0^0 is unknown
  MPoly result = constant(static_cast<int>(a.begin()->first.size()), 1);
  MPoly base = a;
  while (k > 0) {
    if (k & 1) result = mul(f, result, base);
    k >>= 1;
    if (k > 0) base = mul(f, base, base);
  }
  return result;
}

MPoly divide_exact(const SmallField& f, const MPoly& a, const MPoly& b) {
  if (b.empty()) throw Error(Errc::ZeroElement, "division by the zero polynomial");
  const auto& [lb, cb] = *b.rbegin();
  const Elem cb_inv = f.inv(cb);
  MPoly rem = a;
  MPoly q;
  while (!rem.empty()) {
    const auto [lr, cr] = *rem.rbegin();
    Exponent e(lr.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = lr[i] - lb[i];
      if (e[i] < 0) throw Error(Errc::InvalidInput, "polynomial division is not exact");
    }
    const MPoly term{{e, f.mul(cr, cb_inv)}};
    q = add(f, q, term);
    rem = sub(f, rem, mul(f, term, b));
  }
  return q;
}

int homogeneous_degree(const MPoly& a) {
  int deg = -1;
  for (const auto& [e, c] : a) {
    const int s = std::accumulate(e.begin(), e.end(), 0);
    if (deg >= 0 && s != deg) throw Error(Errc::InvalidInput, "polynomial is not homogeneous");
    deg = s;
  }
  return deg;
}

MPoly act(const SmallField& f, const FMatrix& g, const MPoly& a) {
  const int d = static_cast<int>(g.size());
  std::vector<MPoly> images(d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      if (g[i][j] != 0) images[j] = add(f, images[j], scale(f, var(d, i), g[i][j]));
  // Powers of the images are shared between monomials.
  std::vector<std::map<int, MPoly>> powers(d);
  auto power = [&](int j, int k) -> const MPoly& {
    auto it = powers[j].find(k);
    if (it == powers[j].end()) it = powers[j].emplace(k, pow(f, images[j], k)).first;
    return it->second;
  };
  MPoly r;
  for (const auto& [e, c] : a) {
    MPoly term = constant(d, c);
    for (int j = 0; j < d; ++j)
      if (e[j] > 0) term = mul(f, term, power(j, e[j]));
    r = add(f, r, term);
  }
  return r;
}

std::vector<std::string> default_names(int nvars) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> names;
  for (int i = 0; i < nvars; ++i) names.push_back(nvars <= 3 ? small[i] : "x" + std::to_string(i + 1));
  return names;
}

std::string format(const MPoly& a, const std::vector<std::string>& names_in) {
  if (a.empty()) return "0";
  const auto names = names_in.empty() ? default_names(static_cast<int>(a.begin()->first.size())) : names_in;
  std::ostringstream os;
  bool first = true;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    std::vector<std::string> factors;
    if (it->second != 1) factors.push_back(std::to_string(it->second));
    for (std::size_t i = 0; i < it->first.size(); ++i) {
      if (it->first[i] == 0) continue;
      factors.push_back(it->first[i] == 1 ? names[i] : names[i] + "^" + std::to_string(it->first[i]));
    }
    if (factors.empty()) factors.push_back("1");
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

}  // namespace mpoly

std::vector<Exponent> monomials(int nvars, int degree) {
  std::vector<Exponent> out;
  Exponent e(nvars, 0);
  // Descending lexicographic: fill the earliest variable first.
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == nvars - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back(e);
    return out;
  }
  rec(rec, 0, degree);
  return out;
}

std::uint64_t component_dimension(int nvars, int degree) {
  // C(D + d - 1, d - 1), computed incrementally to stay exact.
  std::uint64_t c = 1;
  for (int i = 1; i < nvars; ++i) c = c * static_cast<std::uint64_t>(degree + i) / static_cast<std::uint64_t>(i);
  return c;
}

FMatrix identity(int d) {
  FMatrix m(d, std::vector<Elem>(d, 0));
  for (int i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

FMatrix multiply(const SmallField& f, const FMatrix& a, const FMatrix& b) {
  const std::size_t d = a.size();
  FMatrix c(d, std::vector<Elem>(d, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) c[i][j] = f.add(c[i][j], f.mul(a[i][k], b[k][j]));
    }
  return c;
}

MatrixGroupAction::MatrixGroupAction(FieldPtr field, int d, std::vector<FMatrix> generators, std::uint64_t cap)
    : field_(std::move(field)), d_(d), generators_(std::move(generators)) {
  if (d < 1) throw Error(Errc::InvalidInput, "matrix size must be positive");
  for (const auto& g : generators_) {
    if (static_cast<int>(g.size()) != d) throw Error(Errc::ShapeMismatch, "generator has the wrong size");
    for (const auto& row : g) {
      if (static_cast<int>(row.size()) != d) throw Error(Errc::ShapeMismatch, "generator has the wrong size");
      for (auto x : row)
        if (x >= field_->size()) throw Error(Errc::InvalidInput, "matrix entry outside the field");
    }
    if (ff::rank(*field_, g) != static_cast<std::size_t>(d)) throw Error(Errc::NotInvertible, "singular generator");
  }
  std::set<FMatrix> seen{identity(d)};
  std::vector<FMatrix> frontier{identity(d)};
  while (!frontier.empty()) {
    std::vector<FMatrix> next;
    for (const auto& a : frontier)
      for (const auto& g : generators_) {
        auto b = multiply(*field_, a, g);
        if (seen.insert(b).second) {
          if (seen.size() > cap) throw Error(Errc::CapacityExceeded, "group order exceeds the cap");
          next.push_back(std::move(b));
        }
      }
    frontier = std::move(next);
  }
  elements_.assign(seen.begin(), seen.end());
}

std::vector<FMatrix> gl_generators(const SmallField& f, int d) {
  std::vector<FMatrix> gens;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      auto t = identity(d);
      t[i][j] = 1;
      gens.push_back(t);
    }
  auto w = identity(d);
  w[0][0] = f.primitive();
  gens.push_back(w);
  return gens;
}

std::uint64_t gl_order(std::uint64_t q, int d) {
  std::uint64_t qd = 1;
  for (int i = 0; i < d; ++i) qd *= q;
  std::uint64_t order = 1;
  std::uint64_t qi = 1;
  for (int i = 0; i < d; ++i) {
    order *= qd - qi;
    qi *= q;
  }
  return order;
}

std::vector<std::vector<Elem>> fixed_point_equations(const SmallField& f, const FMatrix& g, int nvars,
                                                     int degree) {
  const auto basis = monomials(nvars, degree);
  std::map<Exponent, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  std::vector<std::vector<Elem>> rows(basis.size(), std::vector<Elem>(basis.size(), 0));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const MPoly image = mpoly::sub(f, mpoly::act(f, g, {{basis[c], 1}}), {{basis[c], 1}});
    for (const auto& [e, x] : image) rows[index.at(e)][c] = x;
  }
  return rows;
}

std::uint64_t invariant_dimension(const MatrixGroupAction& action, int degree, std::uint64_t cap) {
  if (degree < 0) throw Error(Errc::InvalidInput, "negative degree");
  const std::uint64_t n = component_dimension(action.d(), degree);
  if (n > cap) throw Error(Errc::CapacityExceeded, "component dimension exceeds the cap");
  ff::Rows stacked;
  for (const auto& g : action.generators()) {
    auto rows = fixed_point_equations(action.field(), g, action.d(), degree);
    stacked.insert(stacked.end(), rows.begin(), rows.end());
  }
  return n - ff::rank(action.field(), std::move(stacked));
}

namespace {

MPoly determinant(const SmallField& f, const std::vector<std::vector<MPoly>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  MPoly det;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    MPoly term = mpoly::constant(static_cast<int>(m[0][0].begin()->first.size()), 1);
    for (int i = 0; i < n; ++i) term = mpoly::mul(f, term, m[i][perm[i]]);
    det = inversions % 2 ? mpoly::sub(f, det, term) : mpoly::add(f, det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Moore matrix with rows x_j^{q^k} for the listed k.
MPoly moore(const SmallField& f, int d, const std::vector<int>& rows_k) {
  const std::uint64_t q = f.size();
  std::vector<std::vector<MPoly>> m;
  for (int k : rows_k) {
    std::uint64_t qk = 1;
    for (int i = 0; i < k; ++i) qk *= q;
    std::vector<MPoly> row;
    for (int j = 0; j < d; ++j) {
      Exponent e(d, 0);
      e[j] = static_cast<int>(qk);
      row.push_back({{e, 1}});
    }
    m.push_back(std::move(row));
  }
  return determinant(f, m);
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::vector<MPoly> dickson_generators(std::uint32_t q, int d) {
  if (d < 1) throw Error(Errc::InvalidInput, "d must be positive");
  const auto fp = ff::field(q);
  std::vector<int> base(d);
  std::iota(base.begin(), base.end(), 0);
  const MPoly delta = moore(*fp, d, base);
  std::vector<MPoly> gens;
  for (int i = d - 1; i >= 0; --i) {
    std::vector<int> rows;
    for (int k = 0; k <= d; ++k)
      if (k != i) rows.push_back(k);
    gens.push_back(mpoly::divide_exact(*fp, moore(*fp, d, rows), delta));
  }
  return gens;
}

DicksonReport verify_dickson(std::uint32_t q, int d, int dmax, std::uint64_t cap) {
  if (dmax < 0) throw Error(Errc::InvalidInput, "negative degree bound");
  const auto fp = ff::field(q);
  const auto& f = *fp;
  DicksonReport rep;
  rep.q = q;
  rep.d = d;
  rep.dmax = dmax;
  const MatrixGroupAction gl(fp, d, gl_generators(f, d), cap);
  const auto gens = dickson_generators(q, d);
  rep.generators_invariant = true;
  for (const auto& c : gens) {
    rep.degrees.push_back(mpoly::homogeneous_degree(c));
    rep.generators.push_back(mpoly::format(c));
    for (const auto& g : gl.generators())
      if (mpoly::act(f, g, c) != c) rep.generators_invariant = false;
  }
  // powers[i][a] = c_i^a, grown on demand.
  std::vector<std::vector<MPoly>> powers(d, {mpoly::constant(d, 1)});
  for (int D = 0; D <= dmax; ++D) {
    rep.invariant_dims.push_back(invariant_dimension(gl, D, cap));
    const auto basis = monomials(d, D);
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    ff::Rows rows;
    std::vector<int> a(d, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
      if (i == d) {
        if (left != 0) return;
        MPoly p = mpoly::constant(d, 1);
        for (int k = 0; k < d; ++k) {
          while (static_cast<int>(powers[k].size()) <= a[k]) powers[k].push_back(mpoly::mul(f, powers[k].back(), gens[k]));
          p = mpoly::mul(f, p, powers[k][a[k]]);
        }
        ff::Row row(basis.size(), 0);
        for (const auto& [e, c] : p) row[index.at(e)] = c;
        rows.push_back(std::move(row));
        return;
      }
      for (a[i] = 0; a[i] * rep.degrees[i] <= left; ++a[i]) self(self, i + 1, left - a[i] * rep.degrees[i]);
      a[i] = 0;
    };
    rec(rec, 0, D);
    rep.generator_dims.push_back(rows.size());
    rep.span_dims.push_back(ff::rank(f, std::move(rows)));
  }
  rep.equal = rep.invariant_dims == rep.generator_dims && rep.generator_dims == rep.span_dims;
  for (int i = 0; i < d; ++i)
    if (rep.degrees[i] != static_cast<int>(ipow(q, d) - ipow(q, d - 1 - i))) rep.equal = false;
  return rep;
}

// ------------------------------------------------------------ local models

namespace {
using ff::SeriesRing;

SeriesAction identity_action(const SeriesRing& ring) {
  SeriesAction a;
  for (int i = 0; i < ring.nvars(); ++i) a.push_back(ring.var(i));
  return a;
}

// (g h)(v) = g(h(v)): substitute g's images into h's.
SeriesAction compose(const SeriesRing& ring, const SeriesAction& g, const SeriesAction& h) {
  SeriesAction r;
  for (const auto& img : h) r.push_back(ring.substitute(img, g));
  return r;
}

void check_hypotheses(const SeriesRing& ring, const SeriesAction& g, std::size_t which) {
  const int n = ring.nvars();
  const int y = n - 1;
  auto fail = [&](const std::string& cond) {
    std::ostringstream os;
    os << "group element " << which << " {";
    for (int i = 0; i < n; ++i) {
      os << (i ? "; " : "") << ring.names()[i] << " -> ";
      bool first = true;
      for (const auto& [mono, c] : ring.to_map(g[i])) {
        os << (first ? "" : " + ") << c << "*" << mono;
        first = false;
      }
    }
    os << "}: " << cond;
    throw Error(Errc::HypothesisViolated, os.str());
  };
  for (int i = 0; i < y; ++i)
    if (g[i] != ring.var(i)) fail("g(" + ring.names()[i] + ") != " + ring.names()[i]);
  std::vector<int> xs(y);
  std::iota(xs.begin(), xs.end(), 0);
  const auto gy = ring.kill_vars(g[y], xs);
  if (ring.order(gy) != 1) fail("g(y) is not y times a unit modulo (x)");
}

}  // namespace

SeriesAction scaling_action(const SeriesRing& ring, Elem zeta) {
  if (zeta == 0) throw Error(Errc::InvalidInput, "scaling factor must be nonzero");
  auto a = identity_action(ring);
  a.back() = ring.scale(ring.var(ring.nvars() - 1), zeta);
  return a;
}

SeriesAction translation_action(const SeriesRing& ring, Elem c, int i) {
  if (i < 0 || i >= ring.nvars() - 1) throw Error(Errc::InvalidInput, "translation variable out of range");
  auto a = identity_action(ring);
  a.back() = ring.add(ring.var(ring.nvars() - 1), ring.scale(ring.var(i), c));
  return a;
}

KmReport km_check(const SeriesRing& ring, const std::vector<SeriesAction>& generators, std::uint64_t cap) {
  const int n = ring.nvars();
  if (n < 1) throw Error(Errc::InvalidInput, "ring needs at least the variable y");
  const SmallField& f = ring.field();
  const int P = ring.truncation();
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != n) throw Error(Errc::InvalidInput, "action arity mismatch");
    for (const auto& img : g)
      if (img.size() != ring.dimension() || img[0] != 0)
        throw Error(Errc::InvalidInput, "variable images must lie in the maximal ideal");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) check_hypotheses(ring, generators[i], i);

  std::set<SeriesAction> seen{identity_action(ring)};
  std::vector<SeriesAction> frontier{identity_action(ring)};
  while (!frontier.empty()) {
    std::vector<SeriesAction> next;
    for (const auto& a : frontier)
      for (const auto& g : generators) {
        auto b = compose(ring, g, a);
        if (seen.insert(b).second) {
          if (seen.size() > cap) throw Error(Errc::CapacityExceeded, "group order exceeds the cap");
          next.push_back(std::move(b));
        }
      }
    frontier = std::move(next);
  }
  const std::vector<SeriesAction> group(seen.begin(), seen.end());
  for (std::size_t i = 0; i < group.size(); ++i) check_hypotheses(ring, group[i], i);

  KmReport rep;
  const std::uint64_t m = group.size();
  rep.group_order = m;
  const auto y = ring.var(n - 1);
  rep.norm = ring.one();
  for (const auto& g : group) rep.norm = ring.mul(rep.norm, g[n - 1]);
  rep.norm_order = ring.order(rep.norm);
  rep.norm_invariant = true;
  for (const auto& g : generators)
    if (ring.substitute(rep.norm, g) != rep.norm) rep.norm_invariant = false;

  // x^a N^b y^i over exponents with |a| + m b + i < P.
  rep.ring_dimension = ring.dimension();
  std::vector<SeriesRing::Elem> npow{ring.one()};
  std::vector<SeriesRing::Elem> ypow{ring.one()};
  for (int k = 1; k < P; ++k) {
    npow.push_back(ring.mul(npow.back(), rep.norm));
    ypow.push_back(ring.mul(ypow.back(), y));
  }
  ff::Rows family;
  ff::Rows params;
  for (const auto& mono : ring.monomials()) {
    // Monomials of the x-variables only, times N^b y^i.
    if (mono[n - 1] != 0) continue;
    int ax = 0;
    for (int i = 0; i < n - 1; ++i) ax += mono[i];
    const auto xa = ring.monomial(mono);
    for (std::uint64_t b = 0; ax + static_cast<int>(m * b) < P; ++b) {
      const auto xn = ring.mul(xa, npow[b]);
      params.push_back(xn);
      for (std::uint64_t i = 0; i < m && ax + static_cast<int>(m * b + i) < P; ++i)
        family.push_back(ring.mul(xn, ypow[i]));
    }
  }
  rep.family_rank = ff::rank(f, family);
  rep.free_basis_ok = family.size() == rep.ring_dimension && rep.family_rank == rep.ring_dimension;
  rep.param_count = params.size();
  rep.param_rank = ff::rank(f, params);

  ff::Rows stacked;
  const std::size_t dim = ring.dimension();
  for (const auto& g : generators) {
    ff::Rows rows(dim, ff::Row(dim, 0));
    for (std::size_t c = 0; c < dim; ++c) {
      const auto e = ring.monomial(ring.monomials()[c]);
      const auto diff = ring.sub(ring.substitute(e, g), e);
      for (std::size_t r = 0; r < dim; ++r) rows[r][c] = diff[r];
    }
    stacked.insert(stacked.end(), rows.begin(), rows.end());
  }
  rep.fixed_dim = dim - ff::rank(f, stacked);

  // With A free of rank #G over F[[x, N]] inside A^G and [Frac A : Frac A^G]
  // = #G, the normal ring F[[x, N]] equals A^G.
  rep.params_ok = rep.free_basis_ok && rep.norm_invariant && rep.norm_order == std::min<int>(static_cast<int>(m), P) &&
                  rep.param_rank == rep.param_count;
  return rep;
}

}  // namespace drinlev::dickson
