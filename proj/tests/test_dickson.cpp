#include <doctest.h>

#include <cmath>
#include <functional>

#include "drinlev/dickson/dickson.hpp"

using namespace drinlev;
using namespace drinlev::dickson;

namespace {

// Naive polynomial arithmetic, independent of the library's.
MPoly o_mul(const SmallField& f, const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponent e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r[e] = f.add(r[e], f.mul(ca, cb));
    }
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

MPoly o_act(const SmallField& f, const FMatrix& g, const Exponent& mono) {
  const int d = static_cast<int>(g.size());
  MPoly r{{Exponent(d, 0), 1}};
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < mono[j]; ++k) {
      MPoly lin;
      for (int i = 0; i < d; ++i) {
        Exponent e(d, 0);
        e[i] = 1;
        if (g[i][j]) lin[e] = g[i][j];
      }
      r = o_mul(f, r, lin);
    }
  return r;
}

// All invertible d x d matrices satisfying a predicate, by exhaustion.
std::vector<FMatrix> o_matrices(const SmallField& f, int d, const std::function<bool(const FMatrix&)>& keep) {
  std::vector<FMatrix> out;
  const std::uint64_t q = f.size();
  std::uint64_t total = 1;
  for (int i = 0; i < d * d; ++i) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    FMatrix m(d, std::vector<Elem>(d));
    auto c = code;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        m[i][j] = static_cast<Elem>(c % q);
        c /= q;
      }
    if (!keep(m)) continue;
    // Invertible iff x -> x m is injective on F_q^d.
    bool injective = true;
    std::uint64_t vecs = 1;
    for (int i = 0; i < d; ++i) vecs *= q;
    for (std::uint64_t v = 1; v < vecs && injective; ++v) {
      std::vector<Elem> x(d), y(d, 0);
      auto t = v;
      for (int i = 0; i < d; ++i) {
        x[i] = static_cast<Elem>(t % q);
        t /= q;
      }
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) y[j] = f.add(y[j], f.mul(x[i], m[i][j]));
      injective = std::any_of(y.begin(), y.end(), [](Elem e) { return e != 0; });
    }
    if (injective) out.push_back(m);
  }
  return out;
}

// Oracle: count the degree-D polynomials fixed by every listed matrix and
// return log_q of the count.
std::uint64_t o_invariant_dimension(const SmallField& f, int d, const std::vector<FMatrix>& group, int D) {
  const auto basis = monomials(d, D);
  const std::size_t n = basis.size();
  std::map<Exponent, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[basis[i]] = i;
  std::vector<std::vector<std::vector<Elem>>> mats;
  for (const auto& g : group) {
    std::vector<std::vector<Elem>> m(n, std::vector<Elem>(n, 0));
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [e, x] : o_act(f, g, basis[c])) m[index.at(e)][c] = x;
    mats.push_back(std::move(m));
  }
  const std::uint64_t q = f.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  std::uint64_t fixed = 0;
  std::vector<Elem> v(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    auto c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<Elem>(c % q);
      c /= q;
    }
    bool ok = true;
    for (const auto& m : mats) {
      for (std::size_t r = 0; r < n && ok; ++r) {
        Elem s = 0;
        for (std::size_t k = 0; k < n; ++k) s = f.add(s, f.mul(m[r][k], v[k]));
        ok = s == v[r];
      }
      if (!ok) break;
    }
    if (ok) ++fixed;
  }
  std::uint64_t dim = 0;
  while (fixed > 1) {
    CHECK(fixed % q == 0);
    fixed /= q;
    ++dim;
  }
  return dim;
}

MPoly p(std::initializer_list<std::pair<Exponent, Elem>> terms) { return MPoly(terms.begin(), terms.end()); }

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const auto f = ff::field(3);
  const auto x = mpoly::var(2, 0), y = mpoly::var(2, 1);
  const auto s = mpoly::add(*f, x, y);
  CHECK(mpoly::mul(*f, s, s) == o_mul(*f, s, s));
  CHECK(mpoly::pow(*f, s, 3) == mpoly::add(*f, mpoly::pow(*f, x, 3), mpoly::pow(*f, y, 3)));
  CHECK(mpoly::divide_exact(*f, mpoly::mul(*f, s, mpoly::sub(*f, x, y)), s) == mpoly::sub(*f, x, y));
  CHECK_THROWS_AS(mpoly::divide_exact(*f, x, y), Error);
  CHECK(mpoly::homogeneous_degree(mpoly::mul(*f, s, x)) == 2);
  CHECK_THROWS_AS(mpoly::homogeneous_degree(mpoly::add(*f, x, mpoly::constant(2, 1))), Error);
  CHECK(mpoly::format(mpoly::mul(*f, s, s)) == "x^2 + 2*x*y + y^2");
  CHECK(monomials(2, 2) == std::vector<Exponent>{{2, 0}, {1, 1}, {0, 2}});
  for (int d = 1; d <= 4; ++d)
    for (int D = 0; D <= 6; ++D) CHECK(monomials(d, D).size() == component_dimension(d, D));
}

TEST_CASE("action is multiplicative and compatible with matrix products") {
  const auto f = ff::field(3);
  const auto gl = o_matrices(*f, 2, [](const FMatrix&) { return true; });
  const auto a = p({{{2, 1}, 1}, {{0, 3}, 2}});
  const auto b = p({{{1, 0}, 1}, {{0, 1}, 1}});
  for (std::size_t i = 0; i < gl.size(); i += 5)
    for (std::size_t j = 0; j < gl.size(); j += 7) {
      const auto& g = gl[i];
      const auto& h = gl[j];
      CHECK(mpoly::act(*f, g, mpoly::mul(*f, a, b)) == mpoly::mul(*f, mpoly::act(*f, g, a), mpoly::act(*f, g, b)));
      // f(x g h) = g acting on (x -> f(x h))
      CHECK(mpoly::act(*f, multiply(*f, g, h), a) == mpoly::act(*f, g, mpoly::act(*f, h, a)));
    }
}

TEST_CASE("group generation") {
  for (auto [q, d] : {std::pair{2u, 1}, {3u, 1}, {2u, 2}, {3u, 2}, {2u, 3}, {4u, 2}}) {
    const auto f = ff::field(q);
    const MatrixGroupAction gl(f, d, gl_generators(*f, d));
    CHECK(gl.order() == gl_order(q, d));
    if (q <= 3 && d <= 2) {
      auto all = o_matrices(*f, d, [](const FMatrix&) { return true; });
      std::sort(all.begin(), all.end());
      CHECK(gl.elements() == all);
    }
  }
  const auto f = ff::field(2);
  CHECK_THROWS_AS(MatrixGroupAction(f, 2, {{{1, 1}, {1, 1}}}), Error);
  CHECK_THROWS_AS(MatrixGroupAction(f, 3, gl_generators(*f, 3), 100), Error);
}

TEST_CASE("invariant_dimension examples") {
  const auto f2 = ff::field(2);
  const MatrixGroupAction trivial(f2, 3, {});
  for (int D = 0; D <= 5; ++D) CHECK(invariant_dimension(trivial, D) == component_dimension(3, D));
  const MatrixGroupAction gl(f2, 2, gl_generators(*f2, 2));
  CHECK(invariant_dimension(gl, 2) == 1);
  CHECK(invariant_dimension(gl, 1) == 0);
  CHECK_THROWS_AS(invariant_dimension(gl, 40, 10), Error);
}

TEST_CASE("invariant_dimension agrees with exhaustive fixed-point counts") {
  struct Case {
    std::uint32_t q;
    int d;
    int dmax;
  };
  for (auto c : {Case{2, 2, 6}, Case{3, 2, 5}, Case{3, 1, 8}, Case{2, 3, 2}, Case{4, 1, 6}}) {
    const auto f = ff::field(c.q);
    const MatrixGroupAction gl(f, c.d, gl_generators(*f, c.d));
    const auto all = o_matrices(*f, c.d, [](const FMatrix&) { return true; });
    const auto upper = [&](const FMatrix& m) {
      for (int i = 0; i < c.d; ++i)
        for (int j = 0; j < i; ++j)
          if (m[i][j]) return false;
      return true;
    };
    const auto borel = o_matrices(*f, c.d, upper);
    const auto diag = o_matrices(*f, c.d, [&](const FMatrix& m) {
      for (int i = 0; i < c.d; ++i)
        for (int j = 0; j < c.d; ++j)
          if (i != j && m[i][j]) return false;
      return true;
    });
    const MatrixGroupAction b(f, c.d, borel);
    const MatrixGroupAction t(f, c.d, diag);
    for (int D = 0; D <= c.dmax; ++D) {
      CAPTURE(c.q);
      CAPTURE(c.d);
      CAPTURE(D);
      const auto dg = invariant_dimension(gl, D);
      const auto db = invariant_dimension(b, D);
      const auto dt = invariant_dimension(t, D);
      CHECK(dg == o_invariant_dimension(*f, c.d, all, D));
      CHECK(db == o_invariant_dimension(*f, c.d, borel, D));
      CHECK(dt == o_invariant_dimension(*f, c.d, diag, D));
      // Monotone under inclusion: T <= B <= GL.
      CHECK(dg <= db);
      CHECK(db <= dt);
      CHECK(dt <= component_dimension(c.d, D));
    }
  }
}

TEST_CASE("dickson_generators examples") {
  CHECK(dickson_generators(3, 1) == std::vector<MPoly>{p({{{2}, 1}})});
  CHECK(dickson_generators(2, 1) == std::vector<MPoly>{p({{{1}, 1}})});
  const auto g = dickson_generators(2, 2);
  REQUIRE(g.size() == 2);
  CHECK(mpoly::format(g[0]) == "x^2 + x*y + y^2");
  CHECK(mpoly::format(g[1]) == "x^2*y + x*y^2");
}

TEST_CASE("dickson_generators match the orbit product prod_v (X - v)") {
  // prod over v in span(x_1..x_d) of (X - v) = sum_i (-1)^{d-i} c_{d,i} X^{q^i}.
  for (auto [q, d] : {std::pair{2u, 1}, {3u, 1}, {5u, 1}, {2u, 2}, {3u, 2}, {4u, 2}, {2u, 3}}) {
    CAPTURE(q);
    CAPTURE(d);
    const auto f = ff::field(q);
    const int nv = d + 1;
    MPoly prod{{Exponent(nv, 0), 1}};
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (std::uint64_t v = 0; v < count; ++v) {
      MPoly lin;
      Exponent ex(nv, 0);
      ex[d] = 1;
      lin[ex] = 1;
      auto t = v;
      for (int i = 0; i < d; ++i) {
        const auto a = static_cast<Elem>(t % q);
        t /= q;
        if (a == 0) continue;
        Exponent e(nv, 0);
        e[i] = 1;
        lin[e] = f->neg(a);
      }
      prod = o_mul(*f, prod, lin);
    }
    const auto gens = dickson_generators(q, d);
    REQUIRE(static_cast<int>(gens.size()) == d);
    std::uint64_t qi = 1;
    for (int i = 0; i < d; ++i) {
      MPoly coeff;
      for (const auto& [e, c] : prod)
        if (e[d] == static_cast<int>(qi)) coeff[Exponent(e.begin(), e.begin() + d)] = c;
      const MPoly expected = (d - i) % 2 ? mpoly::scale(*f, coeff, f->neg(1)) : coeff;
      CHECK(gens[d - 1 - i] == expected);
      std::uint64_t qd = 1;
      for (int k = 0; k < d; ++k) qd *= q;
      CHECK(mpoly::homogeneous_degree(gens[d - 1 - i]) == static_cast<int>(qd - qi));
      qi *= q;
    }
    // Every generator is fixed by every generator of GL_d(F_q).
    for (const auto& c : gens)
      for (const auto& g : gl_generators(*f, d)) CHECK(mpoly::act(*f, g, c) == c);
  }
}

TEST_CASE("verify_dickson") {
  const auto r = verify_dickson(2, 2, 12);
  CHECK(r.equal);
  CHECK(r.generators_invariant);
  CHECK(r.degrees == std::vector<int>{2, 3});
  CHECK(r.invariant_dims[6] == 2);
  const auto r31 = verify_dickson(3, 1, 8);
  CHECK(r31.equal);
  for (int D = 0; D <= 8; ++D) CHECK(r31.invariant_dims[D] == (D % 2 == 0 ? 1u : 0u));
  const auto r21 = verify_dickson(2, 1, 9);
  for (auto x : r21.invariant_dims) CHECK(x == 1);
  const auto r32 = verify_dickson(3, 2, 12);
  CHECK(r32.equal);
  CHECK(r32.degrees == std::vector<int>{6, 8});
  CHECK(verify_dickson(2, 3, 8).equal);
  CHECK(verify_dickson(4, 2, 13).equal);
}

// ------------------------------------------------------------ km_check

namespace {
ff::SeriesRing model(std::uint32_t q, int P, int nx = 1) {
  std::vector<std::string> names;
  for (int i = 0; i < nx; ++i) names.push_back("x" + std::to_string(i + 1));
  names.push_back("y");
  return ff::SeriesRing(ff::field(q), nx + 1, P, names);
}

int multiplicative_order(const SmallField& f, Elem z) {
  int m = 1;
  for (Elem a = z; a != 1; a = f.mul(a, z)) ++m;
  return m;
}
}  // namespace

TEST_CASE("km_check: scaling actions") {
  for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
    const auto R = model(q, 10);
    const auto& f = R.field();
    for (Elem zeta = 1; zeta < q; ++zeta) {
      CAPTURE(q);
      CAPTURE(zeta);
      const int m = multiplicative_order(f, zeta);
      const auto rep = km_check(R, {scaling_action(R, zeta)});
      CHECK(rep.group_order == static_cast<std::uint64_t>(m));
      const auto expected = R.monomial({0, m}, f.pow(zeta, static_cast<std::uint64_t>(m) * (m - 1) / 2));
      CHECK(rep.norm == expected);
      CHECK(rep.free_basis_ok);
      CHECK(rep.params_ok);
      CHECK(rep.fixed_dim == rep.param_count);
    }
  }
}

TEST_CASE("km_check: translation y -> y + x") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int P = 2; P <= 12; ++P) {
      CAPTURE(p);
      CAPTURE(P);
      const auto R = model(p, P);
      const auto rep = km_check(R, {translation_action(R, 1)});
      CHECK(rep.group_order == p);
      // y^p - x^{p-1} y
      auto expected = R.sub(R.monomial({0, static_cast<int>(p)}), R.monomial({static_cast<int>(p) - 1, 1}));
      CHECK(rep.norm == expected);
      CHECK(rep.free_basis_ok);
      CHECK(rep.params_ok);
    }
  }
}

TEST_CASE("km_check: affine and nonlinear actions of order 2") {
  const auto R = model(3, 10);
  const auto x = R.var(0), y = R.var(1);
  // y -> 2y + x and y -> 2y + x^2 both square to the identity.
  for (const auto& shift : {x, R.mul(x, x)}) {
    const SeriesAction g{x, R.add(R.scale(y, 2), shift)};
    const auto rep = km_check(R, {g});
    CHECK(rep.group_order == 2);
    CHECK(rep.norm == R.mul(y, g[1]));
    CHECK(rep.free_basis_ok);
    CHECK(rep.params_ok);
  }
  // Two x-variables, y -> y + x1 and y -> y + x2 generate (Z/3)^2.
  const auto R2 = model(3, 10, 2);
  const auto rep = km_check(R2, {translation_action(R2, 1, 0), translation_action(R2, 1, 1)});
  CHECK(rep.group_order == 9);
  CHECK(rep.norm_order == 9);
  CHECK(rep.free_basis_ok);
  CHECK(rep.params_ok);
}

TEST_CASE("km_check: trivial group and hypothesis violations") {
  const auto R = model(2, 6);
  const auto x = R.var(0), y = R.var(1);
  const auto rep = km_check(R, {});
  CHECK(rep.group_order == 1);
  CHECK(rep.norm == y);
  CHECK(rep.free_basis_ok);
  CHECK(rep.params_ok);
  auto code_of = [&](const std::vector<SeriesAction>& gens) {
    try {
      km_check(R, gens);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidInput;
  };
  CHECK(code_of({{R.add(x, y), y}}) == Errc::HypothesisViolated);
  CHECK(code_of({{x, R.add(R.mul(y, y), x)}}) == Errc::HypothesisViolated);
  CHECK(code_of({{x, x}}) == Errc::HypothesisViolated);
  CHECK(code_of({{x, R.add(y, R.one())}}) == Errc::InvalidInput);
}
