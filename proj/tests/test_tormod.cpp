#include <set>

#include "doctest.h"
#include "drinlev/tormod/automorphism.hpp"

using namespace drinlev;
using namespace drinlev::tormod;
using ff::field;
using ff::parse_poly;

namespace {

ModulePtr module(std::uint32_t q, const char* p, std::vector<int> exps) {
  const auto f = field(q);
  return std::make_shared<const TorsionModule>(
      f, std::vector<PrimaryComponent>{{ff::prime_data(f, parse_poly(*f, p)), std::move(exps)}});
}

// Oracle: a*x = 0 decided with plain polynomial arithmetic mod p^n.
bool killed_by(const TorsionModule& n, const Poly& a, const TorsionModule::Elem& x) {
  const auto& f = *n.fq();
  for (int j = 0; j < n.length(); ++j) {
    const auto& r = n.ring(j);
    Poly mod{1};
    for (int k = 0; k < r.exponent(); ++k) mod = upoly::mul(f, mod, r.prime().p);
    if (!upoly::rem(f, upoly::mul(f, a, r.to_poly(x[j])), mod).empty()) return false;
  }
  return true;
}

std::vector<TorsionModule::Elem> all_elements(const TorsionModule& n) {
  std::vector<TorsionModule::Elem> out;
  for (std::uint64_t i = 0; i < *n.size(); ++i) out.push_back(n.element(i));
  return out;
}


}  // namespace

TEST_CASE("primary_decomposition") {
  const auto f2 = field(2);
  SUBCASE("CRT split") {
    auto n = primary_decomposition(f2, {parse_poly(*f2, "t^2+t")});
    REQUIRE(n.components().size() == 2);
    CHECK(n.components()[0].prime.p == parse_poly(*f2, "t"));
    CHECK(n.components()[0].exponents == std::vector<int>{1});
    CHECK(n.components()[1].prime.p == parse_poly(*f2, "t+1"));
    CHECK(n.components()[1].exponents == std::vector<int>{1});
    CHECK(*n.size() == 4);
    CHECK(*n.size() == ff::absolute_value(*f2, parse_poly(*f2, "t^2+t")));
  }
  SUBCASE("already primary") {
    auto n = primary_decomposition(f2, {parse_poly(*f2, "t"), parse_poly(*f2, "t")});
    REQUIRE(n.components().size() == 1);
    CHECK(n.components()[0].exponents == std::vector<int>{1, 1});
  }
  SUBCASE("prime power") {
    auto n = primary_decomposition(f2, {parse_poly(*f2, "t^2")});
    REQUIRE(n.components().size() == 1);
    CHECK(n.components()[0].exponents == std::vector<int>{2});
  }
  SUBCASE("sorted exponents and sizes") {
    const auto f3 = field(3);
    auto n = primary_decomposition(f3, {parse_poly(*f3, "t^3"), parse_poly(*f3, "t^2+1"), parse_poly(*f3, "t")});
    REQUIRE(n.components().size() == 2);
    CHECK(n.components()[0].exponents == std::vector<int>{1, 3});
    CHECK(n.components()[1].exponents == std::vector<int>{1});
    CHECK(*n.size() == 27 * 9 * 3);
  }
  SUBCASE("constant divisor") {
    try {
      primary_decomposition(f2, {Poly{1}});
      FAIL("expected ConstantDivisor");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ConstantDivisor);
    }
  }
}

TEST_CASE("kernel_of matches enumeration") {
  struct Case {
    std::uint32_t q;
    const char* p;
    std::vector<int> exps;
  };
  const std::vector<Case> cases{{2, "t", {2, 2}}, {2, "t", {1, 3}}, {2, "t^2+t+1", {1, 2}}, {3, "t+1", {2, 2}},
                                {4, "t", {1, 2}}, {2, "t+1", {1, 1, 2}}};
  for (const auto& c : cases) {
    const auto n = module(c.q, c.p, c.exps);
    const auto& f = *n->fq();
    const Poly p = n->components()[0].prime.p;
    const auto elems = all_elements(*n);
    Poly pm{1};
    for (int m = 0; m <= 4; ++m) {
      const auto ker = kernel_of(pm, n);
      std::uint64_t count = 0;
      std::set<std::uint64_t> image;
      for (const auto& x : elems) {
        const bool k = killed_by(*n, pm, x);
        CHECK(k == ker.contains(x));
        count += k;
        image.insert(n->index(n->mul(pm, x)));
      }
      CHECK(count == ker.size());
      CHECK(ker.size() * image.size() == *n->size());
      // rectangular description (wp^{n_i - m})
      for (int j = 0; j < n->length(); ++j)
        CHECK(ker.ideal_exponents()[j] == std::max(0, n->ring(j).exponent() - m));
      pm = upoly::mul(f, pm, p);
    }
    // a coprime to p kills nothing
    const Poly other = parse_poly(f, c.p) == parse_poly(f, "t") ? parse_poly(f, "t+1") : parse_poly(f, "t");
    CHECK(kernel_of(other, n).size() == 1);
    CHECK(kernel_of(Poly{1}, n).size() == 1);
  }
}

TEST_CASE("kernel_of examples") {
  const auto n = module(2, "t", {2, 2});
  const auto k = kernel_of(parse_poly(*n->fq(), "t"), n);
  CHECK(k.size() == 4);
  CHECK(k.ideal_exponents() == std::vector<int>{1, 1});
  const auto all = kernel_of(parse_poly(*n->fq(), "t^2"), n);
  CHECK(all.size() == 16);
  // N[I] for I = (t^2, t^3 + t) = (t)
  CHECK(kernel_of({parse_poly(*n->fq(), "t^2"), parse_poly(*n->fq(), "t^3+t")}, n) == k);
}

TEST_CASE("socle and min_generators") {
  const auto f2 = field(2);
  auto check_dim = [](const ModulePtr& n, int expect) {
    const Poly p = n->components()[0].prime.p;
    const auto s = socle(n, p);
    CHECK(s.dimension == expect);
    std::uint64_t count = 0;
    for (const auto& x : all_elements(*n)) count += killed_by(*n, p, x);
    std::uint64_t qd = 1;
    for (int i = 0; i < expect; ++i) qd *= n->components()[0].prime.q_wp;
    CHECK(count == qd);
    CHECK(s.sub.size() == qd);
    CHECK(min_generators(*n, p) == expect);
  };
  check_dim(module(2, "t", {1, 3}), 2);
  check_dim(module(2, "t", {1}), 1);
  check_dim(module(2, "t", {2, 2, 2}), 3);
  check_dim(module(4, "t", {1, 2}), 2);
  check_dim(module(2, "t^2+t+1", {5}), 1);
  const auto n = module(2, "t", {1});
  try {
    socle(n, parse_poly(*f2, "t+1"));
    FAIL("expected PrimeNotInSupport");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PrimeNotInSupport);
  }
}

TEST_CASE("span is a submodule") {
  const auto n = module(2, "t", {1, 3});
  const auto m = Submodule::span(n, {{1, 2}});
  // closed under addition and t
  const Poly t = ff::var_t(*n->fq());
  for (const auto& x : m.elements()) {
    CHECK(m.contains(n->mul(t, x)));
    for (const auto& y : m.elements()) CHECK(m.contains(n->add(x, y)));
  }
  // Oracle: saturate {0} under x -> x + g and x -> t x.
  std::set<std::uint64_t> brute{0};
  bool grown = true;
  while (grown) {
    grown = false;
    std::vector<std::uint64_t> cur(brute.begin(), brute.end());
    for (auto a : cur)
      for (const auto& g : std::vector<TorsionModule::Elem>{{1, 2}}) {
        for (const auto& y : {n->add(n->element(a), g), n->mul(t, n->element(a))})
          grown |= brute.insert(n->index(y)).second;
      }
  }
  CHECK(m.indices() == std::vector<std::uint64_t>(brute.begin(), brute.end()));
}

TEST_CASE("automorphism invertibility matches bijectivity") {
  struct Case {
    std::uint32_t q;
    const char* p;
    std::vector<int> exps;
  };
  for (const auto& c : std::vector<Case>{{2, "t", {1, 1}}, {2, "t", {1, 2}}, {2, "t", {2, 1}}, {3, "t", {1, 1}},
                                         {2, "t", {2, 2}}}) {
    // The shape may be unsorted; only its prime is taken from the ambient.
    std::vector<int> sorted = c.exps;
    std::sort(sorted.begin(), sorted.end());
    const auto amb = module(c.q, c.p, sorted);
    PrimaryShape s(amb->components()[0].prime, c.exps);
    std::uint64_t valid = 0, inv = 0;
    for (std::uint64_t code = 0; code < s.code_space(); ++code) {
      const Matrix g = s.unpack(code);
      CHECK(s.pack(g) == code);
      if (!entries_valid(s, g)) continue;
      ++valid;
      // bijectivity over explicit tuples with the shape's own ordering
      std::set<std::vector<ResidueRing::Elem>> image;
      std::vector<ResidueRing::Elem> x(s.rank(), 0);
      std::uint64_t total = 1;
      for (int i = 0; i < s.rank(); ++i) total *= s.ring(i).size();
      for (std::uint64_t xi = 0; xi < total; ++xi) {
        std::uint64_t v = xi;
        for (int i = 0; i < s.rank(); ++i) {
          x[i] = static_cast<ResidueRing::Elem>(v % s.ring(i).size());
          v /= s.ring(i).size();
        }
        image.insert(apply(s, x, g));
      }
      const bool bij = image.size() == total;
      CHECK(bij == is_invertible(s, g));
      if (bij) {
        ++inv;
        const Matrix gi = inverse(s, g);
        CHECK(multiply(s, g, gi) == identity_matrix(s));
        CHECK(multiply(s, gi, g) == identity_matrix(s));
      }
    }
    CHECK(valid > inv);
    if (c.exps == std::vector<int>{1, 1}) {
      const std::uint64_t q = c.q;
      CHECK(inv == (q * q - 1) * (q * q - q));
    }
  }
}

TEST_CASE("matrix product is composition") {
  const auto n = module(2, "t", {1, 2});
  const auto shape = primary_shape(*n);
  std::vector<Matrix> mats;
  for (std::uint64_t code = 0; code < shape->code_space(); ++code) {
    const Matrix g = shape->unpack(code);
    if (entries_valid(*shape, g) && is_invertible(*shape, g)) mats.push_back(g);
  }
  CHECK(!mats.empty());
  const auto elems = all_elements(*n);
  for (std::size_t a = 0; a < mats.size(); a += 3)
    for (std::size_t b = 0; b < mats.size(); b += 5) {
      const Matrix gh = multiply(*shape, mats[a], mats[b]);
      for (const auto& x : elems)
        CHECK(apply(*shape, apply(*shape, x, mats[a]), mats[b]) == apply(*shape, x, gh));
    }
}

TEST_CASE("act") {
  SUBCASE("identity and swap") {
    const auto n = module(2, "t", {1, 1});
    const auto shape = primary_shape(*n);
    const auto m = Submodule::span(n, {n->basis(0)});
    const ModuleAutomorphism id(shape, identity_matrix(*shape));
    CHECK(act(m, id) == m);
    const ModuleAutomorphism swap(shape, Matrix{0, 1, 1, 0});
    CHECK(act(m, swap) == Submodule::span(n, {n->basis(1)}));
  }
  SUBCASE("group action laws and characteristic socle") {
    const auto n = module(2, "t", {1, 2});
    const auto shape = primary_shape(*n);
    std::vector<ModuleAutomorphism> auts;
    for (std::uint64_t code = 0; code < shape->code_space(); ++code) {
      const Matrix g = shape->unpack(code);
      if (entries_valid(*shape, g) && is_invertible(*shape, g)) auts.emplace_back(shape, g);
    }
    const auto soc = socle(n, n->components()[0].prime.p).sub;
    std::vector<Submodule> subs{soc, Submodule::span(n, {{1, 1}}), Submodule::span(n, {{0, 2}}),
                                kernel_of(Poly{}, n)};
    for (const auto& m : subs)
      for (std::size_t a = 0; a < auts.size(); a += 2) {
        const auto mg = act(m, auts[a]);
        CHECK(mg.size() == m.size());
        for (std::size_t b = 0; b < auts.size(); b += 3) CHECK(act(mg, auts[b]) == act(m, auts[a] * auts[b]));
      }
    for (const auto& g : auts) CHECK(act(soc, g) == soc);
  }
  SUBCASE("non-invertible rejected") {
    const auto n = module(2, "t", {1, 1});
    try {
      ModuleAutomorphism(primary_shape(*n), Matrix{1, 1, 1, 1});
      FAIL("expected NotInvertible");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotInvertible);
    }
  }
}
