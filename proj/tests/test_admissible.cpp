#include <functional>
#include <set>

#include "doctest.h"
#include "drinlev/admissible/admissible.hpp"

using namespace drinlev;
using namespace drinlev::admissible;
using ff::field;
using ff::parse_poly;

namespace {

ff::PrimeInfo prime(std::uint32_t q, const char* p) {
  const auto f = field(q);
  return ff::prime_data(f, parse_poly(*f, p));
}

// Oracle membership: (g_ij - delta_ij) divisible by p^{m_ij} as polynomials,
// g_ij in wp^{n_ij}, and x -> x g bijective on explicit tuples.
bool oracle_member(const PrimaryShape& s, const IntMatrix& m, const Matrix& g) {
  const int r = s.rank();
  const auto& f = *s.prime().fq;
  auto divisible = [&](Poly a, int k) {
    Poly pk{1};
    for (int i = 0; i < k; ++i) pk = upoly::mul(f, pk, s.prime().p);
    return upoly::rem(f, a, pk).empty();
  };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Poly a = s.ring(j).to_poly(g[i * r + j]);
      if (!divisible(a, s.hom_exponent(i, j))) return false;
      if (i == j) a = upoly::sub(f, a, Poly{1});
      if (!divisible(a, m[i][j])) return false;
    }
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i) total *= s.ring(i).size();
  std::set<std::vector<ResidueRing::Elem>> image;
  std::vector<ResidueRing::Elem> x(r);
  for (std::uint64_t xi = 0; xi < total; ++xi) {
    std::uint64_t v = xi;
    for (int i = 0; i < r; ++i) {
      x[i] = static_cast<ResidueRing::Elem>(v % s.ring(i).size());
      v /= s.ring(i).size();
    }
    image.insert(tormod::apply(s, x, g));
  }
  return image.size() == total;
}

std::vector<std::uint64_t> oracle_enumerate(const PrimaryShape& s, const IntMatrix& m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 0; c < s.code_space(); ++c)
    if (oracle_member(s, m, s.unpack(c))) out.push_back(c);
  return out;
}

// Oracle closure: every pairwise product stays in the set.
bool oracle_closed(const PrimaryShape& s, const std::vector<std::uint64_t>& set) {
  std::set<std::uint64_t> lookup(set.begin(), set.end());
  for (auto a : set)
    for (auto b : set)
      if (!lookup.count(s.pack(tormod::multiply(s, s.unpack(a), s.unpack(b))))) return false;
  return true;
}

// All exponent matrices within the bounds of a shape.
void for_each_datum(const PrimaryShape& s, const std::function<void(const IntMatrix&)>& fn) {
  const int r = s.rank();
  IntMatrix m(r, std::vector<int>(r));
  std::function<void(int)> rec = [&](int k) {
    if (k == r * r) {
      fn(m);
      return;
    }
    const int i = k / r, j = k % r;
    for (int v = s.hom_exponent(i, j); v <= s.exponent(j); ++v) {
      m[i][j] = v;
      rec(k + 1);
    }
  };
  rec(0);
}

template <class F>
Errc error_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return Errc::InvalidInput;
}

std::uint64_t gl2(std::uint64_t q) { return (q * q - 1) * (q * q - q); }

}  // namespace

TEST_CASE("build examples") {
  SUBCASE("full GL_2 of the residue field") {
    for (auto [q, p] : std::vector<std::pair<std::uint32_t, const char*>>{{2, "t"}, {3, "t"}, {2, "t^2+t+1"}}) {
      const auto h = CongruenceDatum::build(prime(q, p), {1, 1}, {{0, 0}, {0, 0}}, 2);
      const std::uint64_t qw = prime(q, p).q_wp;
      CHECK(enumerate(h).size() == gl2(qw));
      CHECK(enumerate_codes(h.shape(), h.m()) == oracle_enumerate(h.shape(), h.m()));
    }
  }
  SUBCASE("Borel") {
    const auto h = CongruenceDatum::build(prime(2, "t"), {1, 1}, {{0, 0}, {1, 0}}, 2);
    CHECK(enumerate(h).size() == 2);
    CHECK(h.closure() == Closure::Triangle);
  }
  SUBCASE("shape (2,1)") {
    const auto h = CongruenceDatum::build(prime(2, "t"), {2, 1}, {{0, 0}, {1, 1}}, 2);
    CHECK(enumerate_codes(h.shape(), h.m()) == oracle_enumerate(h.shape(), h.m()));
    // n_{2,1} = 1 is the least admissible exponent below the diagonal
    CHECK(error_of([] { CongruenceDatum::build(prime(2, "t"), {2, 1}, {{0, 0}, {0, 1}}, 2); }) ==
          Errc::BoundViolation);
    // m_{1,2} <= n_2 = 1
    CHECK(error_of([] { CongruenceDatum::build(prime(2, "t"), {2, 1}, {{0, 2}, {1, 1}}, 2); }) ==
          Errc::BoundViolation);
  }
  SUBCASE("input errors") {
    CHECK(error_of([] { CongruenceDatum::build(prime(2, "t"), {1, 1}, {{0, 0}, {0, 0}}, 1); }) ==
          Errc::InvalidInput);
    CHECK(error_of([] { CongruenceDatum::build(prime(2, "t"), {1, 1}, {{0, 0}}, 2); }) == Errc::ShapeMismatch);
  }
}

TEST_CASE("contains") {
  const auto g1 = gamma1(2, prime(2, "t"), 1);
  CHECK(g1.m() == IntMatrix{{0, 0}, {1, 1}});
  CHECK(g1.contains(Matrix{1, 1, 0, 1}));
  CHECK_FALSE(g1.contains(Matrix{1, 0, 1, 1}));
  CHECK(g1.contains(tormod::identity_matrix(g1.shape())));
  const auto full = CongruenceDatum::build(prime(2, "t"), {1, 1}, {{0, 0}, {0, 0}}, 2);
  CHECK_FALSE(full.contains(Matrix{1, 1, 1, 1}));
  const auto shape3 = std::make_shared<const PrimaryShape>(prime(2, "t"), std::vector<int>{1, 1, 1});
  const tormod::ModuleAutomorphism id3(shape3, tormod::identity_matrix(*shape3));
  CHECK(error_of([&] { contains(g1, id3); }) == Errc::ShapeMismatch);
}

TEST_CASE("enumerate examples") {
  const auto g1 = gamma1(2, prime(2, "t"), 1);
  CHECK(enumerate(g1) == std::vector<Matrix>{{1, 0, 0, 1}, {1, 1, 0, 1}});
  const auto trivial = CongruenceDatum::build(prime(3, "t"), {2, 2}, {{2, 2}, {2, 2}}, 2);
  CHECK(enumerate(trivial) == std::vector<Matrix>{tormod::identity_matrix(trivial.shape())});
  CHECK(enumerate(gamma0(2, prime(3, "t"), 1)).size() == 12);
  CHECK(error_of([] { enumerate(CongruenceDatum::build(prime(2, "t"), {2, 2}, {{0, 0}, {0, 0}}, 2), 100); }) ==
        Errc::CapacityExceeded);
}

TEST_CASE("closure certificate agrees with brute-force closure") {
  struct Case {
    std::uint32_t q;
    const char* p;
    std::vector<int> shape;
  };
  int triangle_fail_closed = 0, triangle_fail_open = 0;
  for (const auto& c : std::vector<Case>{{2, "t", {1, 1}}, {2, "t", {2, 1}}, {2, "t", {1, 2}}, {2, "t", {2, 2}},
                                         {3, "t", {1, 1}}, {2, "t", {1, 1, 1}}, {2, "t", {1, 2, 1}}}) {
    const PrimaryShape s(prime(c.q, c.p), c.shape);
    for_each_datum(s, [&](const IntMatrix& m) {
      const auto set = oracle_enumerate(s, m);
      const bool closed = oracle_closed(s, set);
      CHECK(is_closed(s, set) == closed);
      if (triangle_check(m)) {
        CHECK(closed);
      } else {
        (closed ? triangle_fail_closed : triangle_fail_open)++;
      }
      bool accepted = true;
      try {
        CongruenceDatum::build(s.prime(), c.shape, m, static_cast<int>(c.shape.size()));
      } catch (const Error& e) {
        CHECK(e.code() == Errc::NotClosedUnderProduct);
        accepted = false;
      }
      CHECK(accepted == closed);
    });
  }
  MESSAGE("triangle failures: closed " << triangle_fail_closed << ", not closed " << triangle_fail_open);
}

TEST_CASE("triangle_check examples") {
  CHECK(triangle_check(parabolic({2, 1}, prime(2, "t"), 2)));
  CHECK(triangle_check(parabolic({1, 1, 1}, prime(3, "t"), 1)));
  CHECK(triangle_check(IntMatrix{{0, 1}, {1, 0}}));
  CHECK_FALSE(triangle_check(IntMatrix{{2, 1}, {0, 2}}));
}

TEST_CASE("analyze examples") {
  const auto wp = prime(2, "t");
  SUBCASE("Gamma_0") {
    const auto r = analyze(gamma0(2, wp, 1));
    CHECK(r.S == std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}});
    CHECK(r.classes == std::vector<std::vector<int>>{{1}, {2}});
    CHECK(r.u() == 2);
    CHECK(r.R == std::vector<int>{1, 2});
    CHECK(r.levi_image_order == 1);  // kappa^x x kappa^x with kappa = F_2
    CHECK(r.star2);
    CHECK(r.star3);
    CHECK(r.k_matches_description);
  }
  SUBCASE("Gamma_0 over F_3") {
    const auto r = analyze(gamma0(2, prime(3, "t"), 1));
    CHECK(r.levi_image_order == 4);
    CHECK(r.star3);
  }
  SUBCASE("Gamma_1") {
    const auto r = analyze(gamma1(2, prime(3, "t"), 1));
    CHECK(r.S == std::vector<std::pair<int, int>>{{1, 1}, {1, 2}});
    CHECK(r.R == std::vector<int>{1});
    CHECK(r.levi_image_order == 2);
    CHECK(r.star2);
    CHECK(r.star3);
  }
  SUBCASE("full group") {
    const auto r = analyze(CongruenceDatum::build(wp, {1, 1}, {{0, 0}, {0, 0}}, 2));
    CHECK(r.S.size() == 4);
    CHECK(r.classes.size() == 1);
    CHECK(r.u() == 1);
    CHECK(r.R == std::vector<int>{1});
    CHECK(r.levi_image_order == 6);
    CHECK(r.filtration_dims == std::vector<int>{0, 2});
  }
  SUBCASE("lower triangular orders blocks by S") {
    // m_12 = 1 forces B_12 = 0, so S = {(1,1),(2,1),(2,2)} and 2 precedes 1.
    const auto r = analyze(CongruenceDatum::build(wp, {1, 1}, {{0, 1}, {0, 0}}, 2));
    CHECK(r.blocks == std::vector<std::vector<int>>{{2}, {1}});
    CHECK(r.permutation == std::vector<int>{2, 1});
    CHECK(r.star2);
    CHECK(r.star3);
  }
}

TEST_CASE("analyze properties over all data of small shapes") {
  for (const auto& shape : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {1, 1, 1}, {1, 2, 1}}) {
    const PrimaryShape s(prime(2, "t"), shape);
    for_each_datum(s, [&](const IntMatrix& m) {
      if (!closed_by_enumeration(s, m)) return;
      const auto h = CongruenceDatum::build(s.prime(), shape, m, static_cast<int>(shape.size()));
      const auto r = analyze(h);
      CHECK(r.s_transitive);
      CHECK(r.equivalence);
      CHECK(r.singleton_property);
      CHECK(r.k_matches_description);
      CHECK(r.star2);
      CHECK(r.star3);
      int sum = 0;
      for (int x : r.block_sizes) sum += x;
      CHECK(sum == s.rank());
      for (std::size_t k = 1; k < r.filtration_dims.size(); ++k)
        CHECK(r.filtration_dims[k] > r.filtration_dims[k - 1]);
    });
  }
}

TEST_CASE("named examples") {
  const auto wp = prime(2, "t");
  CHECK(gamma0(2, wp, 1).m() == IntMatrix{{0, 0}, {1, 0}});
  CHECK(gamma1(2, wp, 1).m() == IntMatrix{{0, 0}, {1, 1}});
  CHECK(enumerate(parabolic({1, 1}, wp, 1)) == enumerate(gamma0(2, wp, 1)));
  CHECK(error_of([&] { parabolic({2, 0}, wp, 1); }) == Errc::BadPartition);
  CHECK(error_of([&] { parabolic({}, wp, 1); }) == Errc::BadPartition);
  for (auto [q, p, n] : std::vector<std::tuple<std::uint32_t, const char*, int>>{
           {2, "t", 1}, {2, "t", 2}, {3, "t", 1}, {2, "t^2+t+1", 1}, {3, "t+1", 2}}) {
    const auto wpp = prime(q, p);
    const auto g0 = gamma0(2, wpp, n);
    const auto g1 = gamma1(2, wpp, n);
    const auto e0 = enumerate(g0);
    const auto e1 = enumerate(g1);
    // Gamma_1 inside Gamma_0, normal, of index q^n - q^{n-1}
    for (const auto& g : e1) CHECK(g0.contains(g));
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= wpp.q_wp;
    CHECK(e0.size() == e1.size() * (qn - qn / wpp.q_wp));
    const auto& s = g0.shape();
    std::vector<std::uint64_t> c0, c1;
    for (const auto& g : e0) c0.push_back(s.pack(g));
    for (const auto& g : e1) c1.push_back(s.pack(g));
    for (const auto& g : e0) {
      std::vector<std::uint64_t> left, right;
      for (const auto& x : e1) {
        left.push_back(s.pack(tormod::multiply(s, g, x)));
        right.push_back(s.pack(tormod::multiply(s, x, g)));
      }
      std::sort(left.begin(), left.end());
      std::sort(right.begin(), right.end());
      CHECK(left == right);
    }
  }
}

TEST_CASE("j_chain examples") {
  const auto wp = prime(2, "t");
  SUBCASE("Gamma_0, n = 1") {
    const auto jc = j_chain(gamma0(2, wp, 1));
    CHECK(jc.m_prime == IntMatrix{{1, 0}, {1, 1}});
    CHECK(jc.levels.front().enumerated == 2);
    CHECK(jc.levels.back().k == 1);
    CHECK(jc.levels.back().enumerated == 1);
    CHECK(jc.j_is_levi_kernel);
    CHECK(jc.q_ok);
  }
  SUBCASE("full group") {
    const auto jc = j_chain(CongruenceDatum::build(wp, {1, 1}, {{0, 0}, {0, 0}}, 2));
    CHECK(jc.m_prime == IntMatrix{{1, 1}, {1, 1}});
    CHECK(jc.levels.front().enumerated == 1);
  }
  SUBCASE("Gamma_1, n = 2") {
    const auto jc = j_chain(gamma1(2, wp, 2));
    for (const auto& lv : jc.levels) CHECK(lv.enumerated == lv.predicted);
    CHECK(jc.sizes_match);
    CHECK(jc.chain_nested);
    CHECK(jc.k_normal);
    CHECK(jc.kl_normal);
    CHECK(jc.q_ok);
    CHECK(jc.j_is_levi_kernel);
  }
  SUBCASE("non-standard shape") {
    const auto h = CongruenceDatum::build(wp, {2, 1}, {{0, 0}, {1, 1}}, 2);
    CHECK(error_of([&] { j_chain(h); }) == Errc::NotStandardShape);
    CHECK(error_of([&] { block_row_constancy(h); }) == Errc::NotStandardShape);
  }
}

TEST_CASE("j_chain over all standard data") {
  for (auto [q, n, d] : std::vector<std::tuple<std::uint32_t, int, int>>{{2, 1, 2}, {2, 2, 2}, {3, 1, 2}, {2, 1, 3}}) {
    const PrimaryShape s(prime(q, "t"), std::vector<int>(d, n));
    for_each_datum(s, [&](const IntMatrix& m) {
      if (!closed_by_enumeration(s, m)) return;
      const auto h = CongruenceDatum::build(s.prime(), s.exponents(), m, d);
      const auto jc = j_chain(h);
      CHECK(jc.j_is_levi_kernel);
      CHECK(jc.sizes_match);
      CHECK(jc.chain_nested);
      CHECK(jc.k_normal);
      CHECK(jc.kl_normal);
      CHECK(jc.q_ok);
      CHECK(block_row_constancy(h) == true);
    });
  }
}

TEST_CASE("block_row_constancy examples") {
  const auto wp = prime(2, "t");
  CHECK(block_row_constancy(CongruenceDatum::build(wp, {1, 1, 1}, IntMatrix(3, std::vector<int>(3, 0)), 3)));
  CHECK(block_row_constancy(gamma1(2, wp, 1)));
  const auto p21 = parabolic({2, 1}, wp, 1);
  const auto mp = m_prime(p21);
  CHECK(mp[0] == mp[1]);
  CHECK(block_row_constancy(p21));
}

TEST_CASE("tilde_lift") {
  const auto wp = prime(2, "t");
  SUBCASE("N equals its lift") {
    const auto h = gamma0(2, wp, 2);
    CHECK(tilde_lift(h, 2, 2).m() == h.m());
  }
  SUBCASE("A/wp inside (A/wp)^2 with trivial H") {
    const auto h = CongruenceDatum::build(wp, {1}, {{1}}, 2);
    const auto ht = tilde_lift(h, 1, 2);
    CHECK(enumerate(ht).size() == 2);
    CHECK(stabilizer_codes(h.shape(), h.m(), 1, 2).size() == 2);
  }
  SUBCASE("A/wp + A/wp^2 with full Aut") {
    const auto h = CongruenceDatum::build(wp, {1, 2}, {{0, 1}, {0, 0}}, 2);
    const auto ht = tilde_lift(h, 2, 2);
    CHECK(enumerate_codes(ht.shape(), ht.m()) == stabilizer_codes(h.shape(), h.m(), 2, 2));
  }
  SUBCASE("set equality and admissibility transfer on all data") {
    struct Case {
      std::vector<int> shape;
      int n, d;
    };
    for (const auto& c : std::vector<Case>{{{1}, 1, 2}, {{1}, 2, 2}, {{2}, 2, 2}, {{1, 1}, 1, 2}, {{1, 1}, 2, 2},
                                           {{1, 2}, 2, 2}, {{2, 1}, 2, 2}, {{1, 1}, 1, 3}}) {
      const PrimaryShape s(wp, c.shape);
      const PrimaryShape big(wp, std::vector<int>(c.d, c.n));
      for_each_datum(s, [&](const IntMatrix& m) {
        const auto e = tilde_exponents(s, m, c.n, c.d);
        CHECK(within_bounds(big, e));
        const auto lifted = enumerate_codes(big, e);
        CHECK(lifted == stabilizer_codes(s, m, c.n, c.d));
        CHECK(closed_by_enumeration(s, m) == is_closed(big, lifted));
      });
    }
  }
}
