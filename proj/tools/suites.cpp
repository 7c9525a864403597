#include "suites.hpp"

#include <chrono>
#include <functional>
#include <set>

#include "drinlev/admissible/admissible.hpp"
#include "drinlev/dickson/dickson.hpp"
#include "drinlev/drinfeld/drinfeld.hpp"
#include "drinlev/formal/formal.hpp"

namespace drinlev::suites {

using nlohmann::json;
using ff::Poly;

namespace {

Poly poly(std::uint32_t q, const char* s) { return ff::parse_poly(*ff::field(q), s); }

Poly power(const ff::SmallField& f, const Poly& p, int j) {
  Poly r = upoly::constant(f, f.one());
  for (int i = 0; i < j; ++i) r = upoly::mul(f, r, p);
  return r;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

tormod::ModulePtr primary_module(const ff::PrimeInfo& prime, std::vector<int> exps) {
  return std::make_shared<const tormod::TorsionModule>(
      prime.fq, std::vector<tormod::PrimaryComponent>{{prime, std::move(exps)}});
}

// Least M <= max_ext over which phi[a] has exactly `want` points; 0 if none.
// Sets `overshoot` when some M yields more points than predicted.
int splitting_degree(const drinfeld::DrinfeldModule& phi, const Poly& a, std::uint64_t want, int max_ext,
                     std::uint64_t cap, bool* overshoot = nullptr) {
  for (int m = 1; m <= max_ext; ++m) {
    const auto n = drinfeld::torsion_points(phi, a, m, cap).points.size();
    if (n > want && overshoot) *overshoot = true;
    if (n == want) return m;
  }
  return 0;
}

// Calls fn(m) for every exponent matrix within the bounds of s.
void for_each_datum(const tormod::PrimaryShape& s, const std::function<void(const admissible::IntMatrix&)>& fn) {
  const int r = s.rank();
  admissible::IntMatrix m(r, std::vector<int>(r));
  std::function<void(int)> rec = [&](int k) {
    if (k == r * r) {
      fn(m);
      return;
    }
    const int i = k / r, j = k % r;
    for (int e = s.hom_exponent(i, j); e <= s.exponent(j); ++e) {
      m[i][j] = e;
      rec(k + 1);
    }
  };
  rec(0);
}

// ------------------------------------------------------------------ suites

bool dickson_suite(json& detail, std::uint64_t cap) {
  bool ok = true;
  for (auto [q, d] : std::vector<std::pair<std::uint32_t, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
    const auto rep = dickson::verify_dickson(q, d, 12, cap);
    ok = ok && rep.equal && rep.generators_invariant;
    detail["cases"].push_back({{"q", q},
                               {"d", d},
                               {"degrees", rep.degrees},
                               {"invariant_dims", rep.invariant_dims},
                               {"generator_dims", rep.generator_dims},
                               {"equal", rep.equal},
                               {"generators_invariant", rep.generators_invariant}});
  }
  return ok;
}

// Criteria on admissible data: closure, (*2), (*3), rejection, block rows.
struct AdmissibleTally {
  std::uint64_t data = 0, triangle = 0, closed = 0, rejected = 0, standard = 0;
  std::uint64_t triangle_not_closed = 0, star_failures = 0, not_rejected = 0, row_failures = 0;
};

AdmissibleTally admissible_sweep(std::uint64_t cap) {
  AdmissibleTally t;
  for (std::uint32_t q : {2u, 3u})
    for (const char* p : {"t", "t + 1", "t^2 + t + 1"}) {
      const auto fq = ff::field(q);
      const auto pp = ff::parse_poly(*fq, p);
      if (!ff::is_irreducible(*fq, pp)) continue;
      const auto prime = ff::prime_data(fq, pp);
      for (const auto& shape : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {2, 2}}) {
        const tormod::PrimaryShape s(prime, shape);
        const int d = static_cast<int>(shape.size());
        for_each_datum(s, [&](const admissible::IntMatrix& m) {
          ++t.data;
          const bool tri = admissible::triangle_check(m);
          const bool closed = admissible::closed_by_enumeration(s, m, cap);
          if (tri) ++t.triangle;
          if (tri && !closed) ++t.triangle_not_closed;
          if (!closed) {
            try {
              admissible::CongruenceDatum::build(prime, shape, m, d, cap);
              ++t.not_rejected;
            } catch (const Error& e) {
              if (e.code() == Errc::NotClosedUnderProduct)
                ++t.rejected;
              else
                ++t.not_rejected;
            }
            return;
          }
          ++t.closed;
          const auto h = admissible::CongruenceDatum::build(prime, shape, m, d, cap);
          const auto r = admissible::analyze(h, cap);
          if (!r.star2 || !r.star3) ++t.star_failures;
          if (h.is_standard()) {
            ++t.standard;
            if (!admissible::block_row_constancy(h)) ++t.row_failures;
          }
        });
      }
    }
  return t;
}

bool admissible_suite(json& detail, std::uint64_t cap) {
  const auto t = admissible_sweep(cap);
  detail = {{"data", t.data},
            {"triangle_passing", t.triangle},
            {"closed", t.closed},
            {"rejected", t.rejected},
            {"triangle_not_closed", t.triangle_not_closed},
            {"star_failures", t.star_failures},
            {"not_rejected", t.not_rejected},
            {"skipped_primes", json::array({"t^2 + t + 1 over F_3 (reducible)"})}};
  return t.triangle_not_closed == 0 && t.star_failures == 0 && t.not_rejected == 0 &&
         t.closed + t.rejected == t.data;
}

bool jchain_suite(json& detail, std::uint64_t cap) {
  const auto prime = ff::prime_data(ff::field(2), poly(2, "t"));
  bool ok = true;
  for (int n = 1; n <= 2; ++n) {
    const std::vector<std::pair<std::string, admissible::CongruenceDatum>> data{
        {"Gamma0", admissible::gamma0(2, prime, n)},
        {"Gamma1", admissible::gamma1(2, prime, n)},
        {"P(1,1)", admissible::parabolic({1, 1}, prime, n)},
        {"P(2,1)", admissible::parabolic({2, 1}, prime, n)}};
    for (const auto& [name, h] : data) {
      const auto jc = admissible::j_chain(h, cap);
      bool q_index = true;
      for (const auto& ql : jc.q)
        if (ql.representatives.size() != ql.index) q_index = false;
      const bool good = jc.sizes_match && jc.k_normal && jc.kl_normal && jc.q_ok && q_index && jc.chain_nested &&
                        jc.j_is_levi_kernel;
      ok = ok && good;
      detail["cases"].push_back({{"datum", name},
                                 {"n", n},
                                 {"m_prime", jc.m_prime},
                                 {"levels", jc.levels.size()},
                                 {"sizes_match", jc.sizes_match},
                                 {"kl_normal", jc.kl_normal},
                                 {"q_index", q_index},
                                 {"pass", good}});
    }
  }
  return ok;
}

bool block_rows_suite(json& detail, std::uint64_t cap) {
  const auto t = admissible_sweep(cap);
  detail = {{"standard_data", t.standard}, {"row_failures", t.row_failures}};
  return t.row_failures == 0 && t.standard > 0;
}

// Torsion counts with known heights: q_wp^{j(d - h)}, h = 0 at good primes.
bool drinfeld_suite(json& detail, std::uint64_t cap) {
  struct Case {
    std::string name;
    drinfeld::DrinfeldModule phi;
    int height;                   // expected height at the characteristic
    std::vector<const char*> good;  // good primes to test
  };
  std::vector<Case> cases;
  for (std::uint32_t q : {2u, 3u})
    for (int d = 1; d <= 4; ++d) {
      std::vector<std::uint64_t> c(d + 1, 0);
      c[d] = 1;
      cases.push_back({"tau^" + std::to_string(d) + " over F_" + std::to_string(q), drinfeld::make_drinfeld(q, 1, c), d,
                       {"t + 1"}});
    }
  cases.push_back({"carlitz w + tau over F_4", drinfeld::make_drinfeld(2, 2, {2, 1}), 1, {"t"}});
  cases.push_back({"carlitz 1 + tau over F_3", drinfeld::make_drinfeld(3, 1, {1, 1}), 1, {"t"}});
  cases.push_back({"carlitz x + tau over F_9", drinfeld::make_drinfeld(3, 2, {3, 1}), 1, {"t"}});
  cases.push_back({"ordinary 1 + tau + tau^2 over F_2", drinfeld::make_drinfeld(2, 1, {1, 1, 1}), 1, {"t"}});

  bool ok = true;
  for (const auto& c : cases) {
    const int d = c.phi.rank();
    const auto& fq = *c.phi.fq();
    const auto h = drinfeld::height(c.phi);
    const bool height_ok = h == c.height && drinfeld::is_supersingular(c.phi) == (c.height == d);
    json rec{{"module", c.name}, {"rank", d}, {"height", h}, {"height_ok", height_ok}};
    ok = ok && height_ok;
    std::vector<std::pair<Poly, int>> primes{{c.phi.characteristic(), c.height}};
    for (const char* g : c.good) primes.push_back({ff::parse_poly(fq, g), 0});
    for (const auto& [p, hp] : primes) {
      const auto q_wp = ipow(fq.size(), upoly::degree<ff::SmallField>(p));
      for (int j = 1; j <= 2; ++j) {
        const auto want = ipow(q_wp, j * (d - hp));
        bool overshoot = false;
        const int m = splitting_degree(c.phi, power(fq, p, j), want, 24, cap, &overshoot);
        const bool good = m > 0 && !overshoot;
        ok = ok && good;
        rec["torsion"].push_back({{"prime", ff::format_poly(p)},
                                  {"j", j},
                                  {"expected", want},
                                  {"ext_deg", m},
                                  {"pass", good}});
      }
    }
    detail["cases"].push_back(rec);
  }
  return ok;
}

bool level_suite(json& detail, std::uint64_t cap) {
  bool ok = true;
  // Worked pairs: q = 2, K = F_4, phi_t = w + tau, N = A/(t).
  {
    const auto phi = drinfeld::make_drinfeld(2, 2, {2, 1});
    const auto prime = ff::prime_data(ff::field(2), poly(2, "t"));
    const auto n = primary_module(prime, {1});
    const auto w = phi.field().gen();
    const bool valid = drinfeld::check_level_structure(phi, {n, phi.field_ptr(), {w}}, cap);
    const bool zero = drinfeld::check_level_structure(phi, {n, phi.field_ptr(), {phi.field().zero()}}, cap);
    const auto n0 = std::make_shared<const tormod::TorsionModule>(ff::field(2), std::vector<tormod::PrimaryComponent>{});
    const bool empty = drinfeld::check_level_structure(phi, {n0, phi.field_ptr(), {}}, cap);
    ok = valid && !zero && empty;
    detail["worked"] = {{"psi_w", valid}, {"psi_0", zero}, {"N_0", empty}};
  }
  // Full level at good primes: valid psi are exactly the isomorphisms.
  struct Case {
    std::uint32_t q;
    int m;
    std::vector<std::uint64_t> coeffs;
    const char* p;
  };
  const std::vector<Case> cases{{2, 1, {1, 1}, "t"},       {2, 1, {1, 1, 1}, "t"},          {3, 1, {1, 1}, "t"},
                                {3, 1, {1, 1, 1}, "t"},    {4, 1, {1, 1}, "t"},             {4, 1, {1, 1, 1}, "t"},
                                {2, 1, {1, 1}, "t^2 + t + 1"}, {2, 1, {1, 1, 1}, "t^2 + t + 1"}};
  for (const auto& c : cases) {
    const auto phi = drinfeld::make_drinfeld(c.q, c.m, c.coeffs);
    const int d = phi.rank();
    const auto prime = ff::prime_data(phi.fq(), poly(c.q, c.p));
    const auto n = primary_module(prime, std::vector<int>(d, 1));
    const auto size = *n->size();
    const int ext = splitting_degree(phi, prime.p, size, 48, cap);
    json rec{{"q", c.q}, {"phi_t", c.coeffs}, {"prime", c.p}, {"ext_deg", ext}};
    if (ext == 0) {
      ok = false;
      rec["pass"] = false;
      detail["full_level"].push_back(rec);
      continue;
    }
    const auto e = drinfeld::extend(phi, ext);
    const auto pts = drinfeld::torsion_points(phi, prime.p, ext, cap).points;
    std::uint64_t total = ipow(pts.size(), d), valid = 0, isos = 0, mismatches = 0;
    drinfeld::LevelStructureMap psi{n, e.field, std::vector<drinfeld::KElem>(d)};
    for (std::uint64_t code = 0; code < total; ++code) {
      auto t = code;
      for (int j = d; j-- > 0;) {
        psi.generator_images[j] = pts[t % pts.size()];
        t /= pts.size();
      }
      const bool v = drinfeld::check_level_structure(e.phi, psi, cap);
      const auto vals = drinfeld::evaluate_level_map(e.phi, psi, cap);
      std::set<std::uint64_t> image;
      for (const auto& x : vals) image.insert(e.field->code(x));
      const bool iso = image.size() == size;
      valid += v;
      isos += iso;
      if (v != iso) ++mismatches;
    }
    const bool good = mismatches == 0 && valid > 0;
    ok = ok && good;
    rec.update({{"candidates", total}, {"valid", valid}, {"isomorphisms", isos}, {"pass", good}});
    detail["full_level"].push_back(rec);
  }
  return ok;
}

bool hecke_suite(json& detail, std::uint64_t cap) {
  bool ok = true;
  for (std::uint32_t q : {2u, 3u, 4u})
    for (int d = 1; d <= 3; ++d) {
      std::vector<std::uint64_t> coeffs(d + 1, 1);
      const auto phi = drinfeld::make_drinfeld(q, 1, coeffs);
      const auto prime = ff::prime_data(phi.fq(), poly(q, "t"));
      const int ext = splitting_degree(phi, prime.p, ipow(q, d), 48, cap);
      for (int k = 0; k <= d; ++k) {
        const auto deg = drinfeld::hecke_degrees(prime.q_wp, d, k);
        json rec{{"q_wp", prime.q_wp}, {"d", d}, {"k", k}, {"ext_deg", ext}, {"deg_r", deg.deg_r},
                 {"G_k", deg.order_g_k}, {"deg_h", deg.deg_h_r}};
        bool good = ext > 0 && deg.deg_h_r * deg.order_g_k == deg.deg_r;
        if (ext > 0) {
          const auto n = k == 0 ? std::make_shared<const tormod::TorsionModule>(phi.fq(),
                                                                                std::vector<tormod::PrimaryComponent>{})
                                : primary_module(prime, std::vector<int>(k, 1));
          const auto count = drinfeld::count_level_structures(phi, n, ext, cap);
          rec["count"] = count;
          good = good && count == deg.deg_r;
        }
        rec["pass"] = good;
        ok = ok && good;
        detail["cases"].push_back(rec);
      }
    }
  return ok;
}

bool lubin_tate_suite(json& detail, std::uint64_t) {
  bool ok = true;
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, int>>{{2, 1}, {2, 2}, {3, 1}, {2, 3}}) {
    const auto rep = formal::lubin_tate_chain(q, n, 32);
    const bool good = static_cast<std::uint64_t>(rep.ramification) == rep.expected &&
                      rep.expected == ipow(q, n - 1) * (q - 1) && rep.chain_ok && rep.ratios_ok && rep.eisenstein;
    ok = ok && good;
    detail["cases"].push_back({{"q", q},
                               {"n", n},
                               {"ramification", rep.ramification},
                               {"expected", rep.expected},
                               {"theta_orders", rep.theta_orders},
                               {"eisenstein", rep.eisenstein},
                               {"pass", good}});
  }
  return ok;
}

bool km_suite(json& detail, std::uint64_t) {
  bool ok = true;
  auto record = [&](const std::string& name, const dickson::KmReport& rep, std::uint64_t order) {
    const bool good = rep.free_basis_ok && rep.params_ok && rep.group_order == order;
    ok = ok && good;
    detail["cases"].push_back({{"action", name},
                               {"group_order", rep.group_order},
                               {"free_basis_ok", rep.free_basis_ok},
                               {"params_ok", rep.params_ok},
                               {"pass", good}});
  };
  for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
    const ff::SeriesRing r(ff::field(q), 2, 10, {"x", "y"});
    const auto zeta = r.field().primitive();
    record("y -> zeta y over F_" + std::to_string(q), dickson::km_check(r, {dickson::scaling_action(r, zeta)}), q - 1);
  }
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const ff::SeriesRing r(ff::field(p), 2, 10, {"x", "y"});
    record("y -> y + x over F_" + std::to_string(p), dickson::km_check(r, {dickson::translation_action(r, 1)}), p);
  }
  // x -> 2x violates g(x) = x.
  const ff::SeriesRing r(ff::field(3), 2, 10, {"x", "y"});
  bool rejected = false;
  try {
    dickson::km_check(r, {{r.scale(r.var(0), 2), r.var(1)}});
  } catch (const Error& e) {
    rejected = e.code() == Errc::HypothesisViolated;
  }
  detail["violation_rejected"] = rejected;
  return ok && rejected;
}

bool fm_suite(json& detail, std::uint64_t cap) {
  bool ok = true;
  for (const auto& coeffs : {std::vector<std::uint64_t>{1, 1}, std::vector<std::uint64_t>{1, 1, 1}}) {
    const auto phi = drinfeld::make_drinfeld(2, 1, coeffs);
    const int d = phi.rank();
    for (int n = 1; n <= 2; ++n) {
      const auto pn = power(*phi.fq(), poly(2, "t"), n);
      const int ext = splitting_degree(phi, pn, ipow(2, n * d), 48, cap);
      json rec{{"d", d}, {"n", n}, {"ext_deg", ext}};
      bool good = ext > 0;
      if (good) {
        const auto rep = formal::verify_fm_identities(phi, poly(2, "t"), n, ext, 1 << 12, cap);
        good = rep.transport_ok && rep.scalar_ok && rep.kernel_ok && rep.torsion_ok && rep.counterexamples.empty();
        rec.update({{"automorphisms", rep.automorphisms},
                    {"submodules", rep.submodules},
                    {"transport_ok", rep.transport_ok},
                    {"scalar_ok", rep.scalar_ok},
                    {"kernel_ok", rep.kernel_ok},
                    {"torsion_ok", rep.torsion_ok},
                    {"counterexamples", rep.counterexamples}});
      }
      rec["pass"] = good;
      ok = ok && good;
      detail["cases"].push_back(rec);
    }
  }
  return ok;
}

struct SuiteDef {
  const char* name;
  double limit;
  bool (*fn)(json&, std::uint64_t);
};

const SuiteDef kSuites[kSuiteCount] = {
    {"Dickson invariant dimensions", 60, dickson_suite},
    {"admissible closure, (*2), (*3), rejection", 120, admissible_suite},
    {"J-chain sizes, normality, Q indices", 60, jchain_suite},
    {"block row constancy of m'", 0, block_rows_suite},
    {"heights and torsion counts", 60, drinfeld_suite},
    {"level structures", 0, level_suite},
    {"Hecke degrees vs level-structure counts", 120, hecke_suite},
    {"Lubin-Tate ramification", 0, lubin_tate_suite},
    {"KM criterion", 0, km_suite},
    {"f^M identities", 0, fm_suite},
};

}  // namespace

SuiteResult run_suite(int id, std::uint64_t cap) {
  if (id < 1 || id > kSuiteCount) throw Error(Errc::InvalidInput, "suite id must be in 1..10");
  const auto& def = kSuites[id - 1];
  SuiteResult r;
  r.id = id;
  r.name = def.name;
  r.limit_seconds = def.limit;
  r.detail = json::object();
  const auto start = std::chrono::steady_clock::now();
  try {
    r.pass = def.fn(r.detail, cap);
  } catch (const Error& e) {
    r.pass = false;
    r.detail["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) r.pass = false;
  return r;
}

std::vector<SuiteResult> run_all(std::uint64_t cap) {
  std::vector<SuiteResult> out;
  for (int id = 1; id <= kSuiteCount; ++id) out.push_back(run_suite(id, cap));
  return out;
}

json to_json(const SuiteResult& r, bool timings) {
  json j{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"limit_seconds", r.limit_seconds}, {"detail", r.detail}};
  if (timings) j["seconds"] = r.seconds;
  return j;
}

}  // namespace drinlev::suites
