#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "drinlev/admissible/admissible.hpp"
#include "drinlev/dickson/dickson.hpp"
#include "drinlev/drinfeld/drinfeld.hpp"
#include "drinlev/formal/formal.hpp"
#include "suites.hpp"

namespace drinlev::cli {

using nlohmann::json;
using ff::Poly;

namespace {

json read_input(const std::string& path) {
  if (path.empty()) throw Error(Errc::InvalidInput, "--in is required");
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

void reject_unknown(const json& j, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw Error(Errc::InvalidInput, "input must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw Error(Errc::InvalidInput, "unknown field \"" + k + "\"");
}

template <class T>
T get(const json& j, const std::string& key) {
  if (!j.contains(key)) throw Error(Errc::InvalidInput, "missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::InvalidInput, "field \"" + key + "\" has the wrong type");
  }
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

Poly parse(std::uint32_t q, const std::string& s) { return ff::parse_poly(*ff::field(q), s); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::vector<std::uint64_t> parse_codes(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(s, ',')) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "expected a comma-separated list of codes, got \"" + s + "\"");
    }
  }
  return out;
}

// ------------------------------------------------------------- admissible

struct RawDatum {
  ff::PrimeInfo prime;
  std::vector<int> shape;
  admissible::IntMatrix m;
  int d = 0;
};

const std::set<std::string> kDatumKeys{"q", "p", "shape", "m", "d", "named", "n", "partition"};

RawDatum raw_datum(const json& j) {
  reject_unknown(j, kDatumKeys);
  const auto q = get<std::uint32_t>(j, "q");
  const auto prime = ff::prime_data(ff::field(q), parse(q, get<std::string>(j, "p")));
  if (j.contains("named")) {
    const auto name = get<std::string>(j, "named");
    const int n = get<int>(j, "n");
    admissible::CongruenceDatum h = [&] {
      if (name == "gamma0") return admissible::gamma0(get<int>(j, "d"), prime, n);
      if (name == "gamma1") return admissible::gamma1(get<int>(j, "d"), prime, n);
      if (name == "parabolic") return admissible::parabolic(get<std::vector<int>>(j, "partition"), prime, n);
      throw Error(Errc::InvalidInput, "named datum must be gamma0, gamma1 or parabolic");
    }();
    return {prime, h.shape().exponents(), h.m(), h.d()};
  }
  const auto shape = get<std::vector<int>>(j, "shape");
  return {prime, shape, get<admissible::IntMatrix>(j, "m"), get_or<int>(j, "d", static_cast<int>(shape.size()))};
}

admissible::CongruenceDatum build(const RawDatum& r, std::uint64_t cap) {
  return admissible::CongruenceDatum::build(r.prime, r.shape, r.m, r.d, cap);
}

json matrix_json(const tormod::PrimaryShape& s, const tormod::Matrix& g) {
  const int r = s.rank();
  json rows = json::array();
  for (int i = 0; i < r; ++i) {
    json row = json::array();
    for (int j = 0; j < r; ++j) row.push_back(ff::format_poly(s.ring(j).to_poly(g[i * r + j])));
    rows.push_back(row);
  }
  return rows;
}

json analyze_json(const admissible::StructureReport& r) {
  json s = json::array();
  for (auto [i, j] : r.S) s.push_back({i, j});
  return {{"S", s},
          {"classes", r.classes},
          {"blocks", r.blocks},
          {"permutation", r.permutation},
          {"block_sizes", r.block_sizes},
          {"filtration_dims", r.filtration_dims},
          {"R", r.R},
          {"h_order", r.h_order},
          {"k_order", r.k_order},
          {"levi_image_order", r.levi_image_order},
          {"levi_expected_order", r.levi_expected_order},
          {"s_transitive", r.s_transitive},
          {"equivalence", r.equivalence},
          {"singleton_property", r.singleton_property},
          {"k_matches_description", r.k_matches_description},
          {"star2", r.star2},
          {"star3", r.star3}};
}

json jchain_json(const admissible::JChain& jc, bool rows) {
  json levels = json::array(), qs = json::array();
  for (const auto& l : jc.levels)
    levels.push_back({{"k", l.k},
                      {"l", l.l},
                      {"exponents", l.exponents},
                      {"predicted", l.predicted},
                      {"enumerated", l.enumerated},
                      {"normal_in_previous", l.normal_in_previous}});
  for (const auto& q : jc.q)
    qs.push_back({{"k", q.k},
                  {"l", q.l},
                  {"index", q.index},
                  {"representatives", q.representatives.size()},
                  {"subset", q.subset},
                  {"complete", q.complete},
                  {"image_subgroup", q.image_subgroup}});
  return {{"m_prime", jc.m_prime},
          {"levels", levels},
          {"q", qs},
          {"j_is_levi_kernel", jc.j_is_levi_kernel},
          {"chain_nested", jc.chain_nested},
          {"sizes_match", jc.sizes_match},
          {"k_normal", jc.k_normal},
          {"kl_normal", jc.kl_normal},
          {"q_ok", jc.q_ok},
          {"block_row_constancy", rows}};
}

// ------------------------------------------------------------------ series

ff::SmallField::Elem field_code(const ff::SmallField& f, long long c) {
  if (c < 0 || c >= static_cast<long long>(f.size())) throw Error(Errc::InvalidInput, "field code out of range");
  return static_cast<ff::SmallField::Elem>(c);
}

json series_json(const ff::SeriesRing& r, const ff::SeriesRing::Elem& a) {
  return {{"truncation", r.truncation()}, {"terms", r.to_map(a)}};
}

ff::SeriesRing::Elem parse_series(const ff::SeriesRing& r, const json& terms) {
  if (!terms.is_object()) throw Error(Errc::InvalidInput, "a series is a monomial -> coefficient map");
  auto out = r.zero();
  for (const auto& [key, val] : terms.items()) {
    if (!val.is_number_integer()) throw Error(Errc::InvalidInput, "coefficient of " + key + " must be an integer");
    ff::SeriesRing::Exponent e(r.nvars(), 0);
    if (key != "1") {
      for (const auto& factor : split(key, '*')) {
        const auto parts = split(factor, '^');
        if (parts.empty()) throw Error(Errc::InvalidInput, "bad monomial \"" + key + "\"");
        const auto it = std::find(r.names().begin(), r.names().end(), parts[0]);
        if (it == r.names().end() || parts.size() > 2) throw Error(Errc::InvalidInput, "bad monomial \"" + key + "\"");
        int k = 1;
        if (parts.size() == 2) {
          try {
            k = std::stoi(parts[1]);
          } catch (const std::exception&) {
            throw Error(Errc::InvalidInput, "bad monomial \"" + key + "\"");
          }
        }
        e[it - r.names().begin()] += k;
      }
    }
    const auto c = field_code(r.field(), val.get<long long>());
    const long idx = r.index_of(e);
    if (idx >= 0) out = r.add(out, r.monomial(e, c));
  }
  return out;
}

// ---------------------------------------------------------------- drinfeld

json module_json(const drinfeld::DrinfeldModule& phi) {
  std::vector<std::uint64_t> coeffs;
  for (const auto& c : phi.phi_t().coeffs()) coeffs.push_back(phi.field().code(c));
  return {{"q", phi.fq()->size()},
          {"m", phi.field().degree()},
          {"gamma_t", phi.field().code(phi.gamma_t())},
          {"phi_t_coeffs", coeffs}};
}

struct ModuleArgs {
  std::string in;
  std::uint32_t q = 0;
  int m = 1;
  std::string phi;
};

drinfeld::DrinfeldModule module_from(const ModuleArgs& a) {
  if (!a.in.empty()) {
    const auto j = read_input(a.in);
    reject_unknown(j, {"q", "m", "gamma_t", "phi_t_coeffs"});
    const auto coeffs = get<std::vector<std::uint64_t>>(j, "phi_t_coeffs");
    if (j.contains("gamma_t") && (coeffs.empty() || get<std::uint64_t>(j, "gamma_t") != coeffs[0]))
      throw Error(Errc::InvalidInput, "gamma_t must equal the constant coefficient of phi_t");
    return drinfeld::make_drinfeld(get<std::uint32_t>(j, "q"), get_or<int>(j, "m", 1), coeffs);
  }
  if (a.q == 0 || a.phi.empty()) throw Error(Errc::InvalidInput, "give --in or both --q and --phi");
  return drinfeld::make_drinfeld(a.q, a.m, parse_codes(a.phi));
}

tormod::ModulePtr module_of_divisors(const ff::FieldPtr& fq, const std::string& divisors) {
  if (divisors.empty()) return std::make_shared<const tormod::TorsionModule>(fq, std::vector<tormod::PrimaryComponent>{});
  std::vector<Poly> ds;
  for (const auto& s : split(divisors, ',')) ds.push_back(ff::parse_poly(*fq, s));
  return std::make_shared<const tormod::TorsionModule>(tormod::primary_decomposition(fq, ds));
}

Poly prime_power(const ff::SmallField& f, const Poly& p, int n) {
  Poly r = upoly::constant(f, f.one());
  for (int i = 0; i < n; ++i) r = upoly::mul(f, r, p);
  return r;
}

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::NotClosedUnderProduct:
    case Errc::HypothesisViolated:
    case Errc::NotLinear:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"drinlev: level structures, admissible subgroups and invariant theory over F_q[t]"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  std::uint64_t cap = kDefaultEnumCap;
  int trunc = 0;
  int ext_deg = 0;
  app.add_option("--out", out_path, "output file (default: standard output)");
  app.add_option("--cap-enum", cap, "enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--trunc", trunc, "truncation order P for local rings")->check(CLI::PositiveNumber);
  app.add_option("--ext-deg", ext_deg, "extension degree M of the field model")->check(CLI::PositiveNumber);

  json result;
  bool checks_ok = true;
  std::function<void()> action;

  // admissible
  auto* adm = app.add_subcommand("admissible", "congruence subgroups of Aut(N)");
  std::string adm_action, adm_in;
  adm->add_option("action", adm_action, "analyze | enumerate | triangle")
      ->required()
      ->check(CLI::IsMember({"analyze", "enumerate", "triangle"}));
  adm->add_option("--in", adm_in, "datum JSON")->required();
  adm->callback([&] {
    action = [&] {
      const auto raw = raw_datum(read_input(adm_in));
      if (adm_action == "triangle") {
        const tormod::PrimaryShape s(raw.prime, raw.shape);
        if (!admissible::within_bounds(s, raw.m)) throw Error(Errc::BoundViolation, "m outside n_ij <= m_ij <= n_j");
        result = {{"triangle", admissible::triangle_check(raw.m)},
                  {"closed", admissible::closed_by_enumeration(s, raw.m, cap)}};
        return;
      }
      const auto h = build(raw, cap);
      if (adm_action == "analyze") {
        result = analyze_json(admissible::analyze(h, cap));
        for (const auto& [k, v] : result.items())
          if (v.is_boolean() && !v.get<bool>()) checks_ok = false;
      } else {
        json elems = json::array();
        for (const auto& g : admissible::enumerate(h, cap)) elems.push_back(matrix_json(h.shape(), g));
        result = {{"order", elems.size()}, {"elements", elems}};
      }
    };
  });

  // jchain
  auto* jch = app.add_subcommand("jchain", "J^{k,l} chain and Q^{k,l} representatives of a standard datum");
  std::string jch_in;
  jch->add_option("--in", jch_in, "datum JSON")->required();
  jch->callback([&] {
    action = [&] {
      const auto h = build(raw_datum(read_input(jch_in)), cap);
      const auto jc = admissible::j_chain(h, cap);
      const bool rows = admissible::block_row_constancy(h);
      result = jchain_json(jc, rows);
      checks_ok = jc.j_is_levi_kernel && jc.chain_nested && jc.sizes_match && jc.k_normal && jc.kl_normal &&
                  jc.q_ok && rows;
    };
  });

  // dickson
  auto* dick = app.add_subcommand("dickson", "Dickson invariants and invariant dimensions");
  std::string dick_action, dick_in;
  std::uint32_t dq = 0;
  int dd = 0, dmax = 12, ddeg = 0;
  dick->add_option("action", dick_action, "verify | generators | dimension")
      ->required()
      ->check(CLI::IsMember({"verify", "generators", "dimension"}));
  dick->add_option("--q", dq, "field size");
  dick->add_option("--d", dd, "number of variables");
  dick->add_option("--Dmax", dmax, "largest degree for verify");
  dick->add_option("--D", ddeg, "degree for dimension");
  dick->add_option("--in", dick_in, "for dimension: {\"q\", \"d\", \"generators\": [matrices]}");
  dick->callback([&] {
    action = [&] {
      if (dick_action == "dimension") {
        const auto j = read_input(dick_in);
        reject_unknown(j, {"q", "d", "generators", "degree"});
        const auto q = get<std::uint32_t>(j, "q");
        const dickson::MatrixGroupAction g(ff::field(q), get<int>(j, "d"),
                                           get<std::vector<dickson::FMatrix>>(j, "generators"), cap);
        const int degree = get_or<int>(j, "degree", ddeg);
        result = {{"group_order", g.order()},
                  {"degree", degree},
                  {"dimension", dickson::invariant_dimension(g, degree, cap)}};
        return;
      }
      if (dq == 0 || dd < 1) throw Error(Errc::InvalidInput, "--q and --d are required");
      if (dick_action == "generators") {
        const auto gens = dickson::dickson_generators(dq, dd);
        json list = json::array();
        for (const auto& g : gens)
          list.push_back({{"degree", dickson::mpoly::homogeneous_degree(g)}, {"polynomial", dickson::mpoly::format(g)}});
        result = {{"q", dq}, {"d", dd}, {"generators", list}};
        return;
      }
      const auto r = dickson::verify_dickson(dq, dd, dmax, cap);
      result = {{"q", r.q},
                {"d", r.d},
                {"Dmax", r.dmax},
                {"degrees", r.degrees},
                {"generators", r.generators},
                {"invariant_dims", r.invariant_dims},
                {"generator_dims", r.generator_dims},
                {"span_dims", r.span_dims},
                {"generators_invariant", r.generators_invariant},
                {"equal", r.equal}};
      checks_ok = r.equal && r.generators_invariant;
    };
  });

  // km
  auto* km = app.add_subcommand("km", "freeness and parameter check for a finite group acting on F[[x, y]]");
  std::string km_in;
  km->add_option("--in", km_in, "action JSON")->required();
  km->callback([&] {
    action = [&] {
      const auto j = read_input(km_in);
      reject_unknown(j, {"q", "x_vars", "trunc", "model", "zeta", "c", "generators"});
      const auto q = get<std::uint32_t>(j, "q");
      const int xs = get_or<int>(j, "x_vars", 1);
      const int p = get_or<int>(j, "trunc", trunc > 0 ? trunc : 10);
      if (xs < 0) throw Error(Errc::InvalidInput, "x_vars must be >= 0");
      std::vector<std::string> names;
      for (int i = 0; i < xs; ++i) names.push_back(xs == 1 ? "x" : "x" + std::to_string(i + 1));
      names.push_back("y");
      const ff::SeriesRing r(ff::field(q), xs + 1, p, names);
      const auto model = get_or<std::string>(j, "model", "custom");
      std::vector<dickson::SeriesAction> gens;
      if (model == "scaling") {
        gens.push_back(dickson::scaling_action(r, field_code(r.field(), get<long long>(j, "zeta"))));
      } else if (model == "translation") {
        gens.push_back(dickson::translation_action(r, field_code(r.field(), get_or<long long>(j, "c", 1))));
      } else if (model == "custom") {
        for (const auto& g : get<json>(j, "generators")) {
          dickson::SeriesAction a;
          for (const auto& img : g) a.push_back(parse_series(r, img));
          if (static_cast<int>(a.size()) != r.nvars())
            throw Error(Errc::ShapeMismatch, "each generator needs one image per variable");
          gens.push_back(std::move(a));
        }
      } else {
        throw Error(Errc::InvalidInput, "model must be scaling, translation or custom");
      }
      const auto rep = dickson::km_check(r, gens, cap);
      result = {{"group_order", rep.group_order},
                {"norm", series_json(r, rep.norm)},
                {"norm_order", rep.norm_order},
                {"ring_dimension", rep.ring_dimension},
                {"family_rank", rep.family_rank},
                {"free_basis_ok", rep.free_basis_ok},
                {"param_count", rep.param_count},
                {"param_rank", rep.param_rank},
                {"fixed_dim", rep.fixed_dim},
                {"norm_invariant", rep.norm_invariant},
                {"params_ok", rep.params_ok}};
      checks_ok = rep.free_basis_ok && rep.params_ok && rep.norm_invariant;
    };
  });

  // drinfeld
  auto* dr = app.add_subcommand("drinfeld", "Drinfeld modules over finite fields");
  std::string dr_action, dr_a, dr_n, dr_p;
  ModuleArgs margs;
  int dr_d = 0, max_ext = 3;
  dr->add_option("action", dr_action, "info | torsion | count-level | witness")
      ->required()
      ->check(CLI::IsMember({"info", "torsion", "count-level", "witness"}));
  dr->add_option("--in", margs.in, "module JSON {\"q\", \"m\", \"gamma_t\", \"phi_t_coeffs\"}");
  dr->add_option("--q", margs.q, "size of F_q");
  dr->add_option("--m", margs.m, "K = F_{q^m}");
  dr->add_option("--phi", margs.phi, "phi_t coefficient codes, comma separated");
  dr->add_option("--a", dr_a, "torsion: a in A");
  dr->add_option("--module", dr_n, "count-level: divisors d_i of N = sum A/(d_i), comma separated");
  dr->add_option("--p", dr_p, "witness: the characteristic prime");
  dr->add_option("--d", dr_d, "witness: rank");
  dr->add_option("--max-ext", max_ext, "witness: largest extension degree searched");
  dr->callback([&] {
    action = [&] {
      if (dr_action == "witness") {
        if (margs.q == 0 || dr_d < 1 || dr_p.empty()) throw Error(Errc::InvalidInput, "--q, --d and --p are required");
        const auto phi = drinfeld::supersingular_witness(margs.q, dr_d, parse(margs.q, dr_p), max_ext, cap);
        result = module_json(phi);
        result["height"] = drinfeld::height(phi);
        result["supersingular"] = drinfeld::is_supersingular(phi);
        return;
      }
      const auto phi = module_from(margs);
      if (dr_action == "info") {
        result = module_json(phi);
        result.update({{"rank", phi.rank()},
                       {"characteristic", ff::format_poly(phi.characteristic())},
                       {"height", drinfeld::height(phi)},
                       {"supersingular", drinfeld::is_supersingular(phi)}});
        return;
      }
      const int m = ext_deg > 0 ? ext_deg : 1;
      if (dr_action == "torsion") {
        if (dr_a.empty()) throw Error(Errc::InvalidInput, "--a is required");
        const auto t = drinfeld::torsion_points(phi, ff::parse_poly(*phi.fq(), dr_a), m, cap);
        json basis = json::array(), points = json::array();
        for (const auto& b : t.basis) basis.push_back(t.field->code(b));
        for (const auto& x : t.points) points.push_back(t.field->code(x));
        result = {{"a", dr_a}, {"ext_deg", m}, {"count", t.points.size()}, {"basis", basis}, {"points", points}};
        return;
      }
      const auto n = module_of_divisors(phi.fq(), dr_n);
      result = {{"module", dr_n}, {"ext_deg", m}, {"count", drinfeld::count_level_structures(phi, n, m, cap)}};
    };
  });

  // hecke
  auto* hk = app.add_subcommand("hecke", "degrees of the Hecke correspondence T_{wp,k}");
  std::uint32_t hq = 0;
  std::string hp;
  int hd = 0, hkk = 0;
  hk->add_option("--q", hq, "size of F_q")->required();
  hk->add_option("--p", hp, "the prime wp = (p)")->required();
  hk->add_option("--d", hd, "rank")->required();
  hk->add_option("--k", hkk, "level (A/wp)^k")->required();
  hk->callback([&] {
    action = [&] {
      const auto prime = ff::prime_data(ff::field(hq), parse(hq, hp));
      const auto h = drinfeld::hecke_degrees(prime.q_wp, hd, hkk);
      result = {{"q_wp", h.q_wp}, {"d", h.d},           {"k", h.k},           {"deg_r", h.deg_r},
                {"deg_m", h.deg_m}, {"G_k", h.order_g_k}, {"deg_h_r", h.deg_h_r}, {"deg_h_m", h.deg_h_m}};
    };
  });

  // formal
  auto* fm = app.add_subcommand("formal", "formal O-modules: Lubin-Tate tower, height, f^M identities");
  std::string fm_action, fm_params, fm_p;
  std::uint32_t fq_size = 0;
  int fn = 1;
  ModuleArgs fargs;
  std::uint64_t max_aut = 512;
  fm->add_option("action", fm_action, "lubin-tate | height | fm")
      ->required()
      ->check(CLI::IsMember({"lubin-tate", "height", "fm"}));
  fm->add_option("--q", fq_size, "lubin-tate: q_wp; fm: size of F_q");
  fm->add_option("--n", fn, "level exponent n");
  fm->add_option("--params", fm_params, "height: reduced t_1..t_{d-1} codes, comma separated");
  fm->add_option("--in", fargs.in, "fm: Drinfeld module JSON");
  fm->add_option("--m", fargs.m, "fm: K = F_{q^m}");
  fm->add_option("--phi", fargs.phi, "fm: phi_t coefficient codes");
  fm->add_option("--p", fm_p, "fm: a good degree-1 prime");
  fm->add_option("--max-aut", max_aut, "fm: automorphisms sampled");
  fm->callback([&] {
    action = [&] {
      if (fm_action == "height") {
        std::vector<ff::SmallField::Elem> params;
        if (!fm_params.empty())
          for (auto c : parse_codes(fm_params)) params.push_back(static_cast<ff::SmallField::Elem>(c));
        result = {{"d", params.size() + 1}, {"height", formal::formal_height(params)}};
        return;
      }
      if (fm_action == "lubin-tate") {
        if (fq_size == 0) throw Error(Errc::InvalidInput, "--q is required");
        const int p = trunc > 0 ? trunc : 32;
        const auto rep = formal::lubin_tate_chain(fq_size, fn, p);
        const ff::SeriesRing r(ff::field(fq_size), 1, p, {"v"});
        json theta = json::array();
        for (const auto& t : rep.theta) theta.push_back(series_json(r, t));
        result = {{"q", rep.q},
                  {"n", rep.n},
                  {"precision", rep.precision},
                  {"pi", series_json(r, rep.pi)},
                  {"theta", theta},
                  {"theta_orders", rep.theta_orders},
                  {"ramification", rep.ramification},
                  {"expected", rep.expected},
                  {"chain_ok", rep.chain_ok},
                  {"ratios_ok", rep.ratios_ok},
                  {"local_parameter", rep.local_parameter},
                  {"eisenstein_degree", rep.eisenstein_degree},
                  {"eisenstein", rep.eisenstein}};
        checks_ok = rep.chain_ok && rep.ratios_ok && rep.local_parameter && rep.eisenstein &&
                    static_cast<std::uint64_t>(rep.ramification) == rep.expected;
        return;
      }
      fargs.q = fq_size;
      const auto phi = module_from(fargs);
      if (fm_p.empty()) throw Error(Errc::InvalidInput, "--p is required");
      if (ext_deg < 1) throw Error(Errc::InvalidInput, "--ext-deg is required");
      const auto rep = formal::verify_fm_identities(phi, ff::parse_poly(*phi.fq(), fm_p), fn, ext_deg, max_aut, cap);
      result = {{"q", rep.q},
                {"d", rep.d},
                {"n", rep.n},
                {"ext_deg", rep.ext_deg},
                {"automorphisms", rep.automorphisms},
                {"submodules", rep.submodules},
                {"transport_ok", rep.transport_ok},
                {"scalar_ok", rep.scalar_ok},
                {"kernel_ok", rep.kernel_ok},
                {"torsion_ok", rep.torsion_ok},
                {"counterexamples", rep.counterexamples}};
      checks_ok = rep.transport_ok && rep.scalar_ok && rep.kernel_ok && rep.torsion_ok;
    };
  });

  // verify-all
  auto* va = app.add_subcommand("verify-all", "run the batch verification suites");
  std::vector<int> only;
  bool timings = false;
  va->add_option("--suite", only, "run only these suites (1..10)");
  va->add_flag("--timings", timings, "include wall times (output is then not reproducible)");
  va->callback([&] {
    action = [&] {
      json list = json::array();
      bool all = true;
      std::vector<int> ids = only;
      if (ids.empty())
        for (int i = 1; i <= suites::kSuiteCount; ++i) ids.push_back(i);
      for (int id : ids) {
        const auto r = suites::run_suite(id, cap);
        all = all && r.pass;
        list.push_back(suites::to_json(r, timings));
      }
      result = {{"suites", list}, {"pass", all}};
      checks_ok = all;
    };
  });

  auto emit = [&](const json& j) {
    const auto text = j.dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(out_path);
    if (!f) {
      err << "cannot write " << out_path << "\n";
      return;
    }
    f << text;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    emit({{"error", {{"code", "InvalidInput"}, {"message", e.what()}}}});
    return 2;
  }
  try {
    action();
  } catch (const Error& e) {
    emit({{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}});
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit({{"error", {{"code", "InvalidInput"}, {"message", e.what()}}}});
    return 2;
  }
  emit(result);
  return checks_ok ? 0 : 1;
}

}  // namespace drinlev::cli
