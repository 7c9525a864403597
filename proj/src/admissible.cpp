#include "drinlev/admissible/admissible.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace drinlev::admissible {

namespace {

bool in_sorted(const std::vector<std::uint64_t>& v, std::uint64_t c) {
  return std::binary_search(v.begin(), v.end(), c);
}

// phi_ij - delta_ij lies in wp^{m_ij}/wp^{n_j}.
bool congruent(const PrimaryShape& s, const IntMatrix& m, const Matrix& g) {
  const int r = s.rank();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const auto& ring = s.ring(j);
      auto a = g[i * r + j];
      if (i == j) a = ring.sub(a, 1);
      if (a != 0 && ring.valuation(a) < m[i][j]) return false;
    }
  return true;
}

std::uint64_t gl_order(std::uint64_t q, int k) {
  std::uint64_t qk = 1;
  for (int i = 0; i < k; ++i) qk *= q;
  std::uint64_t order = 1, qi = 1;
  for (int i = 0; i < k; ++i) {
    order *= qk - qi;
    qi *= q;
  }
  return order;
}

// Packs an r x r kappa-matrix as a base-q_wp integer.
std::uint64_t pack_kappa(const Matrix& b, std::uint64_t q) {
  std::uint64_t c = 0;
  for (auto x : b) c = c * q + x;
  return c;
}

// The combinatorial part of the structure analysis (no enumeration).
struct Combinatorics {
  std::vector<std::vector<bool>> in_s;
  std::vector<int> class_of;  // representative = least member
  std::vector<std::vector<int>> classes;
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;
};

Combinatorics combinatorics(const PrimaryShape& s, const IntMatrix& m) {
  const int r = s.rank();
  Combinatorics c;
  c.in_s.assign(r, std::vector<bool>(r, false));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) c.in_s[i][j] = m[i][j] == s.exponent(j) - s.exponent(i);
  // classes of ~ (union-find so that a failed transitivity check still yields a partition)
  std::vector<int> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j && c.in_s[i][j] && c.in_s[j][i]) parent[std::max(find(i), find(j))] = std::min(find(i), find(j));
  c.class_of.resize(r);
  std::vector<int> class_index(r, -1);
  for (int i = 0; i < r; ++i) {
    c.class_of[i] = find(i);
    if (class_index[c.class_of[i]] < 0) {
      class_index[c.class_of[i]] = static_cast<int>(c.classes.size());
      c.classes.emplace_back();
    }
    c.classes[class_index[c.class_of[i]]].push_back(i);
  }
  // Kahn's algorithm on classes; ties broken by the least member.
  const int u = static_cast<int>(c.classes.size());
  std::vector<std::set<int>> succ(u);
  std::vector<int> indeg(u, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const int a = class_index[c.class_of[i]], b = class_index[c.class_of[j]];
      if (a != b && c.in_s[i][j] && succ[a].insert(b).second) ++indeg[b];
    }
  std::vector<bool> done(u, false);
  for (int step = 0; step < u; ++step) {
    int pick = -1;
    for (int a = 0; a < u; ++a)
      if (!done[a] && indeg[a] == 0) {
        pick = a;
        break;
      }
    if (pick < 0)  // cyclic relation: fall back to index order
      for (int a = 0; a < u; ++a)
        if (!done[a]) {
          pick = a;
          break;
        }
    done[pick] = true;
    for (int b : succ[pick]) --indeg[b];
    c.blocks.push_back(c.classes[pick]);
  }
  c.block_of.assign(r, 0);
  for (int b = 0; b < u; ++b)
    for (int i : c.blocks[b]) c.block_of[i] = b;
  return c;
}

bool is_normal(const PrimaryShape& s, const std::vector<std::uint64_t>& g_set,
               const std::vector<std::uint64_t>& n_set) {
  std::vector<Matrix> n_mats;
  for (auto c : n_set) n_mats.push_back(s.unpack(c));
  std::vector<std::uint64_t> left, right;
  for (auto gc : g_set) {
    const Matrix g = s.unpack(gc);
    left.clear();
    right.clear();
    for (const auto& x : n_mats) {
      left.push_back(s.pack(tormod::multiply(s, g, x)));
      right.push_back(s.pack(tormod::multiply(s, x, g)));
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    if (left != right) return false;
  }
  return true;
}

void check_standard(const CongruenceDatum& h) {
  if (!h.is_standard()) throw Error(Errc::NotStandardShape, "shape must be (n, ..., n) of length d");
}

}  // namespace

// ------------------------------------------------------------------ datum

bool within_bounds(const PrimaryShape& s, const IntMatrix& m) {
  const int r = s.rank();
  if (static_cast<int>(m.size()) != r) return false;
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(m[i].size()) != r) return false;
    for (int j = 0; j < r; ++j)
      if (m[i][j] < s.hom_exponent(i, j) || m[i][j] > s.exponent(j)) return false;
  }
  return true;
}

bool triangle_check(const IntMatrix& m) {
  const std::size_t r = m.size();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k)
        if (m[i][j] + m[j][k] < m[i][k]) return false;
  return true;
}

CongruenceDatum CongruenceDatum::build(const ff::PrimeInfo& prime, std::vector<int> shape, IntMatrix m, int d,
                                       std::uint64_t cap) {
  const int r = static_cast<int>(shape.size());
  if (r < 1 || r > d) throw Error(Errc::InvalidInput, "need 1 <= r <= d");
  if (static_cast<int>(m.size()) != r ||
      std::any_of(m.begin(), m.end(), [r](const auto& row) { return static_cast<int>(row.size()) != r; }))
    throw Error(Errc::ShapeMismatch, "exponent matrix must be r x r");
  CongruenceDatum h;
  h.shape_ = std::make_shared<const PrimaryShape>(prime, std::move(shape));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (m[i][j] < h.shape_->hom_exponent(i, j) || m[i][j] > h.shape_->exponent(j))
        throw Error(Errc::BoundViolation, "m_" + std::to_string(i + 1) + std::to_string(j + 1) + " = " +
                                              std::to_string(m[i][j]) + " outside [" +
                                              std::to_string(h.shape_->hom_exponent(i, j)) + ", " +
                                              std::to_string(h.shape_->exponent(j)) + "]");
  h.m_ = std::move(m);
  h.d_ = d;
  if (triangle_check(h.m_)) {
    h.closure_ = Closure::Triangle;
  } else if (closed_by_enumeration(*h.shape_, h.m_, cap)) {
    h.closure_ = Closure::Enumeration;
  } else {
    throw Error(Errc::NotClosedUnderProduct, "the congruence set is not a subgroup");
  }
  return h;
}

bool CongruenceDatum::is_standard() const {
  const auto& n = shape_->exponents();
  return rank() == d_ && std::all_of(n.begin(), n.end(), [&](int e) { return e == n.front(); });
}

bool CongruenceDatum::contains(const Matrix& g) const {
  const int r = rank();
  if (static_cast<int>(g.size()) != r * r) throw Error(Errc::ShapeMismatch, "matrix size");
  return tormod::entries_valid(*shape_, g) && congruent(*shape_, m_, g) && tormod::is_invertible(*shape_, g);
}

bool contains(const CongruenceDatum& h, const tormod::ModuleAutomorphism& g) {
  if (!(g.shape() == h.shape())) throw Error(Errc::ShapeMismatch, "automorphism of a different module");
  return h.contains(g.matrix());
}

// ------------------------------------------------------------- enumeration

std::vector<std::uint64_t> enumerate_codes(const PrimaryShape& s, const IntMatrix& e, std::uint64_t cap) {
  const int r = s.rank();
  std::vector<std::vector<ResidueRing::Elem>> cand(r * r);
  std::uint64_t total = 1;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const auto& ring = s.ring(j);
      const int k = std::clamp(e[i][j], 0, ring.exponent());
      const std::uint32_t count = ring.ideal_size(k);
      const std::uint32_t step = ring.size() / count;
      auto& c = cand[i * r + j];
      for (std::uint32_t x = 0; x < count; ++x) c.push_back(i == j ? ring.add(1, x * step) : x * step);
      if (total > cap / count) throw Error(Errc::CapacityExceeded, "enumeration exceeds the cap");
      total *= count;
    }
  std::vector<std::uint64_t> out;
  std::vector<std::size_t> pos(r * r, 0);
  Matrix g(r * r);
  for (int k = 0; k < r * r; ++k) g[k] = cand[k][0];
  for (;;) {
    if (tormod::is_invertible(s, g)) out.push_back(s.pack(g));
    int k = r * r - 1;
    while (k >= 0 && ++pos[k] == cand[k].size()) {
      pos[k] = 0;
      g[k] = cand[k][0];
      --k;
    }
    if (k < 0) break;
    g[k] = cand[k][pos[k]];
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_closed(const PrimaryShape& s, const std::vector<std::uint64_t>& codes) {
  const std::uint64_t id = s.pack(tormod::identity_matrix(s));
  if (!in_sorted(codes, id)) return false;
  std::unordered_set<std::uint64_t> group{id};
  std::vector<std::uint64_t> elems{id};
  std::vector<Matrix> gens;
  std::size_t scan = 0;
  // Right multiplication by generators, each (element, generator) pair once.
  auto close = [&](std::size_t old_count) {
    const Matrix& x = gens.back();
    for (std::size_t i = 0; i < old_count; ++i) {
      const auto p = s.pack(tormod::multiply(s, s.unpack(elems[i]), x));
      if (!in_sorted(codes, p)) return false;
      if (group.insert(p).second) elems.push_back(p);
    }
    for (std::size_t i = old_count; i < elems.size(); ++i) {
      const Matrix e = s.unpack(elems[i]);
      for (const auto& g : gens) {
        const auto p = s.pack(tormod::multiply(s, e, g));
        if (!in_sorted(codes, p)) return false;
        if (group.insert(p).second) elems.push_back(p);
      }
    }
    return true;
  };
  while (group.size() < codes.size()) {
    while (group.count(codes[scan])) ++scan;
    gens.push_back(s.unpack(codes[scan]));
    if (!close(elems.size())) return false;
  }
  return true;
}

bool closed_by_enumeration(const PrimaryShape& s, const IntMatrix& m, std::uint64_t cap) {
  return is_closed(s, enumerate_codes(s, m, cap));
}

std::vector<Matrix> enumerate(const CongruenceDatum& h, std::uint64_t cap) {
  std::vector<Matrix> out;
  for (auto c : enumerate_codes(h.shape(), h.m(), cap)) out.push_back(h.shape().unpack(c));
  return out;
}

// ---------------------------------------------------------------- analyze

StructureReport analyze(const CongruenceDatum& h, std::uint64_t cap) {
  const auto& s = h.shape();
  const int r = s.rank();
  const auto c = combinatorics(s, h.m());
  StructureReport rep;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (c.in_s[i][j]) rep.S.emplace_back(i + 1, j + 1);

  rep.s_transitive = true;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        if (c.in_s[i][j] && c.in_s[j][k] && !c.in_s[i][k]) rep.s_transitive = false;
  auto related = [&](int i, int j) { return i == j || (c.in_s[i][j] && c.in_s[j][i]); };
  rep.equivalence = true;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (related(i, j) != related(j, i)) rep.equivalence = false;
      for (int k = 0; k < r; ++k)
        if (related(i, j) && related(j, k) && !related(i, k)) rep.equivalence = false;
    }
  rep.singleton_property = true;
  for (int i = 0; i < r; ++i)
    if (!c.in_s[i][i])
      for (int j = 0; j < r; ++j)
        if (j != i && c.class_of[j] == c.class_of[i]) rep.singleton_property = false;

  for (const auto& cl : c.classes) {
    rep.classes.emplace_back();
    for (int i : cl) rep.classes.back().push_back(i + 1);
  }
  rep.filtration_dims.push_back(0);
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    const auto& blk = c.blocks[b];
    rep.blocks.emplace_back();
    for (int i : blk) {
      rep.blocks.back().push_back(i + 1);
      rep.permutation.push_back(i + 1);
    }
    rep.block_sizes.push_back(static_cast<int>(blk.size()));
    rep.filtration_dims.push_back(rep.filtration_dims.back() + static_cast<int>(blk.size()));
    bool full = true;
    for (int i : blk)
      for (int j : blk) full = full && c.in_s[i][j];
    if (full) rep.R.push_back(static_cast<int>(b) + 1);
  }

  // K by enumeration.
  const auto h_codes = enumerate_codes(s, h.m(), cap);
  rep.h_order = h_codes.size();
  const std::uint64_t q = s.prime().q_wp;
  const auto& kappa = s.kappa();
  std::set<std::uint64_t> k_set;
  std::vector<Matrix> k_mats;
  for (auto code : h_codes) {
    Matrix b = tormod::socle_matrix(s, s.unpack(code));
    if (k_set.insert(pack_kappa(b, q)).second) k_mats.push_back(std::move(b));
  }
  rep.k_order = k_set.size();

  // K against {B invertible : B_ij = delta_ij for (i,j) not in S}.
  {
    std::vector<int> free_pos;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (c.in_s[i][j]) free_pos.push_back(i * r + j);
    std::set<std::uint64_t> described;
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < free_pos.size(); ++k) {
      if (total > cap / q) throw Error(Errc::CapacityExceeded, "kappa-matrix enumeration exceeds the cap");
      total *= q;
    }
    for (std::uint64_t x = 0; x < total; ++x) {
      Matrix b(r * r, 0);
      for (int i = 0; i < r; ++i) b[i * r + i] = 1;
      std::uint64_t v = x;
      for (int p : free_pos) {
        b[p] = static_cast<ResidueRing::Elem>(v % q);
        v /= q;
      }
      if (tormod::kappa_determinant(kappa, b, r) != 0) described.insert(pack_kappa(b, q));
    }
    rep.k_matches_description = described == k_set;
  }

  // (2*): with row vectors acted on from the right, K stabilises the flag of
  // the transposed action: B_ij = 0 whenever block(i) > block(j).
  rep.star2 = true;
  for (const auto& b : k_mats)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (c.block_of[i] > c.block_of[j] && b[i * r + j] != 0) rep.star2 = false;

  // (*3): Levi image.
  std::vector<bool> in_r(c.blocks.size(), false);
  for (int s_idx : rep.R) in_r[s_idx - 1] = true;
  std::set<std::vector<std::uint64_t>> levi;
  rep.star3 = true;
  for (const auto& b : k_mats) {
    std::vector<std::uint64_t> image;
    for (std::size_t bi = 0; bi < c.blocks.size(); ++bi) {
      const auto& blk = c.blocks[bi];
      const int ds = static_cast<int>(blk.size());
      Matrix sub(ds * ds);
      for (int a = 0; a < ds; ++a)
        for (int e = 0; e < ds; ++e) sub[a * ds + e] = b[blk[a] * r + blk[e]];
      if (tormod::kappa_determinant(kappa, sub, ds) == 0) rep.star3 = false;
      if (!in_r[bi]) {
        for (int a = 0; a < ds; ++a)
          for (int e = 0; e < ds; ++e)
            if (sub[a * ds + e] != (a == e ? 1u : 0u)) rep.star3 = false;
      }
      image.push_back(pack_kappa(sub, q));
    }
    levi.insert(std::move(image));
  }
  rep.levi_image_order = levi.size();
  rep.levi_expected_order = 1;
  for (int s_idx : rep.R) rep.levi_expected_order *= gl_order(q, rep.block_sizes[s_idx - 1]);
  if (rep.levi_image_order != rep.levi_expected_order) rep.star3 = false;
  return rep;
}

// --------------------------------------------------------- named examples

CongruenceDatum gamma0(int d, const ff::PrimeInfo& prime, int n) {
  if (d < 1 || n < 1) throw Error(Errc::InvalidInput, "need d >= 1 and n >= 1");
  IntMatrix m(d, std::vector<int>(d, 0));
  for (int j = 0; j + 1 < d; ++j) m[d - 1][j] = n;
  return CongruenceDatum::build(prime, std::vector<int>(d, n), std::move(m), d);
}

CongruenceDatum gamma1(int d, const ff::PrimeInfo& prime, int n) {
  if (d < 1 || n < 1) throw Error(Errc::InvalidInput, "need d >= 1 and n >= 1");
  IntMatrix m(d, std::vector<int>(d, 0));
  for (int j = 0; j < d; ++j) m[d - 1][j] = n;
  return CongruenceDatum::build(prime, std::vector<int>(d, n), std::move(m), d);
}

CongruenceDatum parabolic(const std::vector<int>& partition, const ff::PrimeInfo& prime, int n) {
  if (partition.empty() || std::any_of(partition.begin(), partition.end(), [](int x) { return x < 1; }))
    throw Error(Errc::BadPartition, "parts must be positive and nonempty");
  if (n < 1) throw Error(Errc::InvalidInput, "need n >= 1");
  std::vector<int> block;
  for (std::size_t b = 0; b < partition.size(); ++b)
    for (int k = 0; k < partition[b]; ++k) block.push_back(static_cast<int>(b));
  const int d = static_cast<int>(block.size());
  IntMatrix m(d, std::vector<int>(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (block[i] > block[j]) m[i][j] = n;
  return CongruenceDatum::build(prime, std::vector<int>(d, n), std::move(m), d);
}

// ----------------------------------------------------------------- J-chain

IntMatrix m_prime(const CongruenceDatum& h) {
  check_standard(h);
  const int r = h.rank();
  IntMatrix mp = h.m();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (h.m(i, j) == 0 && h.m(j, i) == 0) mp[i][j] = 1;
  return mp;
}

IntMatrix j_exponents(const IntMatrix& mp, int n, int k, int l) {
  const int d = static_cast<int>(mp.size());
  IntMatrix e(d, std::vector<int>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) e[i][j] = std::min(n, std::max(mp[i][j], k + (i < l ? 1 : 0)));
  return e;
}

JChain j_chain(const CongruenceDatum& h, std::uint64_t cap) {
  check_standard(h);
  const auto& s = h.shape();
  const int d = h.rank();
  const int n = s.exponent(0);
  const std::uint64_t q = s.prime().q_wp;
  JChain jc;
  jc.m_prime = m_prime(h);

  // J = Ker[H -> prod L_s]: diagonal blocks of the socle image are identity.
  {
    const auto c = combinatorics(s, h.m());
    std::vector<std::uint64_t> kernel;
    for (auto code : enumerate_codes(s, h.m(), cap)) {
      const Matrix b = tormod::socle_matrix(s, s.unpack(code));
      bool trivial = true;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (c.class_of[i] == c.class_of[j] && b[i * d + j] != (i == j ? 1u : 0u)) trivial = false;
      if (trivial) kernel.push_back(code);
    }
    jc.j_is_levi_kernel = kernel == enumerate_codes(s, j_exponents(jc.m_prime, n, 0, 0), cap);
  }

  // codes[k][l]; J^n = {1} is codes[n][0].
  std::vector<std::vector<std::vector<std::uint64_t>>> codes(n + 1);
  jc.sizes_match = true;
  for (int k = 0; k <= n; ++k) {
    const int lmax = k < n ? d : 0;
    for (int l = 0; l <= lmax; ++l) {
      JLevel lv;
      lv.k = k;
      lv.l = l;
      lv.exponents = j_exponents(jc.m_prime, n, k, l);
      lv.predicted = 1;
      for (const auto& row : lv.exponents)
        for (int e : row)
          for (int t = e; t < n; ++t) lv.predicted *= q;
      codes[k].push_back(enumerate_codes(s, lv.exponents, cap));
      lv.enumerated = codes[k].back().size();
      if (lv.enumerated != lv.predicted) jc.sizes_match = false;
      jc.levels.push_back(std::move(lv));
    }
  }

  jc.chain_nested = true;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < d; ++l)
      if (!std::includes(codes[k][l].begin(), codes[k][l].end(), codes[k][l + 1].begin(), codes[k][l + 1].end()))
        jc.chain_nested = false;
    if (codes[k][d] != codes[k + 1][0]) jc.chain_nested = false;
  }

  jc.k_normal = true;
  for (int k = 0; k < n; ++k)
    if (!is_normal(s, codes[k][0], codes[k + 1][0])) jc.k_normal = false;
  jc.kl_normal = true;
  for (auto& lv : jc.levels) {
    if (lv.k < 1 || lv.k >= n || lv.l < 1) continue;
    lv.normal_in_previous = is_normal(s, codes[lv.k][lv.l - 1], codes[lv.k][lv.l]);
    if (!lv.normal_in_previous) jc.kl_normal = false;
  }

  // Representatives Q^{k,l}.
  jc.q_ok = true;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < d; ++l) {
      QLevel ql;
      ql.k = k;
      ql.l = l;
      const auto e0 = j_exponents(jc.m_prime, n, k, l);
      const auto e1 = j_exponents(jc.m_prime, n, k, l + 1);
      std::vector<int> moving;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (e0[i][j] != e1[i][j]) moving.push_back(i * d + j);
      std::uint64_t count = 1;
      for (std::size_t t = 0; t < moving.size(); ++t) count *= q;
      for (std::uint64_t x = 0; x < count; ++x) {
        Matrix g = tormod::identity_matrix(s);
        std::uint64_t v = x;
        for (int p : moving) {
          const auto a = static_cast<ResidueRing::Elem>(v % q);  // a in kappa
          v /= q;
          const auto api = s.ring(p % d).shift(a, k);                // a pi^k
          g[p] = s.ring(p % d).add(g[p], api);
        }
        ql.representatives.push_back(std::move(g));
      }
      const auto& big = codes[k][l];
      const auto& small = codes[k][l + 1];
      ql.index = small.empty() ? 0 : big.size() / small.size();
      ql.subset = std::all_of(ql.representatives.begin(), ql.representatives.end(),
                              [&](const Matrix& g) { return in_sorted(big, s.pack(g)); });
      std::vector<std::uint64_t> cover;
      for (const auto& g : ql.representatives)
        for (auto c : small) cover.push_back(s.pack(tormod::multiply(s, g, s.unpack(c))));
      const std::size_t raw = cover.size();
      std::sort(cover.begin(), cover.end());
      cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
      ql.complete = cover.size() == raw && cover == big;
      // Image in J^{k,l}/J^{k+1}: cosets of J^{k+1} are fibres of reduction mod wp^{k+1}.
      auto reduce = [&](const Matrix& g) {
        Matrix out(g.size());
        for (std::size_t p = 0; p < g.size(); ++p) out[p] = s.ring(p % d).reduce(g[p], k + 1);
        return s.pack(out);
      };
      std::set<std::uint64_t> image;
      for (const auto& g : ql.representatives) image.insert(reduce(g));
      ql.image_subgroup = true;
      for (const auto& g1 : ql.representatives)
        for (const auto& g2 : ql.representatives)
          if (!image.count(reduce(tormod::multiply(s, g1, g2)))) ql.image_subgroup = false;
      if (!ql.subset || !ql.complete || !ql.image_subgroup || ql.representatives.size() != ql.index) jc.q_ok = false;
      jc.q.push_back(std::move(ql));
    }
  return jc;
}

bool block_row_constancy(const CongruenceDatum& h) {
  const auto mp = m_prime(h);
  const auto c = combinatorics(h.shape(), h.m());
  for (const auto& blk : c.blocks)
    for (int i : blk)
      if (mp[i] != mp[blk.front()]) return false;
  return true;
}

// ------------------------------------------------------------- tilde lift

IntMatrix tilde_exponents(const PrimaryShape& s, const IntMatrix& m, int n, int d) {
  const int r = s.rank();
  const auto& ns = s.exponents();
  if (r > d) throw Error(Errc::InvalidInput, "need r <= d");
  if (n < *std::max_element(ns.begin(), ns.end())) throw Error(Errc::InvalidInput, "need n >= max n_i");
  IntMatrix e(d, std::vector<int>(d, 0));
  for (int i = 0; i < r; ++i)
    for (int b = 0; b < d; ++b) e[i][b] = b < r ? m[i][b] + ns[i] - ns[b] : ns[i];
  return e;
}

CongruenceDatum tilde_lift(const CongruenceDatum& h, int n, int d, std::uint64_t cap) {
  return CongruenceDatum::build(h.prime(), std::vector<int>(d, n), tilde_exponents(h.shape(), h.m(), n, d), d, cap);
}

std::vector<std::uint64_t> stabilizer_codes(const PrimaryShape& s, const IntMatrix& m, int n, int d,
                                            std::uint64_t cap) {
  const int r = s.rank();
  if (r > d) throw Error(Errc::InvalidInput, "need r <= d");
  const PrimaryShape big(s.prime(), std::vector<int>(d, n));
  const auto& ring = big.ring(0);
  std::vector<std::uint64_t> out;
  for (auto code : enumerate_codes(big, IntMatrix(d, std::vector<int>(d, 0)), cap)) {
    const Matrix g = big.unpack(code);
    Matrix phi(r * r, 0);
    bool stable = true;
    for (int i = 0; i < r && stable; ++i) {
      std::vector<ResidueRing::Elem> v(d, 0);
      v[i] = ring.shift(1, n - s.exponent(i));  // image of 1 in A/wp^{n_i}
      const auto w = tormod::apply(big, v, g);
      for (int b = 0; b < d && stable; ++b) {
        if (b >= r) {
          stable = w[b] == 0;
          continue;
        }
        const std::uint32_t unit = ring.size() / ring.ideal_size(n - s.exponent(b));  // q_wp^{n - n_b}
        if (w[b] % unit != 0) {
          stable = false;
        } else {
          phi[i * r + b] = w[b] / unit;
        }
      }
    }
    if (stable && tormod::entries_valid(s, phi) && congruent(s, m, phi)) out.push_back(code);
  }
  return out;
}

}  // namespace drinlev::admissible
