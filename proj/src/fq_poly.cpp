#include "drinlev/ffpoly/fq_poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace drinlev::ff {

Poly var_t(const SmallField& f) { return {f.zero(), f.one()}; }

bool is_irreducible(const SmallField& f, const Poly& p) {
  const int n = upoly::degree<SmallField>(p);
  if (n < 1) return false;
  const Poly t = var_t(f);
  Poly h = upoly::rem(f, t, p);
  for (int i = 1; 2 * i <= n; ++i) {
    h = upoly::powmod(f, h, f.size(), p);
    const Poly g = upoly::gcd(f, p, upoly::sub(f, h, t));
    if (upoly::degree<SmallField>(g) > 0) return false;
  }
  return true;
}

Poly canonical_irreducible(const SmallField& f, int n) {
  if (n < 1) throw Error(Errc::InvalidInput, "irreducible degree must be positive");
  const std::uint32_t q = f.size();
  std::vector<std::uint32_t> digits(n, 0);
  while (true) {
    Poly p(digits.begin(), digits.end());
    p.push_back(f.one());
    if (is_irreducible(f, p)) return p;
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  throw Error(Errc::InvalidInput, "no irreducible polynomial of the requested degree");
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

std::vector<std::pair<Poly, int>> factor(const SmallField& f, const Poly& a) {
  if (a.empty()) throw Error(Errc::ZeroElement, "factorisation of zero");
  Poly rest = upoly::make_monic(f, a);
  std::vector<std::pair<Poly, int>> out;
  for (int d = 1; 2 * d <= upoly::degree<SmallField>(rest); ++d) {
    std::vector<std::uint32_t> digits(d, 0);
    while (true) {
      Poly p(digits.begin(), digits.end());
      p.push_back(f.one());
      int e = 0;
      while (upoly::degree<SmallField>(rest) >= d) {
        auto [quo, r] = upoly::divmod_monic(f, rest, p);
        if (!r.empty()) break;
        rest = std::move(quo);
        ++e;
      }
      if (e > 0) out.emplace_back(p, e);
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == f.size()) digits[k++] = 0;
      if (k == digits.size() || 2 * d > upoly::degree<SmallField>(rest)) break;
    }
  }
  if (upoly::degree<SmallField>(rest) > 0) out.emplace_back(rest, 1);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return poly_less(x.first, y.first); });
  // Trial division by all monic polynomials only ever strips irreducibles
  // first, but a leftover prime can repeat an earlier one.
  std::vector<std::pair<Poly, int>> merged;
  for (auto& pe : out) {
    if (!merged.empty() && merged.back().first == pe.first)
      merged.back().second += pe.second;
    else
      merged.push_back(std::move(pe));
  }
  return merged;
}

std::uint64_t absolute_value(const SmallField& f, const Poly& a) {
  if (a.empty()) throw Error(Errc::ZeroElement, "absolute value of zero");
  std::uint64_t r = 1;
  for (int i = 0; i < upoly::degree<SmallField>(a); ++i) r *= f.size();
  return r;
}

std::vector<long long> coefficients(const Poly& p) { return {p.begin(), p.end()}; }

Poly from_coefficients(const SmallField& f, const std::vector<long long>& c) {
  Poly p;
  for (long long v : c) {
    if (f.degree() > 1 && v >= 0 && v < static_cast<long long>(f.size()))
      p.push_back(static_cast<SmallField::Elem>(v));
    else
      p.push_back(f.from_int(v));
  }
  upoly::trim(f, p);
  return p;
}

Poly parse_poly(const SmallField& f, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(Errc::InvalidInput, "empty polynomial");
  if (s.front() == '[') {
    if (s.back() != ']') throw Error(Errc::InvalidInput, "unterminated coefficient list: " + text);
    std::vector<long long> c;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      c.push_back(std::stoll(item));
    }
    return from_coefficients(f, c);
  }
  std::vector<long long> c;
  std::size_t i = 0;
  while (i < s.size()) {
    long long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    long long coef = 1;
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t used = 0;
      coef = std::stoll(s.substr(i), &used);
      i += used;
      have_coef = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    std::size_t power = 0;
    if (i < s.size() && (s[i] == 't' || s[i] == 'x')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t used = 0;
        power = std::stoul(s.substr(i), &used);
        i += used;
      }
    } else if (!have_coef) {
      throw Error(Errc::InvalidInput, "cannot parse polynomial: " + text);
    }
    if (c.size() <= power) c.resize(power + 1, 0);
    c[power] += sign * coef;
  }
  return from_coefficients(f, c);
}

std::string format_poly(const Poly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t k = p.size(); k-- > 0;) {
    if (p[k] == 0) continue;
    if (!out.empty()) out += "+";
    const bool unit = p[k] == 1;
    if (k == 0) {
      out += std::to_string(p[k]);
    } else {
      if (!unit) out += std::to_string(p[k]);
      out += "t";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace drinlev::ff
