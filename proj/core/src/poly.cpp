#include "modcsp/poly.hpp"

#include <algorithm>

#include "modcsp/error.hpp"

namespace modcsp {

IntPoly IntPoly::constant(std::size_t nvars, const BigInt& c) {
  IntPoly p(nvars);
  p.add_term({}, c);
  return p;
}

IntPoly IntPoly::variable(std::size_t nvars, std::uint32_t i) {
  IntPoly p(nvars);
  p.add_term({i}, 1);
  return p;
}

std::size_t IntPoly::degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.size());
  return d;
}

BigInt IntPoly::coeff_norm() const {
  BigInt s = 0;
  for (const auto& [m, c] : terms_) s += abs(c);
  return s;
}

BigInt IntPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

bool IntPoly::has_negative_coefficients() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second < 0; });
}

void IntPoly::add_term(const Monomial& m, const BigInt& c) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] >= nvars_) throw Error(Errc::invalid_argument, "monomial variable out of range");
    if (i && m[i - 1] >= m[i]) throw Error(Errc::invalid_argument, "monomial must be sorted and duplicate free");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  nvars_ = std::max(nvars_, o.nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

IntPoly& IntPoly::operator*=(const BigInt& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

IntPoly IntPoly::reduced_mod(const BigInt& m) const {
  IntPoly out(nvars_);
  for (const auto& [mono, c] : terms_) {
    BigInt r = c % m;
    if (r < 0) r += m;
    if (r != 0) out.terms_.emplace(mono, r);
  }
  return out;
}

std::string IntPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    BigInt mag = abs(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    std::string vars;
    for (auto v : m) vars += (vars.empty() ? "x" : "*x") + std::to_string(v + 1);
    if (vars.empty())
      s += mag.str();
    else if (mag == 1)
      s += vars;
    else
      s += mag.str() + "*" + vars;
  }
  return s;
}

IntPoly multiply(const IntPoly& a, const IntPoly& b, Basis basis) {
  IntPoly out(std::max(a.nvars(), b.nvars()));
  Monomial m;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      m.clear();
      if (basis == Basis::zero_one)
        std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      else
        std::set_symmetric_difference(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

BigInt eval(const IntPoly& p, std::span<const int> point, Basis basis, std::optional<std::uint64_t> modulus) {
  if (point.size() != p.nvars()) throw Error(Errc::length_mismatch, "point length does not match nvars");
  for (int v : point) {
    bool ok = basis == Basis::zero_one ? (v == 0 || v == 1) : (v == -1 || v == 1);
    if (!ok) throw Error(Errc::basis_mismatch, "point entry " + std::to_string(v) + " outside the basis value set");
  }
  BigInt acc = 0;
  for (const auto& [m, c] : p.terms()) {
    int sign = 1;
    for (auto i : m) sign *= point[i];
    if (sign != 0) acc += sign > 0 ? c : BigInt(-c);
  }
  if (modulus) {
    acc %= *modulus;
    if (acc < 0) acc += *modulus;
  }
  return acc;
}

std::vector<std::uint64_t> cube_values(const IntPoly& p, std::size_t d, Basis basis, std::uint64_t modulus) {
  if (d > kMaxCubeVars) throw Error(Errc::size_limit, "exhaustive cube check capped at 24 variables");
  if (modulus < 2) throw Error(Errc::invalid_modulus, "modulus must be >= 2");
  const std::size_t size = std::size_t{1} << d;
  std::vector<std::uint64_t> f(size, 0);
  for (const auto& [m, c] : p.terms()) {
    std::size_t mask = 0;
    for (auto v : m) {
      if (v >= d) throw Error(Errc::invalid_argument, "polynomial mentions a variable beyond the checked range");
      mask |= std::size_t{1} << v;
    }
    f[mask] = (f[mask] + mod_u64(c, modulus)) % modulus;
  }
  for (std::size_t bit = 1; bit < size; bit <<= 1) {
    for (std::size_t mask = 0; mask < size; ++mask) {
      if (mask & bit) continue;
      const std::uint64_t lo = f[mask], hi = f[mask | bit];
      if (basis == Basis::zero_one) {
        f[mask | bit] = (hi + lo) % modulus;
      } else {
        f[mask] = (lo + hi) % modulus;
        f[mask | bit] = (lo + modulus - hi) % modulus;
      }
    }
  }
  return f;
}

namespace {

bool zero_exactly_at_origin(const std::vector<std::uint64_t>& values, std::size_t origin) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if ((values[i] == 0) != (i == origin)) return false;
  return true;
}

}  // namespace

bool is_nand_rep_01(const IntPoly& p, std::size_t d, std::uint64_t modulus) {
  auto v = cube_values(p, d, Basis::zero_one, modulus);
  return zero_exactly_at_origin(v, v.size() - 1);
}

bool is_or_rep_pm1(const IntPoly& p, std::size_t d, std::uint64_t modulus) {
  auto v = cube_values(p, d, Basis::plus_minus_one, modulus);
  return zero_exactly_at_origin(v, 0);
}

}  // namespace modcsp
