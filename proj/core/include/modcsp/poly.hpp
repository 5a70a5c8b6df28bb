#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace modcsp {

using BigInt = boost::multiprecision::cpp_int;

// Sorted, duplicate-free variable indices.
using Monomial = std::vector<std::uint32_t>;

enum class Basis { zero_one, plus_minus_one };

// Multilinear polynomial with integer coefficients; zero terms are never stored.
class IntPoly {
 public:
  explicit IntPoly(std::size_t nvars = 0) : nvars_(nvars) {}
  static IntPoly constant(std::size_t nvars, const BigInt& c);
  static IntPoly variable(std::size_t nvars, std::uint32_t i);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Monomial, BigInt>& terms() const noexcept { return terms_; }
  std::size_t sparsity() const noexcept { return terms_.size(); }
  std::size_t degree() const;
  BigInt coeff_norm() const;  // sum of |coefficients|
  BigInt coefficient(const Monomial& m) const;
  bool is_zero() const noexcept { return terms_.empty(); }
  bool has_negative_coefficients() const;

  // Adds c * m; m must be canonical with indices below nvars().
  void add_term(const Monomial& m, const BigInt& c);

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const BigInt& c);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }

  // Coefficients mapped into [0, m).
  IntPoly reduced_mod(const BigInt& m) const;

  std::string to_string() const;  // e.g. "2 - x1 - x2", 1-based variables

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  std::size_t nvars_;
  std::map<Monomial, BigInt> terms_;
};

// Product under x_i^2 = x_i (zero_one) or z_i^2 = 1 (plus_minus_one).
IntPoly multiply(const IntPoly& a, const IntPoly& b, Basis basis);

// Exact value at a point of {0,1}^n or {-1,1}^n, reduced into [0, M) if M is given.
BigInt eval(const IntPoly& p, std::span<const int> point, Basis basis, std::optional<std::uint64_t> modulus = {});

inline constexpr std::size_t kMaxCubeVars = 24;

// All 2^d values mod M. Index bit i set means x_i = 1 (zero_one) or z_i = -1
// (plus_minus_one). p may only mention the first d variables.
std::vector<std::uint64_t> cube_values(const IntPoly& p, std::size_t d, Basis basis, std::uint64_t modulus);

bool is_nand_rep_01(const IntPoly& p, std::size_t d, std::uint64_t modulus);
bool is_or_rep_pm1(const IntPoly& p, std::size_t d, std::uint64_t modulus);

std::uint64_t mod_u64(const BigInt& v, std::uint64_t m);

}  // namespace modcsp
