#include "modcsp/number.hpp"

#include "modcsp/error.hpp"

namespace modcsp {

std::uint64_t PrimePower::value() const { return ipow(prime, exponent); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    PrimePower pp{static_cast<std::uint32_t>(d), 0};
    while (n % d == 0) {
      n /= d;
      ++pp.exponent;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({static_cast<std::uint32_t>(n), 1});
  return out;
}

bool is_prime_power(std::uint64_t n) { return n >= 2 && factorize(n).size() == 1; }

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(Errc::invalid_argument, "value has no inverse modulo " + std::to_string(m));
  return mod_reduce(t, m);
}

std::uint64_t mod_reduce(std::int64_t value, std::uint64_t m) {
  std::int64_t mm = static_cast<std::int64_t>(m);
  std::int64_t r = value % mm;
  return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

std::uint64_t crt(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& residues_and_moduli) {
  unsigned __int128 x = 0, modulus = 1;
  for (auto [r, m] : residues_and_moduli) {
    // x + modulus * k = r (mod m)
    std::uint64_t cur = static_cast<std::uint64_t>(x % m);
    std::uint64_t diff = (r % m + m - cur) % m;
    std::uint64_t k = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(diff) * mod_inverse(static_cast<std::uint64_t>(modulus % m), m) % m);
    x += modulus * k;
    modulus *= m;
  }
  return static_cast<std::uint64_t>(x);
}

}  // namespace modcsp
