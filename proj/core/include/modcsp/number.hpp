#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace modcsp {

struct PrimePower {
  std::uint32_t prime;
  std::uint32_t exponent;
  std::uint64_t value() const;
};

bool is_prime(std::uint64_t n);

// Trial division; moduli here are small constants.
std::vector<PrimePower> factorize(std::uint64_t n);

bool is_prime_power(std::uint64_t n);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

// Inverse of a modulo m; a and m must be coprime.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

std::uint64_t mod_reduce(std::int64_t value, std::uint64_t m);

// Solves x = r_i (mod m_i) for pairwise coprime m_i; result in [0, prod m_i).
std::uint64_t crt(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& residues_and_moduli);

}  // namespace modcsp
