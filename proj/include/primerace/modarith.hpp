#pragma once

#include <cstdint>
#include <optional>

namespace primerace {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Kronecker symbol (a/n) for n >= 1.
int kronecker(std::int64_t a, std::uint64_t n);

/// Square root of a modulo an odd prime p (Tonelli-Shanks), if a is a square.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

/// Deterministic Miller-Rabin for 64-bit n.
bool is_prime(std::uint64_t n);

/// Floor square root for 64-bit values.
std::uint64_t isqrt(std::uint64_t n);

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Euler's totient by trial division.
std::uint64_t totient(std::uint64_t n);

}  // namespace primerace
