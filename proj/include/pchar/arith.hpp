#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pchar {

bool is_prime(std::uint64_t n);

/// Prime factorization as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// The prime p when n = p^k with k >= 1.
std::optional<std::uint64_t> prime_power_base(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

/// Integer power with overflow detection.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

namespace modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t k, std::uint64_t q);

/// Inverse modulo a prime q; a must be nonzero mod q.
std::uint64_t inv(std::uint64_t a, std::uint64_t q);

/// Smallest generator of the multiplicative group of F_q.
std::uint64_t primitive_root(std::uint64_t q);

/// Smallest prime q with q = 1 (mod e) and q > lower.
std::uint64_t prime_one_mod(std::uint64_t e, std::uint64_t lower);

}  // namespace modp

}  // namespace pchar
