#include "pchar/arith.hpp"

#include "pchar/errors.hpp"

namespace pchar {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % d == 0) return n == d;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = modp::pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = modp::mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        unsigned k = 0;
        while (n % d == 0) {
            n /= d;
            ++k;
        }
        out.emplace_back(d, k);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::optional<std::uint64_t> prime_power_base(std::uint64_t n) {
    if (n < 2) return std::nullopt;
    auto f = factorize(n);
    if (f.size() != 1) return std::nullopt;
    return f.front().first;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t phi = n;
    for (auto [p, k] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(r, base, &r)) return std::nullopt;
    }
    return r;
}

namespace modp {

std::uint64_t pow(std::uint64_t a, std::uint64_t k, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    a %= q;
    while (k > 0) {
        if (k & 1) r = mul(r, a, q);
        a = mul(a, a, q);
        k >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t q) {
    a %= q;
    if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q));
    return pow(a, q - 2, q);
}

std::uint64_t primitive_root(std::uint64_t q) {
    if (q == 2) return 1;
    auto f = factorize(q - 1);
    for (std::uint64_t g = 2; g < q; ++g) {
        bool ok = true;
        for (auto [r, k] : f) {
            if (pow(g, (q - 1) / r, q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw InternalError("no primitive root modulo " + std::to_string(q));
}

std::uint64_t prime_one_mod(std::uint64_t e, std::uint64_t lower) {
    std::uint64_t q = lower / e * e + 1;
    if (q <= lower) q += e;
    while (!is_prime(q)) q += e;
    return q;
}

}  // namespace modp

}  // namespace pchar
