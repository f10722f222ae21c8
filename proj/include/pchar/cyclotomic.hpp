#pragma once

// Exact arithmetic in Q(zeta_e).
//
// A value is stored as a polynomial in zeta = zeta_e reduced modulo the e-th
// cyclotomic polynomial, so the coefficient vector has length phi(e) and is a
// canonical form: two values of the same conductor are equal iff their
// vectors are. For prime e = p the basis is 1, zeta, ..., zeta^(p-2) and
// zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)).

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace pchar {

using Rational = mpq_class;
using Integer = mpz_class;

class Cyclotomic {
public:
    /// Zero in conductor 1.
    Cyclotomic();
    /// The rational r viewed in Q(zeta_e).
    Cyclotomic(const Rational& r, std::uint32_t conductor = 1);
    Cyclotomic(long r, std::uint32_t conductor = 1) : Cyclotomic(Rational(r), conductor) {}

    /// zeta_e^k, k taken mod e.
    static Cyclotomic root(std::uint32_t e, std::int64_t k);
    /// sum_k coeffs[k] zeta_e^k for an arbitrary-length coefficient list (reduced mod x^e - 1 first).
    static Cyclotomic from_powers(std::uint32_t e, std::span<const Rational> coeffs);
    /// sum_j counts[j] zeta_e^j with integer counts.
    static Cyclotomic from_counts(std::uint32_t e, std::span<const std::int64_t> counts);

    std::uint32_t conductor() const { return e_; }
    /// Canonical coefficients, length phi(e).
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    std::optional<Rational> as_rational() const;
    std::optional<Integer> as_integer() const;

    /// Same value in Q(zeta_target); e must divide target.
    Cyclotomic embed(std::uint32_t target) const;
    /// Same value in Q(zeta_target) if it lies in that field.
    std::optional<Cyclotomic> descend(std::uint32_t target) const;
    /// Galois automorphism zeta -> zeta^t, gcd(t, e) = 1.
    Cyclotomic galois(std::int64_t t) const;
    /// zeta -> zeta^-1, which is complex conjugation.
    Cyclotomic conj() const { return galois(-1); }
    Cyclotomic inverse() const;
    /// Field norm down to Q.
    Rational norm() const;

    std::complex<double> approx() const;
    std::string to_string() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// Lexicographic order on the canonical coefficient vector, conductor first.
    friend bool canonical_less(const Cyclotomic& a, const Cyclotomic& b);

private:
    Cyclotomic(std::uint32_t e, std::vector<Rational> reduced) : e_(e), c_(std::move(reduced)) {}
    /// Reduces a length-e vector (exponents mod e) into canonical form.
    static Cyclotomic reduce(std::uint32_t e, std::vector<Rational> full);

    std::uint32_t e_;
    std::vector<Rational> c_;
};

/// Coefficients of the e-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint32_t e);

/// Brings a and b to their lcm conductor.
std::pair<Cyclotomic, Cyclotomic> common_conductor(const Cyclotomic& a, const Cyclotomic& b);

/// Evaluates sum_{i in support} coeffs_i zeta_p^i exactly and reports whether
/// it is zero. `support` must be a proper subset of {0..p-1}; any p-1 of the
/// p-th roots of unity are linearly independent, so the answer must coincide
/// with "all coeffs are zero".
bool proper_support_root_sum_is_zero(std::uint64_t p, std::span<const std::uint64_t> support,
                                     std::span<const std::int64_t> coeffs);

}  // namespace pchar
