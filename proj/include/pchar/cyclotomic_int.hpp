#pragma once

// Algebraic integers of Q(zeta_e) as flat int64 coefficient arrays in the
// same canonical basis Cyclotomic uses. Character tables store their values
// this way; Cyclotomic stays the exact general-purpose type.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pchar/cyclotomic.hpp"

namespace pchar {

class IntCyclotomicRing {
public:
    explicit IntCyclotomicRing(std::uint32_t e);

    std::uint32_t conductor() const { return e_; }
    std::uint32_t phi() const { return phi_; }

    /// Canonical coefficients of zeta^k.
    std::span<const std::int64_t> power(std::int64_t k) const;

    /// out = sum_j counts[j] zeta^j; counts has length e.
    void from_counts(std::span<const std::int64_t> counts, std::int64_t* out) const;
    /// out = a * b. Throws InternalError on int64 overflow.
    void mul(const std::int64_t* a, const std::int64_t* b, std::int64_t* out) const;
    /// out = complex conjugate of a.
    void conj(const std::int64_t* a, std::int64_t* out) const;
    /// out = galois image zeta -> zeta^t.
    void galois(const std::int64_t* a, std::int64_t t, std::int64_t* out) const;

    Cyclotomic to_cyclotomic(const std::int64_t* a) const;
    /// Canonical integer coefficients of c in this ring; nullopt when c has a
    /// non-integral coefficient or its conductor does not divide e.
    std::optional<std::vector<std::int64_t>> from_cyclotomic(const Cyclotomic& c) const;

    /// Largest absolute canonical coefficient that reducing a length-(2 phi - 1)
    /// product can multiply a single convolution coefficient into, summed per
    /// output slot. Used for coefficient bounds.
    std::int64_t reduction_norm() const { return reduction_norm_; }

private:
    std::uint32_t e_, phi_;
    std::vector<std::int64_t> powers_;  // e x phi
    std::int64_t reduction_norm_ = 1;
};

}  // namespace pchar
