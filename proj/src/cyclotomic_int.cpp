#include "pchar/cyclotomic_int.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "pchar/errors.hpp"

namespace pchar {

IntCyclotomicRing::IntCyclotomicRing(std::uint32_t e) : e_(e) {
    const auto& poly = cyclotomic_polynomial(e);
    phi_ = static_cast<std::uint32_t>(poly.size() - 1);
    powers_.assign(static_cast<std::size_t>(e) * phi_, 0);
    std::vector<std::int64_t> cur(phi_, 0), next(phi_);
    cur[0] = 1;
    if (phi_ == 0) throw InternalError("empty cyclotomic basis");
    for (std::uint32_t k = 0; k < e; ++k) {
        std::copy(cur.begin(), cur.end(), powers_.begin() + static_cast<std::ptrdiff_t>(k) * phi_);
        // multiply by zeta: shift and fold zeta^phi = -sum poly[i] zeta^i
        const std::int64_t top = cur[phi_ - 1];
        next[0] = 0;
        for (std::uint32_t i = 1; i < phi_; ++i) next[i] = cur[i - 1];
        for (std::uint32_t i = 0; i < phi_; ++i) next[i] -= top * poly[i];
        std::swap(cur, next);
    }
    const std::uint32_t span = 2 * phi_ - 1;
    for (std::uint32_t out = 0; out < phi_; ++out) {
        std::int64_t s = 0;
        for (std::uint32_t k = 0; k < span; ++k) s += std::llabs(power(k)[out]);
        reduction_norm_ = std::max<std::int64_t>(reduction_norm_, s);
    }
}

std::span<const std::int64_t> IntCyclotomicRing::power(std::int64_t k) const {
    const auto e = static_cast<std::int64_t>(e_);
    std::int64_t r = ((k % e) + e) % e;
    return {powers_.data() + r * phi_, phi_};
}

void IntCyclotomicRing::from_counts(std::span<const std::int64_t> counts, std::int64_t* out) const {
    std::fill(out, out + phi_, 0);
    for (std::size_t j = 0; j < counts.size(); ++j) {
        if (counts[j] == 0) continue;
        auto pw = power(static_cast<std::int64_t>(j));
        for (std::uint32_t i = 0; i < phi_; ++i) out[i] += counts[j] * pw[i];
    }
}

void IntCyclotomicRing::mul(const std::int64_t* a, const std::int64_t* b, std::int64_t* out) const {
    std::vector<__int128> conv(2 * phi_ - 1, 0);
    for (std::uint32_t i = 0; i < phi_; ++i) {
        if (a[i] == 0) continue;
        for (std::uint32_t j = 0; j < phi_; ++j) {
            if (b[j] != 0) conv[i + j] += static_cast<__int128>(a[i]) * b[j];
        }
    }
    std::vector<__int128> acc(conv.begin(), conv.begin() + phi_);
    for (std::uint32_t k = phi_; k < conv.size(); ++k) {
        if (conv[k] == 0) continue;
        auto pw = power(k);
        for (std::uint32_t i = 0; i < phi_; ++i) acc[i] += conv[k] * pw[i];
    }
    for (std::uint32_t i = 0; i < phi_; ++i) {
        if (acc[i] > std::numeric_limits<std::int64_t>::max() || acc[i] < std::numeric_limits<std::int64_t>::min()) {
            throw InternalError("cyclotomic integer product overflows int64");
        }
        out[i] = static_cast<std::int64_t>(acc[i]);
    }
}

void IntCyclotomicRing::galois(const std::int64_t* a, std::int64_t t, std::int64_t* out) const {
    const auto e = static_cast<std::int64_t>(e_);
    std::vector<std::int64_t> counts(e_, 0);
    for (std::uint32_t i = 0; i < phi_; ++i) {
        if (a[i] != 0) counts[static_cast<std::size_t>((((i * t) % e) + e) % e)] += a[i];
    }
    from_counts(counts, out);
}

void IntCyclotomicRing::conj(const std::int64_t* a, std::int64_t* out) const { galois(a, -1, out); }

Cyclotomic IntCyclotomicRing::to_cyclotomic(const std::int64_t* a) const {
    std::vector<Rational> c(phi_);
    for (std::uint32_t i = 0; i < phi_; ++i) c[i] = Rational(static_cast<long>(a[i]));
    return Cyclotomic::from_powers(e_, c);
}

std::optional<std::vector<std::int64_t>> IntCyclotomicRing::from_cyclotomic(const Cyclotomic& c) const {
    std::optional<Cyclotomic> d = c.descend(e_);
    if (!d) return std::nullopt;
    const Cyclotomic& x = *d;
    std::vector<std::int64_t> out(phi_);
    for (std::uint32_t i = 0; i < phi_; ++i) {
        const Rational& v = x.coeffs()[i];
        if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return std::nullopt;
        out[i] = v.get_num().get_si();
    }
    return out;
}

}  // namespace pchar
