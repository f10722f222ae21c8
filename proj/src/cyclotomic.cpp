#include "pchar/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <numbers>
#include <sstream>

#include "pchar/arith.hpp"
#include "pchar/errors.hpp"

namespace pchar {

namespace {

std::vector<std::int64_t> compute_cyclotomic(std::uint32_t e) {
    // x^e - 1 divided by every Phi_d, d | e, d < e.
    std::vector<std::int64_t> num(e + 1, 0);
    num[0] = -1;
    num[e] = 1;
    for (std::uint32_t d = 1; d < e; ++d) {
        if (e % d != 0) continue;
        const auto& den = cyclotomic_polynomial(d);  // monic
        const std::size_t dd = den.size() - 1;
        std::vector<std::int64_t> quot(num.size() - dd, 0);
        for (std::size_t k = num.size(); k-- > dd;) {
            std::int64_t t = num[k];
            quot[k - dd] = t;
            if (t == 0) continue;
            for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= t * den[i];
        }
        num = std::move(quot);
    }
    return num;
}

struct PolyCache {
    std::mutex mu;
    std::map<std::uint32_t, std::vector<std::int64_t>> polys;
};

PolyCache& poly_cache() {
    static PolyCache cache;
    return cache;
}

std::uint32_t phi_of(std::uint32_t e) { return static_cast<std::uint32_t>(cyclotomic_polynomial(e).size() - 1); }

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint32_t e) {
    if (e == 0) throw InvalidArgument("conductor must be positive");
    auto& cache = poly_cache();
    {
        std::lock_guard lock(cache.mu);
        if (auto it = cache.polys.find(e); it != cache.polys.end()) return it->second;
    }
    std::vector<std::int64_t> poly = e == 1 ? std::vector<std::int64_t>{-1, 1} : compute_cyclotomic(e);
    std::lock_guard lock(cache.mu);
    return cache.polys.emplace(e, std::move(poly)).first->second;
}

Cyclotomic::Cyclotomic() : e_(1), c_(1) {}

Cyclotomic::Cyclotomic(const Rational& r, std::uint32_t conductor) : e_(conductor) {
    c_.assign(phi_of(conductor), Rational(0));
    c_[0] = r;
    c_[0].canonicalize();
}

Cyclotomic Cyclotomic::reduce(std::uint32_t e, std::vector<Rational> full) {
    const auto& phi_poly = cyclotomic_polynomial(e);
    const std::size_t phi = phi_poly.size() - 1;
    Rational t;
    for (std::size_t k = full.size(); k-- > phi;) {
        if (sgn(full[k]) == 0) continue;
        t = full[k];
        for (std::size_t i = 0; i < phi; ++i) {
            if (phi_poly[i] != 0) full[k - phi + i] -= t * phi_poly[i];
        }
        full[k] = 0;
    }
    full.resize(phi);
    return Cyclotomic(e, std::move(full));
}

Cyclotomic Cyclotomic::root(std::uint32_t e, std::int64_t k) {
    if (e == 0) throw InvalidArgument("conductor must be positive");
    std::vector<Rational> full(e, Rational(0));
    std::int64_t r = k % static_cast<std::int64_t>(e);
    if (r < 0) r += e;
    full[static_cast<std::size_t>(r)] = 1;
    return reduce(e, std::move(full));
}

Cyclotomic Cyclotomic::from_powers(std::uint32_t e, std::span<const Rational> coeffs) {
    if (e == 0) throw InvalidArgument("conductor must be positive");
    std::vector<Rational> full(e, Rational(0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        Rational c = coeffs[k];
        c.canonicalize();
        full[k % e] += c;
    }
    return reduce(e, std::move(full));
}

Cyclotomic Cyclotomic::from_counts(std::uint32_t e, std::span<const std::int64_t> counts) {
    if (e == 0) throw InvalidArgument("conductor must be positive");
    std::vector<Rational> full(e, Rational(0));
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] != 0) full[k % e] += Rational(static_cast<long>(counts[k]));
    }
    return reduce(e, std::move(full));
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_) {
        if (sgn(x) != 0) return false;
    }
    return true;
}

std::optional<Rational> Cyclotomic::as_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (sgn(c_[i]) != 0) return std::nullopt;
    }
    return c_[0];
}

std::optional<Integer> Cyclotomic::as_integer() const {
    auto r = as_rational();
    if (!r || r->get_den() != 1) return std::nullopt;
    return Integer(r->get_num());
}

Cyclotomic Cyclotomic::embed(std::uint32_t target) const {
    if (target == 0 || target % e_ != 0) {
        throw InvalidArgument("cannot embed conductor " + std::to_string(e_) + " into " + std::to_string(target));
    }
    if (target == e_) return *this;
    const std::uint32_t f = target / e_;
    std::vector<Rational> full(target, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) full[i * f] = c_[i];
    return reduce(target, std::move(full));
}

std::optional<Cyclotomic> Cyclotomic::descend(std::uint32_t target) const {
    if (target == 0) throw InvalidArgument("conductor must be positive");
    if (target % e_ == 0) return embed(target);
    if (auto r = as_rational()) return Cyclotomic(*r, target);
    const std::uint32_t l = std::lcm(e_, target);
    const std::vector<Rational> x = embed(l).coeffs();
    const std::size_t rows = x.size();
    const std::size_t cols = euler_phi(target);
    // columns are zeta_target^j seen in Q(zeta_l), last column the value
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
    for (std::size_t j = 0; j < cols; ++j) {
        const auto b = root(target, static_cast<std::int64_t>(j)).embed(l).coeffs();
        for (std::size_t i = 0; i < rows; ++i) m[i][j] = b[i];
    }
    for (std::size_t i = 0; i < rows; ++i) m[i][cols] = x[i];
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        const Rational inv = 1 / m[r][c];
        for (auto& v : m[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t k = c; k <= cols; ++k) m[i][k] -= f * m[r][k];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (sgn(m[i][cols]) != 0) return std::nullopt;
    std::vector<Rational> out(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) out[pivot_col[i]] = m[i][cols];
    return Cyclotomic(target, std::move(out));
}

Cyclotomic Cyclotomic::galois(std::int64_t t) const {
    const auto e = static_cast<std::int64_t>(e_);
    std::int64_t tt = ((t % e) + e) % e;
    if (std::gcd(tt, e) != 1 && e_ != 1) {
        throw InvalidArgument("galois exponent " + std::to_string(t) + " not coprime to " + std::to_string(e_));
    }
    std::vector<Rational> full(e_, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) != 0) full[static_cast<std::size_t>((static_cast<std::int64_t>(i) * tt) % e)] += c_[i];
    }
    return reduce(e_, std::move(full));
}

Rational Cyclotomic::norm() const {
    Cyclotomic prod(Rational(1), e_);
    for (std::uint32_t t = 1; t <= e_; ++t) {
        if (std::gcd(t, e_) == 1) prod *= galois(t);
    }
    auto r = prod.as_rational();
    if (!r) throw InternalError("norm is not rational");
    return *r;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic");
    Cyclotomic others(Rational(1), e_);
    for (std::uint32_t t = 2; t <= e_; ++t) {
        if (std::gcd(t, e_) == 1 && t % e_ != 1) others *= galois(t);
    }
    auto n = (*this * others).as_rational();
    if (!n) throw InternalError("norm is not rational");
    Rational inv = 1 / *n;
    for (auto& x : others.c_) x *= inv;
    return others;
}

std::complex<double> Cyclotomic::approx() const {
    std::complex<double> z = 0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        double ang = 2 * std::numbers::pi * static_cast<double>(i) / e_;
        z += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

std::string Cyclotomic::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        Rational a = abs(c_[i]);
        if (first) {
            if (sgn(c_[i]) < 0) out << "-";
        } else {
            out << (sgn(c_[i]) < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            out << a;
        } else {
            if (a != 1) out << a << "*";
            out << "z" << e_;
            if (i > 1) out << "^" << i;
        }
    }
    return first ? "0" : out.str();
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.e_ != e_) {
        auto [a, b] = common_conductor(*this, o);
        *this = a;
        return *this += b;
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    if (o.e_ != e_) {
        auto [a, b] = common_conductor(*this, o);
        *this = a;
        return *this *= b;
    }
    std::vector<std::size_t> nz_a, nz_b;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) != 0) nz_a.push_back(i);
        if (sgn(o.c_[i]) != 0) nz_b.push_back(i);
    }
    std::vector<Rational> full(e_, Rational(0));
    for (std::size_t i : nz_a) {
        for (std::size_t j : nz_b) full[(i + j) % e_] += c_[i] * o.c_[j];
    }
    *this = reduce(e_, std::move(full));
    return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.e_ == b.e_) return a.c_ == b.c_;
    auto [x, y] = common_conductor(a, b);
    return x.c_ == y.c_;
}

bool canonical_less(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.e_ != b.e_) return a.e_ < b.e_;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        int c = cmp(a.c_[i], b.c_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::pair<Cyclotomic, Cyclotomic> common_conductor(const Cyclotomic& a, const Cyclotomic& b) {
    std::uint32_t l = std::lcm(a.conductor(), b.conductor());
    return {a.embed(l), b.embed(l)};
}

bool proper_support_root_sum_is_zero(std::uint64_t p, std::span<const std::uint64_t> support,
                                     std::span<const std::int64_t> coeffs) {
    if (!is_prime(p)) throw InvalidArgument("conductor must be prime");
    if (support.size() != coeffs.size()) throw InvalidArgument("support and coefficients differ in length");
    if (support.size() >= p) throw InvalidArgument("support must be a proper subset of {0..p-1}");
    std::vector<char> seen(p, 0);
    std::vector<std::int64_t> counts(p, 0);
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] >= p || seen[support[i]]) throw InvalidArgument("support must be a set inside {0..p-1}");
        seen[support[i]] = 1;
        counts[support[i]] = coeffs[i];
    }
    return Cyclotomic::from_counts(static_cast<std::uint32_t>(p), counts).is_zero();
}

}  // namespace pchar
