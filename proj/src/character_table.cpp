#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>

#include "pchar/arith.hpp"
#include "pchar/characters.hpp"
#include "pchar/errors.hpp"
#include "pchar/linalg_mod.hpp"

namespace pchar {

namespace {

using Clock = std::chrono::steady_clock;

void check_deadline(const TableOptions& o) {
    if (o.deadline && Clock::now() > *o.deadline) {
        throw BudgetExceeded("character table computation exceeded its time budget");
    }
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Combinations sum_j c_j M_j of the class matrices, (M_j)_{l,k} = #{x in C_j : x^-1 z_k in C_l}.
class ClassMatrixSource {
public:
    explicit ClassMatrixSource(const FiniteGroup& g) : g_(g), cd_(g.classes()) {
        n_ = g.order();
        r_ = cd_.num_classes();
        inv_.resize(n_);
        for (Elem x = 0; x < n_; ++x) inv_[x] = g.inverse(x);
        if (r_ * n_ <= kCacheLimit) {
            cache_.resize(r_ * n_);
            for (std::size_t k = 0; k < r_; ++k) {
                const Elem z = cd_.reps[k];
                for (Elem x = 0; x < n_; ++x) cache_[k * n_ + x] = cd_.class_of[g.mul(inv_[x], z)];
            }
        }
    }

    fq::Matrix combine(const std::vector<std::uint64_t>& c, std::uint64_t q) const {
        std::vector<std::uint64_t> cx(n_);
        for (Elem x = 0; x < n_; ++x) cx[x] = c[cd_.class_of[x]];
        fq::Matrix m(r_, r_);
        std::vector<std::uint64_t> col(r_);
        for (std::size_t k = 0; k < r_; ++k) {
            std::fill(col.begin(), col.end(), 0);
            if (!cache_.empty()) {
                const std::uint32_t* row = cache_.data() + k * n_;
                for (Elem x = 0; x < n_; ++x) col[row[x]] += cx[x];
            } else {
                const Elem z = cd_.reps[k];
                for (Elem x = 0; x < n_; ++x) col[cd_.class_of[g_.mul(inv_[x], z)]] += cx[x];
            }
            for (std::size_t l = 0; l < r_; ++l) m(l, k) = col[l] % q;
        }
        return m;
    }

private:
    static constexpr std::size_t kCacheLimit = 60'000'000;
    const FiniteGroup& g_;
    const ConjugacyData& cd_;
    std::size_t n_ = 0, r_ = 0;
    std::vector<Elem> inv_;
    std::vector<std::uint32_t> cache_;
};

// Common eigenvectors of the class matrices over F_q, one per irreducible,
// normalized to 1 at the identity class. Empty when the round budget runs out.
std::vector<fq::Vec> split_class_algebra(const ClassMatrixSource& src, std::size_t r, std::uint64_t q,
                                         std::uint64_t seed, const TableOptions& opts, unsigned& rounds) {
    std::vector<fq::Vec> done;
    if (r == 1) return {fq::Vec{1}};
    fq::Space full{fq::Matrix::identity(r), {}};
    for (std::size_t i = 0; i < r; ++i) full.pivots.push_back(i);
    std::vector<fq::Space> active{std::move(full)};
    std::mt19937_64 rng(seed);
    rounds = 0;
    while (!active.empty()) {
        if (rounds == opts.max_rounds) return {};
        ++rounds;
        std::vector<std::uint64_t> c(r);
        for (auto& x : c) x = rng() % q;
        const fq::Matrix m = src.combine(c, q);
        check_deadline(opts);
        std::vector<fq::Space> next;
        for (auto& v : active) {
            const std::size_t d = v.dim();
            const fq::Matrix restricted = d == r ? m : fq::restrict_to(m, v, q);
            auto spaces = fq::eigenspaces(restricted, q);
            if (spaces.size() == 1) {
                next.push_back(std::move(v));
                continue;
            }
            for (const auto& basis : spaces) {
                fq::Matrix rows(basis.size(), r);
                for (std::size_t s = 0; s < basis.size(); ++s) {
                    std::uint64_t* out = rows.row(s);
                    for (std::size_t b = 0; b < d; ++b) {
                        const std::uint64_t u = basis[s][b];
                        if (u == 0) continue;
                        const std::uint64_t* src_row = v.basis.row(b);
                        for (std::size_t j = 0; j < r; ++j) out[j] = (out[j] + u * src_row[j]) % q;
                    }
                }
                fq::Space sub = fq::row_space(std::move(rows), q);
                if (sub.dim() == 1) {
                    done.emplace_back(sub.basis.row(0), sub.basis.row(0) + r);
                } else {
                    next.push_back(std::move(sub));
                }
            }
            check_deadline(opts);
        }
        active = std::move(next);
    }
    if (done.size() != r) throw InternalError("class algebra split into the wrong number of characters");
    return done;
}

std::uint64_t mod_of(std::int64_t v, std::uint64_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

std::uint64_t eval_mod(const std::int64_t* c, std::uint32_t phi, const std::vector<std::uint64_t>& pows,
                       std::uint64_t t, std::uint64_t p) {
    const std::size_t e = pows.size();
    unsigned __int128 acc = 0;
    for (std::uint32_t j = 0; j < phi; ++j) {
        if (c[j] != 0) acc += static_cast<unsigned __int128>(mod_of(c[j], p)) * pows[(j * t) % e];
    }
    return static_cast<std::uint64_t>(acc % p);
}

// Lexicographic comparison of two rows' canonical coefficients.
bool row_less(const std::int64_t* a, const std::int64_t* b, std::size_t len) {
    return std::lexicographical_compare(a, a + len, b, b + len);
}

}  // namespace

struct TableBuilder {
    static CharacterTable build(const FiniteGroup& g, const TableOptions& opts);
    static void finish(CharacterTable::Data& d);
    static std::uint64_t coefficient_bound(const CharacterTable::Data& d);
};

CharacterTable CharacterTable::compute(const FiniteGroup& g, const TableOptions& opts) {
    return TableBuilder::build(g, opts);
}

CharacterTable TableBuilder::build(const FiniteGroup& g, const TableOptions& opts) {
    const auto& cd = g.classes();
    const std::size_t n = g.order();
    const std::size_t r = cd.num_classes();
    const auto e = static_cast<std::uint32_t>(g.exponent());

    std::uint64_t q = modp::prime_one_mod(e, 2 * isqrt(n));
    while (q * q <= 4 * n) q = modp::prime_one_mod(e, q);

    ClassMatrixSource src(g);
    std::vector<fq::Vec> vecs;
    unsigned rounds = 0;
    std::uint64_t seed = opts.seed;
    for (unsigned attempt = 0; attempt <= opts.retries; ++attempt, ++seed) {
        vecs = split_class_algebra(src, r, q, seed, opts, rounds);
        if (!vecs.empty()) break;
    }
    if (vecs.empty()) throw InternalError("class matrices failed to split within the round budget for every seed");

    auto data = std::make_shared<CharacterTable::Data>(g, IntCyclotomicRing(e));
    auto& d = *data;
    d.rows = r;
    d.stats = {q, seed, rounds};
    const std::uint32_t phi = d.ring.phi();

    d.power_classes.resize(r);
    for (std::size_t k = 0; k < r; ++k) {
        const std::uint64_t o = cd.rep_orders[k];
        auto& pc = d.power_classes[k];
        pc.resize(o);
        Elem x = g.identity();
        for (std::uint64_t l = 0; l < o; ++l) {
            pc[l] = cd.class_of[x];
            x = g.mul(x, cd.reps[k]);
        }
    }

    const std::uint64_t omega_q = modp::pow(modp::primitive_root(q), (q - 1) / e, q);
    std::vector<std::uint64_t> size_inv(r);
    for (std::size_t k = 0; k < r; ++k) size_inv[k] = modp::inv(cd.sizes[k] % q, q);
    const std::uint64_t root_bound = isqrt(n);

    std::vector<std::uint64_t> degrees(r);
    std::vector<std::int64_t> coeffs(r * r * phi);
    std::vector<std::uint64_t> xk(r);
    std::vector<std::int64_t> counts(e);
    for (std::size_t i = 0; i < r; ++i) {
        const fq::Vec& v = vecs[i];
        if (v[0] != 1) throw InternalError("class algebra eigenvector vanishes at the identity");
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < r; ++k) {
            s = (s + v[k] * v[cd.inverse_class[k]] % q * size_inv[k]) % q;
        }
        if (s == 0) throw InternalError("degree equation has no solution");
        const std::uint64_t target = (n % q) * modp::inv(s, q) % q;
        std::uint64_t deg = 0;
        for (std::uint64_t c = 1; c <= root_bound; ++c) {
            if (n % c == 0 && c * c % q == target) {
                deg = c;
                break;
            }
        }
        if (deg == 0) throw InternalError("no admissible character degree");
        degrees[i] = deg;
        for (std::size_t k = 0; k < r; ++k) xk[k] = v[k] * deg % q * size_inv[k] % q;

        for (std::size_t k = 0; k < r; ++k) {
            const std::uint64_t o = cd.rep_orders[k];
            const std::uint64_t z = modp::pow(omega_q, e / o, q);
            std::vector<std::uint64_t> zp(o);
            zp[0] = 1;
            for (std::uint64_t t = 1; t < o; ++t) zp[t] = zp[t - 1] * z % q;
            const std::uint64_t o_inv = modp::inv(o % q, q);
            std::fill(counts.begin(), counts.end(), 0);
            std::uint64_t total = 0;
            const auto& pc = d.power_classes[k];
            for (std::uint64_t j = 0; j < o; ++j) {
                std::uint64_t acc = 0;
                for (std::uint64_t l = 0; l < o; ++l) {
                    acc = (acc + xk[pc[l]] * zp[(o - (j * l) % o) % o]) % q;
                }
                const std::uint64_t mj = acc * o_inv % q;
                if (mj > deg) throw InternalError("eigenvalue multiplicity out of range while lifting values");
                counts[j * (e / o)] += static_cast<std::int64_t>(mj);
                total += mj;
            }
            if (total != deg) throw InternalError("eigenvalue multiplicities do not sum to the degree");
            d.ring.from_counts(counts, coeffs.data() + (i * r + k) * phi);
        }
        check_deadline(opts);
    }

    // Order rows: degree, trivial first, then canonical coefficients.
    const std::size_t row_len = r * phi;
    auto is_trivial = [&](std::size_t i) {
        if (degrees[i] != 1) return false;
        for (std::size_t k = 0; k < r; ++k) {
            const std::int64_t* c = coeffs.data() + (i * r + k) * phi;
            if (c[0] != 1 || std::any_of(c + 1, c + phi, [](std::int64_t x) { return x != 0; })) return false;
        }
        return true;
    };
    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::vector<char> trivial(r);
    for (std::size_t i = 0; i < r; ++i) trivial[i] = is_trivial(i);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (degrees[a] != degrees[b]) return degrees[a] < degrees[b];
        if (trivial[a] != trivial[b]) return trivial[a] > trivial[b];
        return row_less(coeffs.data() + a * row_len, coeffs.data() + b * row_len, row_len);
    });
    d.degrees.resize(r);
    d.coeffs.resize(r * row_len);
    for (std::size_t i = 0; i < r; ++i) {
        d.degrees[i] = degrees[order[i]];
        std::copy_n(coeffs.data() + order[i] * row_len, row_len, d.coeffs.data() + i * row_len);
    }
    finish(d);
    CharacterTable t(std::move(data));
    t.validate();
    return t;
}

std::uint64_t TableBuilder::coefficient_bound(const CharacterTable::Data& d) {
    std::int64_t b = 0;
    for (std::int64_t c : d.coeffs) b = std::max<std::int64_t>(b, std::llabs(c));
    // conj(zeta^j) = zeta^-j re-expanded in the canonical basis
    std::int64_t gamma = 0;
    const std::uint32_t phi = d.ring.phi();
    for (std::uint32_t out = 0; out < phi; ++out) {
        std::int64_t s = 0;
        for (std::uint32_t j = 0; j < phi; ++j) s += std::llabs(d.ring.power(-static_cast<std::int64_t>(j))[out]);
        gamma = std::max<std::int64_t>(gamma, s);
    }
    const auto n = static_cast<unsigned __int128>(d.group.order());
    const auto rows = static_cast<unsigned __int128>(d.rows);
    unsigned __int128 per_term = static_cast<unsigned __int128>(phi) * b * b * gamma * d.ring.reduction_norm();
    unsigned __int128 bound = std::max(n, rows) * per_term + n;
    if (bound > (static_cast<unsigned __int128>(1) << 60)) {
        throw ResourceLimit("character values too large for single-prime validation");
    }
    return static_cast<std::uint64_t>(bound);
}

void TableBuilder::finish(CharacterTable::Data& d) {
    const std::size_t r = d.rows;
    const std::uint32_t e = d.ring.conductor();
    const std::uint32_t phi = d.ring.phi();
    auto& m = d.modular;
    const std::uint64_t bound = coefficient_bound(d);
    m.prime = modp::prime_one_mod(e, std::max<std::uint64_t>(std::uint64_t{1} << 30, 4 * bound));
    m.omega = modp::pow(modp::primitive_root(m.prime), (m.prime - 1) / e, m.prime);
    m.omega_pows.resize(e);
    m.omega_pows[0] = 1;
    for (std::uint32_t j = 1; j < e; ++j) m.omega_pows[j] = modp::mul(m.omega_pows[j - 1], m.omega, m.prime);
    m.stride = r;
    m.values.resize(r * r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            m.values[i * r + k] = eval_mod(d.coeffs.data() + (i * r + k) * phi, phi, m.omega_pows, 1, m.prime);
        }
    }
    d.by_image.clear();
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::uint64_t> img(m.values.begin() + i * r, m.values.begin() + (i + 1) * r);
        if (!d.by_image.emplace(std::move(img), i).second) throw InternalError("two rows share a modular image");
    }
    const auto& cd = d.group.classes();
    d.conj_row.resize(r);
    d.faithful.assign(r, 1);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::uint64_t> img(r);
        for (std::size_t k = 0; k < r; ++k) img[k] = m.at(i, cd.inverse_class[k]);
        auto it = d.by_image.find(img);
        if (it == d.by_image.end()) throw InternalError("complex conjugate of a row is not a row");
        d.conj_row[i] = it->second;
        for (std::size_t k = 1; k < r; ++k) {
            const std::int64_t* c = d.coeffs.data() + (i * r + k) * phi;
            if (c[0] == static_cast<std::int64_t>(d.degrees[i]) &&
                std::all_of(c + 1, c + phi, [](std::int64_t x) { return x == 0; })) {
                d.faithful[i] = 0;
                break;
            }
        }
    }
}

void CharacterTable::validate() const {
    const auto& d = *data_;
    const std::size_t r = d.rows;
    const std::uint64_t n = d.group.order();
    const auto& cd = d.group.classes();
    const auto& m = d.modular;
    const std::uint64_t p = m.prime;
    const std::uint32_t e = d.ring.conductor();
    const std::uint32_t phi = d.ring.phi();

    if (r != cd.num_classes()) throw InternalError("row count differs from class count");
    unsigned __int128 sq = 0;
    for (auto deg : d.degrees) sq += static_cast<unsigned __int128>(deg) * deg;
    if (sq != n) throw InternalError("sum of squared degrees differs from the group order");
    if (2 * TableBuilder::coefficient_bound(d) >= p) throw InternalError("validation modulus too small");

    // Galois images must be the power-map images; this lets a single embedding
    // certify identities for all of them.
    for (std::uint64_t t = 2; t < e; ++t) {
        if (std::gcd<std::uint64_t>(t, e) != 1) continue;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t k = 0; k < r; ++k) {
                const std::uint64_t lhs = eval_mod(coeffs(i, k), phi, m.omega_pows, t, p);
                if (lhs != m.at(i, power_class(k, t))) {
                    throw InternalError("table is not closed under the Galois action (row " + std::to_string(i) +
                                        ", class " + std::to_string(k) + ")");
                }
            }
        }
    }

    std::vector<std::uint64_t> n_over(r);
    for (std::size_t k = 0; k < r; ++k) n_over[k] = n / cd.sizes[k];

    // Row orthogonality: sum_k |C_k| Y(i,k) Y(j,k^-1) = n delta_ij.
    std::vector<std::uint64_t> left(r * r), right(r * r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            left[i * r + k] = modp::mul(m.at(i, k), cd.sizes[k] % p, p);
            right[i * r + k] = m.at(i, cd.inverse_class[k]);
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < r; ++j) {
            unsigned __int128 acc = 0;
            const std::uint64_t* a = left.data() + i * r;
            const std::uint64_t* b = right.data() + j * r;
            for (std::size_t k = 0; k < r; ++k) acc += static_cast<unsigned __int128>(a[k]) * b[k];
            const std::uint64_t want = i == j ? n % p : 0;
            if (static_cast<std::uint64_t>(acc % p) != want) {
                throw InternalError("row orthogonality fails for rows " + std::to_string(i) + ", " +
                                    std::to_string(j));
            }
        }
    }
    // Column orthogonality: sum_i Y(i,k) Y(i,l^-1) = delta_kl n / |C_k|.
    std::vector<std::uint64_t> cols(r * r), cols_inv(r * r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            cols[k * r + i] = m.at(i, k);
            cols_inv[k * r + i] = m.at(i, cd.inverse_class[k]);
        }
    }
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t l = 0; l < r; ++l) {
            unsigned __int128 acc = 0;
            const std::uint64_t* a = cols.data() + k * r;
            const std::uint64_t* b = cols_inv.data() + l * r;
            for (std::size_t i = 0; i < r; ++i) acc += static_cast<unsigned __int128>(a[i]) * b[i];
            const std::uint64_t want = k == l ? n_over[k] % p : 0;
            if (static_cast<std::uint64_t>(acc % p) != want) {
                throw InternalError("column orthogonality fails for classes " + std::to_string(k) + ", " +
                                    std::to_string(l));
            }
        }
    }
}

Character CharacterTable::row(std::size_t i) const {
    if (i >= size()) throw InvalidArgument("row index out of range");
    std::vector<Cyclotomic> v;
    v.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) v.push_back(value(i, k));
    return Character(group(), std::move(v));
}

std::vector<std::size_t> CharacterTable::faithful_rows() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (is_faithful(i)) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> CharacterTable::linear_rows() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (is_linear(i)) out.push_back(i);
    }
    return out;
}

std::optional<std::size_t> CharacterTable::find_row_by_image(const std::vector<std::uint64_t>& image) const {
    auto it = data_->by_image.find(image);
    if (it == data_->by_image.end()) return std::nullopt;
    return it->second;
}

std::optional<std::vector<std::uint64_t>> CharacterTable::image_of(const ClassFunction& f) const {
    if (!f.group().same_as(group())) throw InvalidArgument("class function of a different group");
    std::vector<std::uint64_t> img(size());
    for (std::size_t k = 0; k < size(); ++k) {
        auto c = ring().from_cyclotomic(f[k]);
        if (!c) return std::nullopt;
        img[k] = eval_mod(c->data(), ring().phi(), modular().omega_pows, 1, modular().prime);
    }
    return img;
}

std::optional<std::size_t> CharacterTable::find_row(const ClassFunction& f) const {
    auto img = image_of(f);
    if (!img) return std::nullopt;
    auto i = find_row_by_image(*img);
    if (!i) return std::nullopt;
    for (std::size_t k = 0; k < size(); ++k) {
        if (value(*i, k) != f[k]) return std::nullopt;
    }
    return i;
}

// ---------------------------------------------------------------- decomposition

std::uint64_t Decomposition::multiplicity(std::size_t row) const {
    for (const auto& [i, m] : parts) {
        if (i == row) return m;
    }
    return 0;
}

namespace {

// f given by exact integer coefficients (r x phi) and its modular image.
Decomposition decompose_integral(const CharacterTable& t, const std::vector<std::int64_t>& f,
                                 const std::vector<std::uint64_t>& image) {
    const std::size_t r = t.size();
    const std::uint32_t phi = t.ring().phi();
    const auto& cd = t.group().classes();
    const auto& m = t.modular();
    const std::uint64_t p = m.prime;
    const std::int64_t f1 = f[0];
    if (f1 < 0 || std::any_of(f.begin() + 1, f.begin() + phi, [](std::int64_t x) { return x != 0; })) {
        throw NotACharacter("identity value is not a nonnegative integer");
    }
    std::vector<std::uint64_t> weighted(r);
    for (std::size_t k = 0; k < r; ++k) weighted[k] = modp::mul(image[k], cd.sizes[k] % p, p);
    const std::uint64_t n_inv = modp::inv(t.group().order() % p, p);

    Decomposition out;
    for (std::size_t i = 0; i < r; ++i) {
        unsigned __int128 acc = 0;
        for (std::size_t k = 0; k < r; ++k) {
            if (weighted[k] != 0) acc += static_cast<unsigned __int128>(weighted[k]) * m.at(i, cd.inverse_class[k]);
        }
        const std::uint64_t mi = modp::mul(static_cast<std::uint64_t>(acc % p), n_inv, p);
        if (mi == 0) continue;
        if (mi > static_cast<std::uint64_t>(f1) / t.degree(i)) {
            throw NotACharacter("class function has a non-integral or negative constituent");
        }
        out.parts.emplace_back(i, mi);
    }
    std::vector<std::int64_t> rebuilt(r * phi, 0);
    for (const auto& [i, mi] : out.parts) {
        const std::int64_t* row = t.coeffs(i, 0);
        for (std::size_t x = 0; x < r * phi; ++x) rebuilt[x] += static_cast<std::int64_t>(mi) * row[x];
    }
    if (rebuilt != f) throw NotACharacter("class function is not a combination of irreducible characters");
    return out;
}

}  // namespace

Decomposition decompose(const ClassFunction& f, const CharacterTable& t) {
    if (!f.group().same_as(t.group())) throw InvalidArgument("class function of a different group");
    const std::size_t r = t.size();
    const std::uint32_t phi = t.ring().phi();
    std::vector<std::int64_t> coeffs(r * phi);
    for (std::size_t k = 0; k < r; ++k) {
        auto c = t.ring().from_cyclotomic(f[k]);
        if (!c) throw NotACharacter("value is not an algebraic integer of the table's field");
        std::copy(c->begin(), c->end(), coeffs.begin() + static_cast<std::ptrdiff_t>(k * phi));
    }
    std::vector<std::uint64_t> image(r);
    for (std::size_t k = 0; k < r; ++k) {
        image[k] = eval_mod(coeffs.data() + k * phi, phi, t.modular().omega_pows, 1, t.modular().prime);
    }
    return decompose_integral(t, coeffs, image);
}

Decomposition decompose_product(const CharacterTable& t, std::size_t i, std::size_t j) {
    const std::size_t r = t.size();
    if (i >= r || j >= r) throw InvalidArgument("row index out of range");
    const std::uint32_t phi = t.ring().phi();
    const auto& m = t.modular();
    std::vector<std::int64_t> coeffs(r * phi);
    std::vector<std::uint64_t> image(r);
    for (std::size_t k = 0; k < r; ++k) {
        t.ring().mul(t.coeffs(i, k), t.coeffs(j, k), coeffs.data() + k * phi);
        image[k] = modp::mul(m.at(i, k), m.at(j, k), m.prime);
    }
    return decompose_integral(t, coeffs, image);
}

std::size_t eta(const Character& a, const Character& b, const CharacterTable& t) {
    return decompose(product(a, b), t).eta();
}

std::size_t eta(const CharacterTable& t, std::size_t i, std::size_t j) { return decompose_product(t, i, j).eta(); }

}  // namespace pchar
