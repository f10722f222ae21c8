#include "pchar/linalg_mod.hpp"

#include <algorithm>
#include <utility>

#include "pchar/arith.hpp"
#include "pchar/errors.hpp"

namespace pchar::fq {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

std::uint64_t dot(const std::uint64_t* x, const std::uint64_t* y, std::size_t n, std::uint64_t q) {
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<unsigned __int128>(x[i] * y[i]);
    return static_cast<std::uint64_t>(acc % q);
}

namespace {

inline std::uint64_t sub_mul(std::uint64_t a, std::uint64_t f, std::uint64_t b, std::uint64_t q) {
    // a - f*b mod q
    return (a + q - f * b % q) % q;
}

}  // namespace

Space row_space(Matrix m, std::uint64_t q) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m(p, c) == 0) ++p;
        if (p == m.rows) continue;
        if (p != r) std::swap_ranges(m.row(p), m.row(p) + m.cols, m.row(r));
        std::uint64_t inv = modp::inv(m(r, c), q);
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) = m(r, j) * inv % q;
        for (std::size_t t = 0; t < m.rows; ++t) {
            if (t == r || m(t, c) == 0) continue;
            std::uint64_t f = m(t, c);
            for (std::size_t j = c; j < m.cols; ++j) {
                if (m(r, j) != 0) m(t, j) = sub_mul(m(t, j), f, m(r, j), q);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    m.rows = r;
    m.a.resize(r * m.cols);
    return Space{std::move(m), std::move(pivots)};
}

Matrix restrict_to(const Matrix& m, const Space& v, std::uint64_t q) {
    const std::size_t d = v.dim();
    Matrix out(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        const std::uint64_t* mrow = m.row(v.pivots[a]);
        for (std::size_t b = 0; b < d; ++b) out(a, b) = dot(mrow, v.basis.row(b), m.cols, q);
    }
    return out;
}

namespace {

// Similarity transform to upper Hessenberg form h = Q m Q^-1; returns Q^-1.
Matrix hessenberg(Matrix& h, std::uint64_t q) {
    const std::size_t d = h.rows;
    Matrix qinv = Matrix::identity(d);
    auto swap_cols = [](Matrix& x, std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < x.rows; ++r) std::swap(x(r, i), x(r, j));
    };
    for (std::size_t c = 0; c + 2 < d; ++c) {
        std::size_t i = c + 1;
        while (i < d && h(i, c) == 0) ++i;
        if (i == d) continue;
        if (i != c + 1) {
            std::swap_ranges(h.row(i), h.row(i) + d, h.row(c + 1));
            swap_cols(h, i, c + 1);
            swap_cols(qinv, i, c + 1);
        }
        const std::uint64_t inv = modp::inv(h(c + 1, c), q);
        for (std::size_t t = c + 2; t < d; ++t) {
            if (h(t, c) == 0) continue;
            const std::uint64_t f = h(t, c) * inv % q;
            for (std::size_t j = c; j < d; ++j) {
                if (h(c + 1, j) != 0) h(t, j) = sub_mul(h(t, j), f, h(c + 1, j), q);
            }
            for (std::size_t r = 0; r < d; ++r) {
                if (h(r, t) != 0) h(r, c + 1) = (h(r, c + 1) + f * h(r, t)) % q;
                if (qinv(r, t) != 0) qinv(r, c + 1) = (qinv(r, c + 1) + f * qinv(r, t)) % q;
            }
        }
    }
    return qinv;
}

// Kernel of an upper Hessenberg matrix; only rows up to c+1 can be nonzero in
// column c, which keeps elimination quadratic.
std::vector<Vec> hessenberg_kernel(Matrix a, std::uint64_t q) {
    const std::size_t d = a.rows;
    std::vector<std::size_t> pivot_col;
    std::vector<char> is_pivot(d, 0);
    std::size_t r0 = 0;
    for (std::size_t c = 0; c < d; ++c) {
        const std::size_t lim = std::min(d, c + 2);
        std::size_t i = r0;
        while (i < lim && a(i, c) == 0) ++i;
        if (i >= lim) continue;
        if (i != r0) std::swap_ranges(a.row(i) + c, a.row(i) + d, a.row(r0) + c);
        const std::uint64_t inv = modp::inv(a(r0, c), q);
        for (std::size_t t = r0 + 1; t < lim; ++t) {
            if (a(t, c) == 0) continue;
            const std::uint64_t f = a(t, c) * inv % q;
            for (std::size_t j = c; j < d; ++j) {
                if (a(r0, j) != 0) a(t, j) = sub_mul(a(t, j), f, a(r0, j), q);
            }
        }
        pivot_col.push_back(c);
        is_pivot[c] = 1;
        ++r0;
    }
    std::vector<Vec> kernel;
    if (r0 == d) return kernel;
    for (std::size_t f = 0; f < d; ++f) {
        if (is_pivot[f]) continue;
        Vec x(d, 0);
        x[f] = 1;
        for (std::size_t k = r0; k-- > 0;) {
            const std::size_t pc = pivot_col[k];
            unsigned __int128 s = 0;
            for (std::size_t j = pc + 1; j < d; ++j) s += static_cast<unsigned __int128>(a(k, j) * x[j]);
            const std::uint64_t sm = static_cast<std::uint64_t>(s % q);
            x[pc] = (q - sm) % q * modp::inv(a(k, pc), q) % q;
        }
        kernel.push_back(std::move(x));
    }
    return kernel;
}

}  // namespace

std::vector<std::vector<Vec>> eigenspaces(const Matrix& m, std::uint64_t q) {
    const std::size_t d = m.rows;
    if (d == 0) return {};
    if (d == 1) return {{Vec{1}}};
    Matrix h = m;
    Matrix qinv = hessenberg(h, q);
    std::vector<std::vector<Vec>> out;
    std::size_t found = 0;
    for (std::uint64_t lambda = 0; lambda < q && found < d; ++lambda) {
        Matrix a = h;
        for (std::size_t i = 0; i < d; ++i) a(i, i) = (a(i, i) + q - lambda) % q;
        auto ker = hessenberg_kernel(std::move(a), q);
        if (ker.empty()) continue;
        std::vector<Vec> space;
        for (const auto& u : ker) {
            Vec v(d, 0);
            for (std::size_t i = 0; i < d; ++i) v[i] = dot(qinv.row(i), u.data(), d, q);
            space.push_back(std::move(v));
        }
        found += space.size();
        out.push_back(std::move(space));
    }
    if (found != d) throw InternalError("class matrix combination is not diagonalizable over F_q");
    return out;
}

}  // namespace pchar::fq
