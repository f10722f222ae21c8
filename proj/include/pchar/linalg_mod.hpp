#pragma once

// Dense linear algebra over a prime field F_q, q < 2^31.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pchar::fq {

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint64_t> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
    static Matrix identity(std::size_t n);

    std::uint64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint64_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    std::uint64_t* row(std::size_t i) { return a.data() + i * cols; }
    const std::uint64_t* row(std::size_t i) const { return a.data() + i * cols; }
};

using Vec = std::vector<std::uint64_t>;

std::uint64_t dot(const std::uint64_t* x, const std::uint64_t* y, std::size_t n, std::uint64_t q);

/// Row space of `rows` in reduced row echelon form.
struct Space {
    Matrix basis;  // dim x ambient, RREF
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return basis.rows; }
};

Space row_space(Matrix rows, std::uint64_t q);

/// Matrix of m restricted to the m-invariant space v, in the coordinates given
/// by v's RREF basis: column b holds the coordinates of m * basis_b.
Matrix restrict_to(const Matrix& m, const Space& v, std::uint64_t q);

/// Eigenspaces of a matrix that is diagonalizable over F_q. Each entry is a
/// basis (list of vectors) of one eigenspace. Throws InternalError if the
/// eigenvalues do not all lie in F_q or the matrix is not diagonalizable.
std::vector<std::vector<Vec>> eigenspaces(const Matrix& m, std::uint64_t q);

}  // namespace pchar::fq
