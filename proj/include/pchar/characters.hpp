#pragma once

// Class functions, exact character tables and the character arithmetic built
// on them.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pchar/cyclotomic.hpp"
#include "pchar/cyclotomic_int.hpp"
#include "pchar/group.hpp"

namespace pchar {

/// One value per conjugacy class of `group`.
class ClassFunction {
public:
    ClassFunction(FiniteGroup group, std::vector<Cyclotomic> values);

    const FiniteGroup& group() const { return group_; }
    std::size_t size() const { return values_.size(); }
    const Cyclotomic& operator[](std::size_t k) const { return values_[k]; }
    const std::vector<Cyclotomic>& values() const { return values_; }
    /// Value at the identity class.
    const Cyclotomic& at_identity() const { return values_[0]; }
    /// Value at an arbitrary element.
    const Cyclotomic& at(Elem x) const { return values_[group_.classes().class_of[x]]; }

    ClassFunction& operator+=(const ClassFunction& o);
    ClassFunction& operator*=(const Rational& s);
    friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
    friend bool operator==(const ClassFunction& a, const ClassFunction& b);

private:
    FiniteGroup group_;
    std::vector<Cyclotomic> values_;
};

/// A class function known to be a character: its identity value is a positive
/// integer. Irreducibility is not implied.
class Character : public ClassFunction {
public:
    /// Throws NotACharacter when the identity value is not a positive integer.
    explicit Character(ClassFunction f);
    Character(FiniteGroup group, std::vector<Cyclotomic> values)
        : Character(ClassFunction(std::move(group), std::move(values))) {}

    std::uint64_t degree() const { return degree_; }

private:
    std::uint64_t degree_;
};

ClassFunction product(const ClassFunction& a, const ClassFunction& b);
Character product(const Character& a, const Character& b);
ClassFunction conjugate(const ClassFunction& a);
Character conjugate(const Character& a);

/// (1/|G|) sum_g a(g) conj(b(g)), exact.
Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b);
/// inner_product for two characters; throws InternalError unless the result is
/// a nonnegative integer.
std::uint64_t character_inner_product(const Character& a, const Character& b);

Subgroup kernel(const ClassFunction& a);
bool is_faithful(const ClassFunction& a);
/// {g : |a(g)| = a(1)}.
Subgroup char_center(const ClassFunction& a);
/// a(g) = 0 for every g outside s.
bool vanishes_outside(const ClassFunction& a, const Subgroup& s);
/// Restriction to h, as a class function of h.as_group().
ClassFunction restrict(const ClassFunction& a, const Subgroup& h);
/// Induction of a class function of h.as_group() to h.parent().
ClassFunction induce(const ClassFunction& lam, const Subgroup& h);
/// Induction of an arbitrary function on the members of h (given on parent
/// indices) that is constant on h-classes. Avoids computing h's classes.
ClassFunction induce_from_values(const Subgroup& h, const std::function<Cyclotomic(Elem)>& value,
                                 std::uint32_t conductor);

struct TableOptions {
    std::uint64_t seed = 0;
    /// Rounds of random class-matrix combinations before a seed is abandoned.
    unsigned max_rounds = 64;
    /// Further seeds tried after the first one fails to split.
    unsigned retries = 3;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Images of table values in F_P under zeta_e -> omega, P = 1 (mod e) prime.
struct ModularImage {
    std::uint64_t prime = 0;
    std::uint64_t omega = 0;                // primitive e-th root mod P
    std::vector<std::uint64_t> omega_pows;  // omega^j, j < e
    std::vector<std::uint64_t> values;      // row-major r x r
    std::uint64_t at(std::size_t i, std::size_t k) const { return values[i * stride + k]; }
    std::size_t stride = 0;
};

struct TableStats {
    std::uint64_t dixon_prime = 0;
    std::uint64_t seed_used = 0;
    unsigned rounds = 0;
};

class CharacterTable {
public:
    /// Irreducible characters of g, rows sorted by degree, trivial character
    /// first, then lexicographically on canonical values.
    static CharacterTable compute(const FiniteGroup& g, const TableOptions& opts = {});

    const FiniteGroup& group() const { return data_->group; }
    std::size_t size() const { return data_->rows; }
    std::uint32_t conductor() const { return data_->ring.conductor(); }
    const IntCyclotomicRing& ring() const { return data_->ring; }

    std::uint64_t degree(std::size_t i) const { return data_->degrees[i]; }
    const std::vector<std::uint64_t>& degrees() const { return data_->degrees; }
    /// Canonical integer coefficients of row i at class k.
    const std::int64_t* coeffs(std::size_t i, std::size_t k) const {
        return data_->coeffs.data() + (i * data_->rows + k) * data_->ring.phi();
    }
    Cyclotomic value(std::size_t i, std::size_t k) const { return ring().to_cyclotomic(coeffs(i, k)); }
    Character row(std::size_t i) const;

    /// Index of the complex conjugate of row i.
    std::size_t conjugate_row(std::size_t i) const { return data_->conj_row[i]; }
    bool is_linear(std::size_t i) const { return data_->degrees[i] == 1; }
    bool is_faithful(std::size_t i) const { return data_->faithful[i]; }
    std::vector<std::size_t> faithful_rows() const;
    std::vector<std::size_t> linear_rows() const;
    /// Row index of a class function equal to an irreducible, if any.
    std::optional<std::size_t> find_row(const ClassFunction& f) const;
    /// Row whose modular image (one residue per class) is `image`. Images of
    /// distinct rows differ, so this identifies irreducibles exactly.
    std::optional<std::size_t> find_row_by_image(const std::vector<std::uint64_t>& image) const;
    /// Modular image of a class function with integral values; nullopt if some
    /// value is not an algebraic integer of this table's field.
    std::optional<std::vector<std::uint64_t>> image_of(const ClassFunction& f) const;
    /// Class of the l-th power of class k's representative.
    std::uint32_t power_class(std::size_t k, std::uint64_t l) const {
        const auto& pc = data_->power_classes[k];
        return pc[l % pc.size()];
    }

    const ModularImage& modular() const { return data_->modular; }
    const TableStats& stats() const { return data_->stats; }

    /// Re-runs exact row and column orthogonality and the degree sum.
    /// Throws InternalError with a description on failure.
    void validate() const;

private:
    struct Data {
        Data(FiniteGroup g, IntCyclotomicRing rg) : group(std::move(g)), ring(std::move(rg)) {}
        FiniteGroup group;
        IntCyclotomicRing ring;
        std::size_t rows = 0;
        std::vector<std::uint64_t> degrees;
        std::vector<std::int64_t> coeffs;
        std::vector<std::size_t> conj_row;
        std::vector<char> faithful;
        ModularImage modular;
        TableStats stats;
        std::vector<std::vector<std::uint32_t>> power_classes;  // class of rep^l, l < order
        std::map<std::vector<std::uint64_t>, std::size_t> by_image;
    };
    explicit CharacterTable(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    friend struct TableBuilder;
    std::shared_ptr<const Data> data_;
};

inline CharacterTable character_table(const FiniteGroup& g, std::uint64_t seed = 0) {
    TableOptions o;
    o.seed = seed;
    return CharacterTable::compute(g, o);
}

/// sum m_i theta_i with every m_i > 0.
struct Decomposition {
    std::vector<std::pair<std::size_t, std::uint64_t>> parts;  // (row, multiplicity), rows ascending

    std::size_t eta() const { return parts.size(); }
    std::uint64_t multiplicity(std::size_t row) const;
};

/// Throws NotACharacter unless f is a nonnegative integer combination of rows.
Decomposition decompose(const ClassFunction& f, const CharacterTable& t);
/// Decomposition of row i times row j.
Decomposition decompose_product(const CharacterTable& t, std::size_t i, std::size_t j);
/// Number of distinct irreducible constituents of a * b.
std::size_t eta(const Character& a, const Character& b, const CharacterTable& t);
std::size_t eta(const CharacterTable& t, std::size_t i, std::size_t j);

/// Writes class metadata and rows as JSON; every value as
/// {"conductor": e, "coeffs": [[num, den], ...]}.
void write_table_json(std::ostream& out, const CharacterTable& t);
/// CSV with display-only complex approximations.
void write_table_csv(std::ostream& out, const CharacterTable& t);

}  // namespace pchar
