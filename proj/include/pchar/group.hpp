#pragma once

// Finite groups on element indices 0..order-1 with an exact multiplication
// oracle, plus the structural data the character code needs.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pchar {

using Elem = std::uint32_t;

inline constexpr std::size_t kDefaultElementCap = 200000;

enum class Backing { Table, Permutation, Structured };

/// Multiplication oracle behind a FiniteGroup. Implementations are immutable.
class GroupImpl {
public:
    virtual ~GroupImpl() = default;

    virtual std::size_t order() const = 0;
    virtual Elem mul(Elem a, Elem b) const = 0;
    virtual Elem inverse(Elem a) const = 0;
    virtual Elem identity() const { return 0; }
    /// Known generating set, if the construction provides one.
    virtual std::optional<std::vector<Elem>> known_generators() const { return std::nullopt; }
    virtual std::string label(Elem a) const { return std::to_string(a); }
    virtual Backing backing() const = 0;
    virtual std::string description() const = 0;
};

/// Conjugacy classes. Class 0 is {identity}; the remaining classes are sorted
/// by (size, smallest member).
struct ConjugacyData {
    std::vector<std::uint32_t> class_of;
    std::vector<Elem> reps;  // smallest member of each class
    std::vector<std::size_t> sizes;
    std::vector<std::uint32_t> inverse_class;
    std::vector<std::uint64_t> rep_orders;
    std::vector<Elem> members;         // elements grouped by class
    std::vector<std::size_t> offsets;  // class k is members[offsets[k] .. offsets[k+1])

    std::size_t num_classes() const { return reps.size(); }
    std::span<const Elem> class_members(std::size_t k) const {
        return {members.data() + offsets[k], offsets[k + 1] - offsets[k]};
    }
};

class FiniteGroup {
public:
    explicit FiniteGroup(std::shared_ptr<const GroupImpl> impl);

    std::size_t order() const { return order_; }
    Elem mul(Elem a, Elem b) const { return impl_->mul(a, b); }
    Elem inverse(Elem a) const { return impl_->inverse(a); }
    Elem identity() const { return identity_; }

    Elem power(Elem a, std::uint64_t k) const;
    std::uint64_t element_order(Elem a) const;
    /// x^-1 * y * x
    Elem conjugate(Elem y, Elem x) const { return mul(mul(inverse(x), y), x); }

    /// Generating set: the construction's own, else a greedy one.
    const std::vector<Elem>& generators() const;
    const ConjugacyData& classes() const;
    /// lcm of element orders.
    std::uint64_t exponent() const;
    /// The prime p when the order is p^k, k >= 1.
    std::optional<std::uint64_t> prime() const;

    std::string label(Elem a) const { return impl_->label(a); }
    Backing backing() const { return impl_->backing(); }
    std::string description() const { return impl_->description(); }
    const GroupImpl& impl() const { return *impl_; }

    /// Identity of the underlying object (not isomorphism).
    bool same_as(const FiniteGroup& other) const { return state_ == other.state_; }

private:
    struct State;
    std::shared_ptr<const GroupImpl> impl_;
    std::shared_ptr<State> state_;
    std::size_t order_ = 0;
    Elem identity_ = 0;
};

/// A subgroup given by its sorted member set inside a parent group.
class Subgroup {
public:
    /// `members` need not be sorted; closure is not re-checked here, use
    /// generated_subgroup() when in doubt.
    Subgroup(FiniteGroup parent, std::vector<Elem> members, std::vector<Elem> generators = {});

    const FiniteGroup& parent() const { return *parent_; }
    const std::vector<Elem>& members() const { return *members_; }
    std::size_t order() const { return members_->size(); }
    bool contains(Elem x) const { return position_[x] != kAbsent; }

    /// The subgroup as a group in its own right; local index i is members()[i].
    const FiniteGroup& as_group() const;
    Elem to_parent(Elem local) const { return (*members_)[local]; }
    Elem to_local(Elem x) const { return position_[x]; }

    bool is_subset_of(const Subgroup& other) const;
    bool is_normal() const;
    /// Checks closure under multiplication and inverses, and presence of the identity.
    bool is_closed() const;

    friend bool operator==(const Subgroup& a, const Subgroup& b);

private:
    static constexpr Elem kAbsent = ~Elem{0};
    struct Data;
    std::shared_ptr<Data> data_;
    const FiniteGroup* parent_ = nullptr;
    const std::vector<Elem>* members_ = nullptr;
    const Elem* position_ = nullptr;
};

struct PermGenerators {
    std::size_t degree = 0;
    std::vector<std::vector<std::uint32_t>> generators;  // image arrays
};

// Constructors. Every one enforces the element-count cap.
FiniteGroup cyclic_group(std::size_t n, std::size_t cap = kDefaultElementCap);
/// Mixed-radix indexing: (a, b) -> a * |g2| + b.
FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2,
                           std::size_t cap = kDefaultElementCap);
/// Extraspecial group of exponent p and order p^(2m-1) in the Heisenberg model
/// (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b'); C_p when m = 1.
FiniteGroup heisenberg_extraspecial(std::uint64_t p, unsigned m, std::size_t cap = kDefaultElementCap);
/// C_p acting on e^p by cyclic translation of coordinates, (f^c)(x) = f(c + x).
/// Element (c, f) has index c*|e|^p + sum f(i) |e|^(p-1-i).
FiniteGroup function_power_semidirect(const FiniteGroup& e, std::uint64_t p,
                                      std::size_t cap = kDefaultElementCap);
/// Closure of the generators in BFS order from the identity. Product convention:
/// (a*b)(i) = b(a(i)).
FiniteGroup group_from_perm_generators(const PermGenerators& gens, std::size_t cap = kDefaultElementCap);
/// Validated Cayley table.
FiniteGroup group_from_table(std::vector<std::vector<Elem>> table);

/// Parses the `perm <degree>` / `table <n>` text formats.
FiniteGroup parse_group(std::istream& in, std::size_t cap = kDefaultElementCap);
FiniteGroup load_group_file(const std::string& path, std::size_t cap = kDefaultElementCap);
/// Writes `table <n>` format.
void write_group_table(std::ostream& out, const FiniteGroup& g);
/// Writes `perm <n>` format using the right regular representation of g's generators.
void write_regular_perm(std::ostream& out, const FiniteGroup& g);

/// Group axioms; exhaustive up to 512 elements, else `samples` random triples.
bool check_group_axioms(const FiniteGroup& g, std::size_t samples = 100000, std::uint64_t seed = 0);

// Subgroups.
Subgroup whole_group(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens);
Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> seeds);
Subgroup center(const FiniteGroup& g);

/// Normal subgroups Y of g with lower < Y and |Y : lower| = p, optionally
/// restricted to Y <= within. When p is absent every prime index is accepted.
std::vector<Subgroup> normal_subgroups_between(const FiniteGroup& g, const Subgroup& lower,
                                               std::optional<std::uint64_t> p = std::nullopt,
                                               const Subgroup* within = nullptr);

/// All normal subgroups, sorted by (order, members). Throws ResourceLimit past max_count.
std::vector<Subgroup> all_normal_subgroups(const FiniteGroup& g, std::size_t max_count = 4096);

/// Every Sylow subgroup normal; checked by counting p-elements.
bool is_nilpotent(const FiniteGroup& g);

}  // namespace pchar
