#pragma once

// p-groups G = C_p acting on A = E^p by translating coordinates, E extraspecial
// of order p^(2m-1), together with the character chi induced from lambda_0,
// lambda_0(a) = lambda(a(0)) for lambda in Irr(E) of degree p^(m-1).
//
// chi chi has (p+1)/2 distinct constituents. The table check computes this in
// G directly; the orbit check works with A-characters written as one E-row per
// coordinate and never builds G.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pchar/characters.hpp"
#include "pchar/group.hpp"
#include "pchar/verifiers.hpp"

namespace pchar {

struct ExampleSpec {
    std::uint64_t p = 3;
    unsigned m = 1;

    /// Throws InvalidArgument unless p is an odd prime and m >= 1.
    ExampleSpec(std::uint64_t p, unsigned m);

    unsigned e_exponent() const { return 2 * m - 1; }
    unsigned a_exponent() const { return static_cast<unsigned>(p) * e_exponent(); }
    unsigned g_exponent() const { return a_exponent() + 1; }
    /// p^k, nullopt past 64 bits.
    std::optional<std::uint64_t> e_order() const;
    std::optional<std::uint64_t> a_order() const;
    std::optional<std::uint64_t> g_order() const;
    std::size_t expected_eta() const { return static_cast<std::size_t>((p + 1) / 2); }
};

/// E, its table and the chosen lambda.
struct ExampleBase {
    FiniteGroup e;
    CharacterTable table;
    std::size_t lambda = 0;
};

ExampleBase example_base(const ExampleSpec& spec);

struct Example {
    ExampleSpec spec;
    FiniteGroup g;
    Subgroup a;  // the coordinate functions, indices 0 .. |E|^p - 1
    std::size_t lambda_row = 0;  // row of E's table
    Character chi;
};

/// Throws ResourceLimit when G exceeds `cap`.
Example build_example(const ExampleSpec& spec, std::size_t cap = kDefaultElementCap);

/// One irreducible of A per coordinate: rows of E's table.
using SlotTuple = std::vector<std::size_t>;

struct OrbitTerm {
    SlotTuple representative;
    std::uint64_t degree = 0;        // of the induced irreducible of G
    std::uint64_t multiplicity = 0;  // in chi chi
};

/// Constituents of chi chi from the orbit argument, with the checks it rests on.
struct OrbitAnalysis {
    std::size_t lambda = 0, mu = 0;  // rows of E's table, lambda lambda = lambda(1) mu
    std::vector<OrbitTerm> orbits;
    bool stabilizers_trivial = false;
    /// Checked only for p <= 13; nullopt otherwise.
    std::optional<bool> representatives_distinct;
    std::optional<bool> representatives_cover;

    std::size_t eta() const { return orbits.size(); }
    /// (degree, multiplicity), sorted.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> constituents() const;
};

OrbitAnalysis analyze_orbits(const ExampleSpec& spec);

/// (lambda_i)^c = lambda_(i-c) for the generator c of C, as class functions of A.
bool index_action_matches(const Example& ex, const CharacterTable& e_table);

/// Full table of G. Skipped if the table is not done within `budget_s` seconds.
VerificationReport verify_example_via_table(const ExampleSpec& spec, double budget_s = 120.0);
VerificationReport verify_example_via_orbits(const ExampleSpec& spec);
/// Both methods; fails if either fails or they disagree on eta or on the
/// constituent degrees and multiplicities.
VerificationReport cross_check_methods(const ExampleSpec& spec, double budget_s = 120.0);

}  // namespace pchar
