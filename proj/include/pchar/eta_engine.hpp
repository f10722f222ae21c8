#pragma once

// Cached constituent counts of products of irreducibles.
//
// Twisting by linear characters permutes constituents:
// (lam chi)(mu psi) = (lam mu) chi psi, so the constituent count and the
// multiset of multiplicities depend only on the twist orbits of the two
// factors. The engine decomposes one representative product per orbit pair.

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "pchar/characters.hpp"

namespace pchar {

struct ProductSummary {
    std::size_t eta = 0;
    std::vector<std::uint64_t> multiplicities;  // descending
};

class EtaEngine {
public:
    explicit EtaEngine(const CharacterTable& t);

    const CharacterTable& table() const { return table_; }
    /// Row index of lam_l * chi_i, l indexing linear_rows().
    std::size_t twist(std::size_t l, std::size_t i) const { return twist_[l * table_.size() + i]; }
    std::size_t orbit_rep(std::size_t i) const { return rep_[i]; }
    const std::vector<std::size_t>& linear_rows() const { return linear_; }

    const ProductSummary& summary(std::size_t i, std::size_t j);
    std::size_t eta(std::size_t i, std::size_t j) { return summary(i, j).eta; }
    /// Number of products actually decomposed so far.
    std::size_t decompositions() const { return cache_.size(); }

private:
    CharacterTable table_;
    std::vector<std::size_t> linear_;
    std::vector<std::size_t> twist_;
    std::vector<std::size_t> rep_;
    std::map<std::pair<std::size_t, std::size_t>, ProductSummary> cache_;
};

}  // namespace pchar
