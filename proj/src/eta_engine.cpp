#include "pchar/eta_engine.hpp"

#include <algorithm>
#include <functional>

#include "pchar/arith.hpp"
#include "pchar/errors.hpp"

namespace pchar {

EtaEngine::EtaEngine(const CharacterTable& t) : table_(t), linear_(t.linear_rows()) {
    const std::size_t r = t.size();
    const auto& m = t.modular();
    twist_.resize(linear_.size() * r);
    std::vector<std::uint64_t> img(r);
    for (std::size_t l = 0; l < linear_.size(); ++l) {
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t k = 0; k < r; ++k) img[k] = modp::mul(m.at(linear_[l], k), m.at(i, k), m.prime);
            auto row = t.find_row_by_image(img);
            if (!row) throw InternalError("twist of an irreducible by a linear character is not a row");
            twist_[l * r + i] = *row;
        }
    }
    rep_.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t best = i;
        for (std::size_t l = 0; l < linear_.size(); ++l) best = std::min(best, twist_[l * r + i]);
        rep_[i] = best;
    }
}

const ProductSummary& EtaEngine::summary(std::size_t i, std::size_t j) {
    std::size_t a = rep_.at(i), b = rep_.at(j);
    if (a > b) std::swap(a, b);
    auto it = cache_.find({a, b});
    if (it != cache_.end()) return it->second;
    Decomposition d = decompose_product(table_, a, b);
    ProductSummary s;
    s.eta = d.eta();
    for (const auto& part : d.parts) s.multiplicities.push_back(part.second);
    std::sort(s.multiplicities.begin(), s.multiplicities.end(), std::greater<>());
    return cache_.emplace(std::make_pair(a, b), std::move(s)).first->second;
}

}  // namespace pchar
