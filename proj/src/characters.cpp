#include "pchar/characters.hpp"

#include <algorithm>
#include <numeric>

#include "pchar/errors.hpp"

namespace pchar {

namespace {

void require_same_group(const ClassFunction& a, const ClassFunction& b) {
    if (!a.group().same_as(b.group())) throw InvalidArgument("class functions live on different groups");
}

}  // namespace

ClassFunction::ClassFunction(FiniteGroup group, std::vector<Cyclotomic> values)
    : group_(std::move(group)), values_(std::move(values)) {
    if (values_.size() != group_.classes().num_classes()) {
        throw InvalidArgument("class function needs one value per conjugacy class");
    }
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
    require_same_group(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ClassFunction& ClassFunction::operator*=(const Rational& s) {
    for (auto& v : values_) v *= Cyclotomic(s, v.conductor());
    return *this;
}

bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return a.group_.same_as(b.group_) && a.values_ == b.values_;
}

Character::Character(ClassFunction f) : ClassFunction(std::move(f)) {
    auto d = at_identity().as_integer();
    if (!d || sgn(*d) <= 0 || !d->fits_ulong_p()) throw NotACharacter("identity value is not a positive integer");
    degree_ = d->get_ui();
}

ClassFunction product(const ClassFunction& a, const ClassFunction& b) {
    require_same_group(a, b);
    std::vector<Cyclotomic> v(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) v[k] = a[k] * b[k];
    return ClassFunction(a.group(), std::move(v));
}

Character product(const Character& a, const Character& b) {
    return Character(product(static_cast<const ClassFunction&>(a), static_cast<const ClassFunction&>(b)));
}

ClassFunction conjugate(const ClassFunction& a) {
    std::vector<Cyclotomic> v(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) v[k] = a[k].conj();
    return ClassFunction(a.group(), std::move(v));
}

Character conjugate(const Character& a) { return Character(conjugate(static_cast<const ClassFunction&>(a))); }

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
    require_same_group(a, b);
    const auto& cd = a.group().classes();
    Cyclotomic sum;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero() || b[k].is_zero()) continue;
        sum += Cyclotomic(Rational(static_cast<unsigned long>(cd.sizes[k])), 1) * a[k] * b[k].conj();
    }
    return sum * Cyclotomic(Rational(1, static_cast<unsigned long>(a.group().order())), 1);
}

std::uint64_t character_inner_product(const Character& a, const Character& b) {
    auto m = inner_product(a, b).as_integer();
    if (!m || sgn(*m) < 0 || !m->fits_ulong_p()) {
        throw InternalError("inner product of two characters is not a nonnegative integer");
    }
    return m->get_ui();
}

namespace {

Subgroup union_of_classes(const FiniteGroup& g, const std::vector<char>& keep) {
    const auto& cd = g.classes();
    std::vector<Elem> members;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (!keep[k]) continue;
        auto m = cd.class_members(k);
        members.insert(members.end(), m.begin(), m.end());
    }
    return Subgroup(g, std::move(members));
}

}  // namespace

Subgroup kernel(const ClassFunction& a) {
    std::vector<char> keep(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) keep[k] = a[k] == a.at_identity();
    return union_of_classes(a.group(), keep);
}

bool is_faithful(const ClassFunction& a) {
    for (std::size_t k = 1; k < a.size(); ++k) {
        if (a[k] == a.at_identity()) return false;
    }
    return true;
}

Subgroup char_center(const ClassFunction& a) {
    const Cyclotomic d2 = a.at_identity() * a.at_identity().conj();
    std::vector<char> keep(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) keep[k] = a[k] * a[k].conj() == d2;
    return union_of_classes(a.group(), keep);
}

bool vanishes_outside(const ClassFunction& a, const Subgroup& s) {
    if (!a.group().same_as(s.parent())) throw InvalidArgument("subgroup of a different group");
    const auto& cd = a.group().classes();
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero()) continue;
        for (Elem x : cd.class_members(k)) {
            if (!s.contains(x)) return false;
        }
    }
    return true;
}

ClassFunction restrict(const ClassFunction& a, const Subgroup& h) {
    if (!a.group().same_as(h.parent())) throw InvalidArgument("subgroup of a different group");
    const FiniteGroup& hg = h.as_group();
    const auto& hcd = hg.classes();
    std::vector<Cyclotomic> v;
    v.reserve(hcd.num_classes());
    for (Elem r : hcd.reps) v.push_back(a.at(h.to_parent(r)));
    return ClassFunction(hg, std::move(v));
}

ClassFunction induce_from_values(const Subgroup& h, const std::function<Cyclotomic(Elem)>& value,
                                 std::uint32_t conductor) {
    const FiniteGroup& g = h.parent();
    const auto& cd = g.classes();
    std::vector<Cyclotomic> sums(cd.num_classes(), Cyclotomic(Rational(0), conductor));
    for (Elem x : h.members()) {
        Cyclotomic v = value(x);
        if (!v.is_zero()) sums[cd.class_of[x]] += v;
    }
    // (lam^G)(x) = |C_G(x)| / |H| * sum over H-members of x's class
    for (std::size_t k = 0; k < sums.size(); ++k) {
        if (sums[k].is_zero()) continue;
        Rational scale(static_cast<unsigned long>(g.order()),
                       static_cast<unsigned long>(cd.sizes[k] * h.order()));
        scale.canonicalize();
        sums[k] *= Cyclotomic(scale, 1);
    }
    return ClassFunction(g, std::move(sums));
}

ClassFunction induce(const ClassFunction& lam, const Subgroup& h) {
    const FiniteGroup& hg = h.as_group();
    if (!lam.group().same_as(hg)) throw InvalidArgument("class function is not defined on this subgroup");
    std::uint32_t e = 1;
    for (const auto& v : lam.values()) e = std::lcm(e, v.conductor());
    return induce_from_values(h, [&](Elem x) { return lam.at(h.to_local(x)); }, e);
}

}  // namespace pchar
