#include "pchar/group.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "pchar/arith.hpp"
#include "pchar/errors.hpp"

namespace pchar {

namespace {

void enforce_cap(std::size_t n, std::size_t cap, const std::string& what) {
    if (n > cap) {
        throw ResourceLimit(what + " has " + std::to_string(n) + " elements, above the cap of " +
                            std::to_string(cap));
    }
}

// Incrementally maintained closure of a generating set.
struct Closure {
    std::vector<char> in;
    std::vector<Elem> list;

    explicit Closure(const FiniteGroup& g) : in(g.order(), 0) {
        in[g.identity()] = 1;
        list.push_back(g.identity());
    }

    void extend(const FiniteGroup& g, const std::vector<Elem>& gens) {
        std::size_t head = 0;
        // Old members must meet the new generators too, so restart from all of them.
        std::vector<Elem> queue = list;
        while (head < queue.size()) {
            Elem x = queue[head++];
            for (Elem s : gens) {
                Elem y = g.mul(x, s);
                if (!in[y]) {
                    in[y] = 1;
                    list.push_back(y);
                    queue.push_back(y);
                }
            }
        }
    }
};

// ---------------------------------------------------------------- impls

class CyclicImpl final : public GroupImpl {
public:
    explicit CyclicImpl(std::size_t n) : n_(n) {}
    std::size_t order() const override { return n_; }
    Elem mul(Elem a, Elem b) const override { return static_cast<Elem>((std::size_t{a} + b) % n_); }
    Elem inverse(Elem a) const override { return static_cast<Elem>((n_ - a) % n_); }
    std::optional<std::vector<Elem>> known_generators() const override {
        if (n_ == 1) return std::vector<Elem>{};
        return std::vector<Elem>{1};
    }
    Backing backing() const override { return Backing::Structured; }
    std::string description() const override { return "C" + std::to_string(n_); }

private:
    std::size_t n_;
};

class TableImpl final : public GroupImpl {
public:
    TableImpl(std::size_t n, std::vector<Elem> table, Elem identity, std::vector<Elem> inverses)
        : n_(n), table_(std::move(table)), identity_(identity), inverses_(std::move(inverses)) {}
    std::size_t order() const override { return n_; }
    Elem mul(Elem a, Elem b) const override { return table_[std::size_t{a} * n_ + b]; }
    Elem inverse(Elem a) const override { return inverses_[a]; }
    Elem identity() const override { return identity_; }
    Backing backing() const override { return Backing::Table; }
    std::string description() const override { return "table(" + std::to_string(n_) + ")"; }

private:
    std::size_t n_;
    std::vector<Elem> table_;
    Elem identity_;
    std::vector<Elem> inverses_;
};

class PermImpl final : public GroupImpl {
public:
    PermImpl(std::size_t degree, std::vector<std::uint32_t> flat, std::vector<Elem> gens)
        : degree_(degree), flat_(std::move(flat)), gens_(std::move(gens)) {
        n_ = degree_ == 0 ? 1 : flat_.size() / degree_;
        for (std::size_t i = 0; i < n_; ++i) index_.emplace(key(&flat_[i * degree_]), static_cast<Elem>(i));
        inverses_.resize(n_);
        std::vector<std::uint32_t> buf(degree_);
        for (std::size_t i = 0; i < n_; ++i) {
            const std::uint32_t* p = &flat_[i * degree_];
            for (std::size_t k = 0; k < degree_; ++k) buf[p[k]] = static_cast<std::uint32_t>(k);
            inverses_[i] = index_.at(key(buf.data()));
        }
    }

    std::size_t order() const override { return n_; }
    Elem mul(Elem a, Elem b) const override {
        std::vector<std::uint32_t> buf(degree_);
        const std::uint32_t* pa = &flat_[std::size_t{a} * degree_];
        const std::uint32_t* pb = &flat_[std::size_t{b} * degree_];
        for (std::size_t k = 0; k < degree_; ++k) buf[k] = pb[pa[k]];
        return index_.at(key(buf.data()));
    }
    Elem inverse(Elem a) const override { return inverses_[a]; }
    std::optional<std::vector<Elem>> known_generators() const override { return gens_; }
    std::string label(Elem a) const override {
        std::string s = "[";
        for (std::size_t k = 0; k < degree_; ++k) {
            if (k) s += ' ';
            s += std::to_string(flat_[std::size_t{a} * degree_ + k]);
        }
        return s + "]";
    }
    Backing backing() const override { return Backing::Permutation; }
    std::string description() const override {
        return "perm(degree " + std::to_string(degree_) + ", order " + std::to_string(n_) + ")";
    }

private:
    std::string key(const std::uint32_t* p) const {
        return std::string(reinterpret_cast<const char*>(p), degree_ * sizeof(std::uint32_t));
    }

    std::size_t degree_;
    std::size_t n_ = 0;
    std::vector<std::uint32_t> flat_;
    std::vector<Elem> gens_;
    std::unordered_map<std::string, Elem> index_;
    std::vector<Elem> inverses_;
};

class DirectProductImpl final : public GroupImpl {
public:
    DirectProductImpl(FiniteGroup g1, FiniteGroup g2) : g1_(std::move(g1)), g2_(std::move(g2)) {
        n2_ = g2_.order();
    }
    std::size_t order() const override { return g1_.order() * n2_; }
    Elem mul(Elem a, Elem b) const override {
        return pack(g1_.mul(a / n2_, b / n2_), g2_.mul(a % n2_, b % n2_));
    }
    Elem inverse(Elem a) const override { return pack(g1_.inverse(a / n2_), g2_.inverse(a % n2_)); }
    Elem identity() const override { return pack(g1_.identity(), g2_.identity()); }
    std::optional<std::vector<Elem>> known_generators() const override {
        std::vector<Elem> gens;
        for (Elem s : g1_.generators()) gens.push_back(pack(s, g2_.identity()));
        for (Elem s : g2_.generators()) gens.push_back(pack(g1_.identity(), s));
        return gens;
    }
    std::string label(Elem a) const override {
        return "(" + g1_.label(a / n2_) + "," + g2_.label(a % n2_) + ")";
    }
    Backing backing() const override { return Backing::Structured; }
    std::string description() const override {
        return "(" + g1_.description() + " x " + g2_.description() + ")";
    }

private:
    Elem pack(Elem a, Elem b) const { return static_cast<Elem>(std::size_t{a} * n2_ + b); }

    FiniteGroup g1_, g2_;
    std::size_t n2_;
};

class HeisenbergImpl final : public GroupImpl {
public:
    HeisenbergImpl(std::uint64_t p, unsigned k) : p_(p), k_(k) {
        n_ = *checked_pow(p, 2 * k + 1);
    }
    std::size_t order() const override { return n_; }

    Elem mul(Elem x, Elem y) const override {
        Digits a = decode(x), b = decode(y);
        Digits r{};
        std::uint64_t dot = 0;
        for (unsigned i = 0; i < 2 * k_; ++i) r[i] = (a[i] + b[i]) % p_;
        for (unsigned i = 0; i < k_; ++i) dot += a[i] * b[k_ + i];
        r[2 * k_] = (a[2 * k_] + b[2 * k_] + dot) % p_;
        return encode(r);
    }
    Elem inverse(Elem x) const override {
        Digits a = decode(x);
        Digits r{};
        std::uint64_t dot = 0;
        for (unsigned i = 0; i < k_; ++i) dot += a[i] * a[k_ + i];
        for (unsigned i = 0; i < 2 * k_; ++i) r[i] = (p_ - a[i]) % p_;
        r[2 * k_] = (dot % p_ + p_ - a[2 * k_]) % p_;
        return encode(r);
    }
    std::optional<std::vector<Elem>> known_generators() const override {
        std::vector<Elem> gens;
        for (unsigned i = 0; i < 2 * k_; ++i) {
            Digits d{};
            d[i] = 1;
            gens.push_back(encode(d));
        }
        return gens;
    }
    std::string label(Elem x) const override {
        Digits a = decode(x);
        std::string s = "(";
        for (unsigned i = 0; i <= 2 * k_; ++i) {
            if (i == k_ || i == 2 * k_) s += ';';
            else if (i) s += ',';
            s += std::to_string(a[i]);
        }
        return s + ")";
    }
    Backing backing() const override { return Backing::Structured; }
    std::string description() const override {
        return "heisenberg(" + std::to_string(p_) + "^" + std::to_string(2 * k_ + 1) + ")";
    }

private:
    using Digits = std::array<std::uint64_t, 64>;

    // digit 0 is most significant: a_0..a_{k-1}, b_0..b_{k-1}, c
    Digits decode(Elem x) const {
        Digits d{};
        for (int i = static_cast<int>(2 * k_); i >= 0; --i) {
            d[i] = x % p_;
            x = static_cast<Elem>(x / p_);
        }
        return d;
    }
    Elem encode(const Digits& d) const {
        std::uint64_t x = 0;
        for (unsigned i = 0; i <= 2 * k_; ++i) x = x * p_ + d[i];
        return static_cast<Elem>(x);
    }

    std::uint64_t p_;
    unsigned k_;
    std::size_t n_;
};

class FunctionPowerImpl final : public GroupImpl {
public:
    FunctionPowerImpl(FiniteGroup e, std::uint64_t p) : e_(std::move(e)), p_(p) {
        ne_ = e_.order();
        na_ = *checked_pow(ne_, static_cast<unsigned>(p_));
    }
    std::size_t order() const override { return na_ * p_; }

    Elem mul(Elem x, Elem y) const override {
        Coords a = decode(x), b = decode(y);
        Coords r{};
        r.c = (a.c + b.c) % p_;
        for (std::uint64_t i = 0; i < p_; ++i) r.f[i] = e_.mul(a.f[(b.c + i) % p_], b.f[i]);
        return encode(r);
    }
    Elem inverse(Elem x) const override {
        Coords a = decode(x);
        Coords r{};
        r.c = (p_ - a.c) % p_;
        // (c,f)^-1 = (-c, x -> f(x - c)^-1)
        for (std::uint64_t i = 0; i < p_; ++i) r.f[i] = e_.inverse(a.f[(i + p_ - a.c) % p_]);
        return encode(r);
    }
    Elem identity() const override {
        Coords r{};
        for (std::uint64_t i = 0; i < p_; ++i) r.f[i] = e_.identity();
        return encode(r);
    }
    std::optional<std::vector<Elem>> known_generators() const override {
        std::vector<Elem> gens;
        Coords shift{};
        shift.c = 1 % p_;
        for (std::uint64_t i = 0; i < p_; ++i) shift.f[i] = e_.identity();
        gens.push_back(encode(shift));
        for (Elem s : e_.generators()) {
            Coords d = shift;
            d.c = 0;
            d.f[0] = s;
            gens.push_back(encode(d));
        }
        return gens;
    }
    std::string label(Elem x) const override {
        Coords a = decode(x);
        std::string s = "(" + std::to_string(a.c) + ";";
        for (std::uint64_t i = 0; i < p_; ++i) {
            if (i) s += ',';
            s += e_.label(a.f[i]);
        }
        return s + ")";
    }
    Backing backing() const override { return Backing::Structured; }
    std::string description() const override {
        return "C" + std::to_string(p_) + " |x " + e_.description() + "^" + std::to_string(p_);
    }

private:
    struct Coords {
        std::uint64_t c = 0;
        std::array<Elem, 64> f{};
    };

    Coords decode(Elem x) const {
        Coords r;
        std::uint64_t rest = x % na_;
        r.c = x / na_;
        for (std::uint64_t i = p_; i-- > 0;) {
            r.f[i] = static_cast<Elem>(rest % ne_);
            rest /= ne_;
        }
        return r;
    }
    Elem encode(const Coords& r) const {
        std::uint64_t x = r.c;
        for (std::uint64_t i = 0; i < p_; ++i) x = x * ne_ + r.f[i];
        return static_cast<Elem>(x);
    }

    FiniteGroup e_;
    std::uint64_t p_;
    std::size_t ne_ = 0;
    std::size_t na_ = 0;
};

class SubgroupImpl final : public GroupImpl {
public:
    SubgroupImpl(FiniteGroup parent, std::shared_ptr<const std::vector<Elem>> members,
                 std::shared_ptr<const std::vector<Elem>> position, std::vector<Elem> local_gens)
        : parent_(std::move(parent)),
          members_(std::move(members)),
          position_(std::move(position)),
          gens_(std::move(local_gens)) {}

    std::size_t order() const override { return members_->size(); }
    Elem mul(Elem a, Elem b) const override {
        return (*position_)[parent_.mul((*members_)[a], (*members_)[b])];
    }
    Elem inverse(Elem a) const override { return (*position_)[parent_.inverse((*members_)[a])]; }
    Elem identity() const override { return (*position_)[parent_.identity()]; }
    std::optional<std::vector<Elem>> known_generators() const override {
        if (gens_.empty() && members_->size() > 1) return std::nullopt;
        return gens_;
    }
    std::string label(Elem a) const override { return parent_.label((*members_)[a]); }
    Backing backing() const override { return Backing::Structured; }
    std::string description() const override {
        return "subgroup(order " + std::to_string(members_->size()) + " of " + parent_.description() + ")";
    }

private:
    FiniteGroup parent_;
    std::shared_ptr<const std::vector<Elem>> members_;
    std::shared_ptr<const std::vector<Elem>> position_;
    std::vector<Elem> gens_;
};

ConjugacyData compute_classes(const FiniteGroup& g) {
    const std::size_t n = g.order();
    const auto& gens = g.generators();
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    std::vector<std::uint32_t> raw(n, kUnset);
    std::vector<std::vector<Elem>> orbits;
    for (Elem x = 0; x < n; ++x) {
        if (raw[x] != kUnset) continue;
        auto id = static_cast<std::uint32_t>(orbits.size());
        std::vector<Elem> orbit{x};
        raw[x] = id;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            for (Elem s : gens) {
                Elem y = g.conjugate(orbit[head], s);
                if (raw[y] == kUnset) {
                    raw[y] = id;
                    orbit.push_back(y);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }

    const Elem one = g.identity();
    std::vector<std::uint32_t> order(orbits.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        bool ia = orbits[a].front() == one, ib = orbits[b].front() == one;
        if (ia != ib) return ia;
        if (orbits[a].size() != orbits[b].size()) return orbits[a].size() < orbits[b].size();
        return orbits[a].front() < orbits[b].front();
    });

    ConjugacyData cd;
    cd.class_of.assign(n, 0);
    cd.offsets.push_back(0);
    for (std::uint32_t k = 0; k < order.size(); ++k) {
        const auto& orbit = orbits[order[k]];
        cd.reps.push_back(orbit.front());
        cd.sizes.push_back(orbit.size());
        for (Elem x : orbit) {
            cd.class_of[x] = k;
            cd.members.push_back(x);
        }
        cd.offsets.push_back(cd.members.size());
    }
    for (Elem r : cd.reps) {
        cd.inverse_class.push_back(cd.class_of[g.inverse(r)]);
        cd.rep_orders.push_back(g.element_order(r));
    }
    return cd;
}

std::vector<Elem> greedy_generators(const FiniteGroup& g) {
    Closure cl(g);
    std::vector<Elem> gens;
    for (Elem x = 0; x < g.order(); ++x) {
        if (cl.in[x]) continue;
        gens.push_back(x);
        cl.extend(g, gens);
    }
    return gens;
}

}  // namespace

// ---------------------------------------------------------------- FiniteGroup

struct FiniteGroup::State {
    std::once_flag gens_once;
    std::vector<Elem> gens;
    std::once_flag classes_once;
    ConjugacyData classes;
};

FiniteGroup::FiniteGroup(std::shared_ptr<const GroupImpl> impl)
    : impl_(std::move(impl)), state_(std::make_shared<State>()) {
    order_ = impl_->order();
    identity_ = impl_->identity();
}

Elem FiniteGroup::power(Elem a, std::uint64_t k) const {
    Elem r = identity_;
    Elem base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

std::uint64_t FiniteGroup::element_order(Elem a) const {
    std::uint64_t k = 1;
    for (Elem x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
}

const std::vector<Elem>& FiniteGroup::generators() const {
    std::call_once(state_->gens_once, [this] {
        auto known = impl_->known_generators();
        state_->gens = known ? *known : greedy_generators(*this);
    });
    return state_->gens;
}

const ConjugacyData& FiniteGroup::classes() const {
    std::call_once(state_->classes_once, [this] { state_->classes = compute_classes(*this); });
    return state_->classes;
}

std::uint64_t FiniteGroup::exponent() const {
    std::uint64_t e = 1;
    for (std::uint64_t o : classes().rep_orders) e = std::lcm(e, o);
    return e;
}

std::optional<std::uint64_t> FiniteGroup::prime() const { return prime_power_base(order_); }

// ---------------------------------------------------------------- Subgroup

struct Subgroup::Data {
    FiniteGroup parent;
    std::shared_ptr<const std::vector<Elem>> members_ptr;
    std::shared_ptr<const std::vector<Elem>> position_ptr;
    const std::vector<Elem>& members;
    const std::vector<Elem>& position;
    std::vector<Elem> gens;
    std::once_flag group_once;
    std::optional<FiniteGroup> group;

    Data(FiniteGroup p, std::shared_ptr<const std::vector<Elem>> m,
         std::shared_ptr<const std::vector<Elem>> pos, std::vector<Elem> gs)
        : parent(std::move(p)),
          members_ptr(std::move(m)),
          position_ptr(std::move(pos)),
          members(*members_ptr),
          position(*position_ptr),
          gens(std::move(gs)) {}
};

Subgroup::Subgroup(FiniteGroup parent, std::vector<Elem> members, std::vector<Elem> generators) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    auto position = std::make_shared<std::vector<Elem>>(parent.order(), kAbsent);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] >= parent.order()) throw InvalidArgument("subgroup member out of range");
        (*position)[members[i]] = static_cast<Elem>(i);
    }
    for (Elem s : generators) {
        if ((*position)[s] == kAbsent) throw InvalidArgument("subgroup generator not a member");
    }
    data_ = std::make_shared<Data>(std::move(parent),
                                   std::make_shared<const std::vector<Elem>>(std::move(members)),
                                   std::move(position), std::move(generators));
    parent_ = &data_->parent;
    members_ = &data_->members;
    position_ = data_->position.data();
}

const FiniteGroup& Subgroup::as_group() const {
    std::call_once(data_->group_once, [this] {
        std::vector<Elem> local;
        for (Elem s : data_->gens) local.push_back(data_->position[s]);
        data_->group.emplace(std::make_shared<SubgroupImpl>(data_->parent, data_->members_ptr,
                                                            data_->position_ptr, std::move(local)));
    });
    return *data_->group;
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
    if (!parent().same_as(other.parent())) return false;
    return std::all_of(members().begin(), members().end(), [&](Elem x) { return other.contains(x); });
}

bool Subgroup::is_normal() const {
    const auto& g = parent();
    const auto& h = as_group();
    for (Elem s : g.generators()) {
        for (Elem t : h.generators()) {
            if (!contains(g.conjugate(to_parent(t), s))) return false;
        }
    }
    return true;
}

bool Subgroup::is_closed() const {
    const auto& g = parent();
    if (!contains(g.identity())) return false;
    const auto& m = members();
    for (Elem a : m) {
        if (!contains(g.inverse(a))) return false;
        for (Elem b : m) {
            if (!contains(g.mul(a, b))) return false;
        }
    }
    return true;
}

bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent().same_as(b.parent()) && a.members() == b.members();
}

// ---------------------------------------------------------------- constructors

FiniteGroup cyclic_group(std::size_t n, std::size_t cap) {
    if (n == 0) throw InvalidArgument("cyclic_group: n must be positive");
    enforce_cap(n, cap, "cyclic group");
    return FiniteGroup(std::make_shared<CyclicImpl>(n));
}

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2, std::size_t cap) {
    std::size_t n;
    if (__builtin_mul_overflow(g1.order(), g2.order(), &n) || n > 0xffffffffu) {
        throw ResourceLimit("direct product order overflows");
    }
    enforce_cap(n, cap, "direct product");
    return FiniteGroup(std::make_shared<DirectProductImpl>(g1, g2));
}

FiniteGroup heisenberg_extraspecial(std::uint64_t p, unsigned m, std::size_t cap) {
    if (p == 2 || !is_prime(p)) throw InvalidArgument("heisenberg_extraspecial: p must be an odd prime");
    if (m < 1) throw InvalidArgument("heisenberg_extraspecial: m must be at least 1");
    if (m == 1) return cyclic_group(p, cap);
    if (2 * (m - 1) + 1 > 63) throw ResourceLimit("extraspecial group too large");
    auto n = checked_pow(p, 2 * m - 1);
    if (!n || *n > cap) {
        throw ResourceLimit("extraspecial group of order " + std::to_string(p) + "^" +
                            std::to_string(2 * m - 1) + " exceeds the cap of " + std::to_string(cap));
    }
    return FiniteGroup(std::make_shared<HeisenbergImpl>(p, m - 1));
}

FiniteGroup function_power_semidirect(const FiniteGroup& e, std::uint64_t p, std::size_t cap) {
    if (!is_prime(p)) throw InvalidArgument("function_power_semidirect: p must be prime");
    if (p > 64) throw ResourceLimit("function_power_semidirect: p above 64 is not supported");
    auto na = checked_pow(e.order(), static_cast<unsigned>(p));
    std::uint64_t n = 0;
    if (!na || __builtin_mul_overflow(*na, p, &n) || n > cap) {
        throw ResourceLimit("function power C" + std::to_string(p) + " |x " + e.description() + "^" +
                            std::to_string(p) + " exceeds the cap of " + std::to_string(cap));
    }
    return FiniteGroup(std::make_shared<FunctionPowerImpl>(e, p));
}

FiniteGroup group_from_perm_generators(const PermGenerators& pg, std::size_t cap) {
    const std::size_t d = pg.degree;
    for (std::size_t gi = 0; gi < pg.generators.size(); ++gi) {
        const auto& img = pg.generators[gi];
        if (img.size() != d) throw InvalidArgument("generator " + std::to_string(gi) + " has wrong length");
        std::vector<char> seen(d, 0);
        for (std::uint32_t v : img) {
            if (v >= d || seen[v]) throw InvalidArgument("generator " + std::to_string(gi) + " is not a bijection");
            seen[v] = 1;
        }
    }
    std::vector<std::uint32_t> flat(d);
    std::iota(flat.begin(), flat.end(), 0u);
    std::unordered_map<std::string, Elem> index;
    auto key = [d](const std::uint32_t* p) {
        return std::string(reinterpret_cast<const char*>(p), d * sizeof(std::uint32_t));
    };
    index.emplace(key(flat.data()), 0);
    std::vector<std::uint32_t> buf(d);
    std::size_t count = 1;
    for (std::size_t head = 0; head < count; ++head) {
        for (const auto& s : pg.generators) {
            for (std::size_t k = 0; k < d; ++k) buf[k] = s[flat[head * d + k]];
            if (index.emplace(key(buf.data()), static_cast<Elem>(count)).second) {
                flat.insert(flat.end(), buf.begin(), buf.end());
                ++count;
                enforce_cap(count, cap, "permutation group");
            }
        }
    }
    std::vector<Elem> gens;
    for (const auto& s : pg.generators) {
        Elem idx = index.at(key(s.data()));
        if (idx != 0 && std::find(gens.begin(), gens.end(), idx) == gens.end()) gens.push_back(idx);
    }
    if (d == 0) flat.clear();
    return FiniteGroup(std::make_shared<PermImpl>(d, std::move(flat), std::move(gens)));
}

FiniteGroup group_from_table(std::vector<std::vector<Elem>> table) {
    const std::size_t n = table.size();
    if (n == 0) throw InvalidArgument("empty multiplication table");
    std::vector<Elem> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) throw InvalidArgument("row " + std::to_string(i) + " has wrong length");
        std::vector<char> seen(n, 0);
        for (Elem v : table[i]) {
            if (v >= n || seen[v]) throw InvalidArgument("row " + std::to_string(i) + " is not a permutation");
            seen[v] = 1;
        }
        flat.insert(flat.end(), table[i].begin(), table[i].end());
    }
    std::optional<Elem> identity;
    for (Elem c = 0; c < n && !identity; ++c) {
        bool ok = true;
        for (Elem a = 0; a < n && ok; ++a) ok = flat[c * n + a] == a && flat[a * n + c] == a;
        if (ok) identity = c;
    }
    if (!identity) throw InvalidArgument("table has no two-sided identity");
    std::vector<Elem> inverses(n);
    for (Elem a = 0; a < n; ++a) {
        bool found = false;
        for (Elem b = 0; b < n && !found; ++b) {
            if (flat[a * n + b] == *identity && flat[b * n + a] == *identity) {
                inverses[a] = b;
                found = true;
            }
        }
        if (!found) throw InvalidArgument("element " + std::to_string(a) + " has no inverse");
    }
    FiniteGroup g(std::make_shared<TableImpl>(n, std::move(flat), *identity, std::move(inverses)));
    if (!check_group_axioms(g)) throw InvalidArgument("table is not associative");
    return g;
}

namespace {

std::vector<std::uint64_t> parse_ints(const std::string& line, int lineno) {
    std::istringstream ss(line);
    std::vector<std::uint64_t> out;
    std::string tok;
    while (ss >> tok) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &pos);
        } catch (const std::exception&) {
            throw ParseError("expected a nonnegative integer, got '" + tok + "'", lineno);
        }
        if (pos != tok.size() || tok[0] == '-') {
            throw ParseError("expected a nonnegative integer, got '" + tok + "'", lineno);
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

FiniteGroup parse_group(std::istream& in, std::size_t cap) {
    std::string line;
    int lineno = 0;
    std::vector<std::pair<int, std::string>> lines;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.emplace_back(lineno, line);
    }
    if (lines.empty()) throw ParseError("empty group file", 0);

    std::istringstream header(lines[0].second);
    std::string kind;
    std::size_t size = 0;
    std::string extra;
    if (!(header >> kind >> size) || (header >> extra)) {
        throw ParseError("header must be 'perm <degree>' or 'table <n>'", lines[0].first);
    }

    if (kind == "perm") {
        PermGenerators pg;
        pg.degree = size;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            auto [ln, text] = lines[i];
            auto v = parse_ints(text, ln);
            if (v.size() != size) {
                throw ParseError("generator needs " + std::to_string(size) + " images, got " +
                                     std::to_string(v.size()),
                                 ln);
            }
            std::vector<char> seen(size, 0);
            std::vector<std::uint32_t> img;
            for (auto x : v) {
                if (x >= size) throw ParseError("image " + std::to_string(x) + " out of range", ln);
                if (seen[x]) throw ParseError("generator is not a bijection (repeated image " + std::to_string(x) + ")", ln);
                seen[x] = 1;
                img.push_back(static_cast<std::uint32_t>(x));
            }
            pg.generators.push_back(std::move(img));
        }
        return group_from_perm_generators(pg, cap);
    }
    if (kind == "table") {
        if (size == 0) throw ParseError("table size must be positive", lines[0].first);
        enforce_cap(size, cap, "table group");
        if (lines.size() != size + 1) {
            throw ParseError("expected " + std::to_string(size) + " table rows, got " +
                                 std::to_string(lines.size() - 1),
                             lines.back().first);
        }
        std::vector<std::vector<Elem>> table;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            auto [ln, text] = lines[i];
            auto v = parse_ints(text, ln);
            if (v.size() != size) throw ParseError("table row needs " + std::to_string(size) + " entries", ln);
            std::vector<char> seen(size, 0);
            std::vector<Elem> row;
            for (auto x : v) {
                if (x >= size) throw ParseError("entry " + std::to_string(x) + " out of range", ln);
                if (seen[x]) throw ParseError("row is not a permutation (repeated " + std::to_string(x) + ")", ln);
                seen[x] = 1;
                row.push_back(static_cast<Elem>(x));
            }
            table.push_back(std::move(row));
        }
        try {
            return group_from_table(std::move(table));
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), lines[0].first);
        }
    }
    throw ParseError("unknown group format '" + kind + "'", lines[0].first);
}

FiniteGroup load_group_file(const std::string& path, std::size_t cap) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open group file " + path);
    return parse_group(in, cap);
}

void write_group_table(std::ostream& out, const FiniteGroup& g) {
    const std::size_t n = g.order();
    out << "table " << n << "\n";
    for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) out << (b ? " " : "") << g.mul(a, b);
        out << "\n";
    }
}

void write_regular_perm(std::ostream& out, const FiniteGroup& g) {
    const std::size_t n = g.order();
    out << "perm " << n << "\n";
    out << "# right regular representation of " << g.description() << "\n";
    for (Elem s : g.generators()) {
        for (Elem x = 0; x < n; ++x) out << (x ? " " : "") << g.mul(x, s);
        out << "\n";
    }
}

bool check_group_axioms(const FiniteGroup& g, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = g.order();
    const Elem one = g.identity();
    for (Elem x = 0; x < n; ++x) {
        if (g.mul(one, x) != x || g.mul(x, one) != x) return false;
        if (g.mul(g.inverse(x), x) != one || g.mul(x, g.inverse(x)) != one) return false;
    }
    if (n <= 512) {
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b) {
                Elem ab = g.mul(a, b);
                for (Elem c = 0; c < n; ++c) {
                    if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) return false;
                }
            }
        return true;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
    for (std::size_t i = 0; i < samples; ++i) {
        Elem a = pick(rng), b = pick(rng), c = pick(rng);
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
    }
    return true;
}

// ---------------------------------------------------------------- subgroups

Subgroup whole_group(const FiniteGroup& g) {
    std::vector<Elem> all(g.order());
    std::iota(all.begin(), all.end(), 0u);
    return Subgroup(g, std::move(all), g.generators());
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup(g, {g.identity()}); }

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
    std::vector<Elem> gs;
    for (Elem s : gens) {
        if (s != g.identity() && std::find(gs.begin(), gs.end(), s) == gs.end()) gs.push_back(s);
    }
    Closure cl(g);
    cl.extend(g, gs);
    return Subgroup(g, std::move(cl.list), gs);
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> seeds) {
    std::vector<Elem> gs;
    for (Elem s : seeds) {
        if (s != g.identity() && std::find(gs.begin(), gs.end(), s) == gs.end()) gs.push_back(s);
    }
    Closure cl(g);
    cl.extend(g, gs);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < gs.size(); ++i) {
            for (Elem s : g.generators()) {
                Elem c = g.conjugate(gs[i], s);
                if (!cl.in[c]) {
                    gs.push_back(c);
                    cl.extend(g, gs);
                    changed = true;
                }
            }
        }
    }
    return Subgroup(g, std::move(cl.list), gs);
}

Subgroup center(const FiniteGroup& g) {
    const auto& cd = g.classes();
    std::vector<Elem> z;
    for (std::size_t k = 0; k < cd.num_classes(); ++k) {
        if (cd.sizes[k] == 1) z.push_back(cd.reps[k]);
    }
    return Subgroup(g, std::move(z));
}

std::vector<Subgroup> normal_subgroups_between(const FiniteGroup& g, const Subgroup& lower,
                                               std::optional<std::uint64_t> p, const Subgroup* within) {
    if (!lower.parent().same_as(g)) throw InvalidArgument("lower is not a subgroup of g");
    if (!lower.is_normal()) throw InvalidArgument("lower is not normal in g");
    if (p && !is_prime(*p)) throw InvalidArgument("index must be prime");
    if (within && !lower.is_subset_of(*within)) return {};

    std::vector<Elem> lower_gens;
    for (Elem s : lower.as_group().generators()) lower_gens.push_back(lower.to_parent(s));

    const std::size_t n = g.order();
    std::vector<char> covered(n, 0);
    std::vector<Subgroup> out;
    for (Elem x = 0; x < n; ++x) {
        if (lower.contains(x) || covered[x]) continue;
        if (within && !within->contains(x)) continue;
        // k = order of x modulo lower
        std::uint64_t k = 1;
        Elem xk = x;
        while (!lower.contains(xk)) {
            xk = g.mul(xk, x);
            ++k;
            if (p && k > *p) break;
        }
        if (p ? k != *p : !is_prime(k)) continue;

        // x lower must generate a normal subgroup: each conjugate of x lies in some x^j lower.
        std::vector<Elem> inv_powers{g.identity()};
        for (std::uint64_t j = 1; j < k; ++j) inv_powers.push_back(g.mul(inv_powers.back(), g.inverse(x)));
        bool normal = true;
        for (Elem s : g.generators()) {
            Elem y = g.conjugate(x, s);
            bool hit = false;
            for (std::uint64_t j = 1; j < k && !hit; ++j) hit = lower.contains(g.mul(inv_powers[j], y));
            if (!hit) {
                normal = false;
                break;
            }
        }
        if (!normal) continue;

        std::vector<Elem> members;
        Elem xj = g.identity();
        for (std::uint64_t j = 0; j < k; ++j) {
            for (Elem l : lower.members()) {
                Elem y = g.mul(xj, l);
                members.push_back(y);
                if (j > 0) covered[y] = 1;
            }
            xj = g.mul(xj, x);
        }
        auto gens = lower_gens;
        gens.push_back(x);
        out.emplace_back(g, std::move(members), std::move(gens));
    }
    return out;
}

std::vector<Subgroup> all_normal_subgroups(const FiniteGroup& g, std::size_t max_count) {
    const auto& cd = g.classes();
    std::set<std::vector<Elem>> seen;
    std::vector<Subgroup> found{trivial_subgroup(g)};
    seen.insert(found.front().members());
    for (std::size_t head = 0; head < found.size(); ++head) {
        // copy: found may reallocate below
        Subgroup n = found[head];
        std::vector<Elem> base;
        for (Elem s : n.as_group().generators()) base.push_back(n.to_parent(s));
        for (std::size_t k = 1; k < cd.num_classes(); ++k) {
            if (n.contains(cd.reps[k])) continue;
            auto seeds = base;
            seeds.push_back(cd.reps[k]);
            Subgroup m = normal_closure(g, seeds);
            if (seen.insert(m.members()).second) {
                found.push_back(std::move(m));
                if (found.size() > max_count) {
                    throw ResourceLimit("more than " + std::to_string(max_count) + " normal subgroups");
                }
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members() < b.members();
    });
    return found;
}

bool is_nilpotent(const FiniteGroup& g) {
    const auto& cd = g.classes();
    for (auto [p, k] : factorize(g.order())) {
        std::uint64_t sylow = *checked_pow(p, k);
        std::uint64_t count = 0;
        for (std::size_t c = 0; c < cd.num_classes(); ++c) {
            if (sylow % cd.rep_orders[c] == 0) count += cd.sizes[c];
        }
        if (count != sylow) return false;
    }
    return true;
}

}  // namespace pchar
