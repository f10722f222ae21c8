#include "pchar/verifiers.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "pchar/arith.hpp"
#include "pchar/errors.hpp"

namespace pchar {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "unknown";
}

// ---------------------------------------------------------------- context

GroupContext::GroupContext(std::string descriptor, FiniteGroup g, TableOptions opts)
    : descriptor_(std::move(descriptor)), group_(std::move(g)), opts_(opts) {}

const CharacterTable& GroupContext::table() {
    if (!table_) {
        TableOptions o = opts_;
        if (budget_s_) {
            o.deadline = std::chrono::steady_clock::now() +
                         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(*budget_s_));
        }
        table_ = CharacterTable::compute(group_, o);
    }
    return *table_;
}

EtaEngine& GroupContext::eta() {
    if (!eta_) eta_ = std::make_unique<EtaEngine>(table());
    return *eta_;
}

const Subgroup& GroupContext::center() {
    if (!center_) center_ = pchar::center(group_);
    return *center_;
}

std::vector<Subgroup> GroupContext::normal_subgroups_inside(const Subgroup* within) {
    if (!within) {
        if (!all_normal_) all_normal_ = all_normal_subgroups(group_);
        return *all_normal_;
    }
    std::set<std::vector<Elem>> seen;
    std::vector<Subgroup> found{trivial_subgroup(group_)};
    seen.insert(found.front().members());
    for (std::size_t head = 0; head < found.size(); ++head) {
        Subgroup low = found[head];
        for (auto& y : normal_subgroups_between(group_, low, std::nullopt, within)) {
            if (seen.insert(y.members()).second) found.push_back(std::move(y));
        }
    }
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members() < b.members();
    });
    return found;
}

const std::vector<char>& GroupContext::vanishes_off_center() {
    if (!vanishing_) {
        const auto& t = table();
        const auto& cd = group_.classes();
        const std::uint32_t phi = t.ring().phi();
        std::vector<char> v(t.size(), 1);
        for (std::size_t i = 0; i < t.size(); ++i) {
            for (std::size_t k = 0; k < t.size() && v[i]; ++k) {
                if (cd.sizes[k] == 1) continue;
                const std::int64_t* c = t.coeffs(i, k);
                if (std::any_of(c, c + phi, [](std::int64_t x) { return x != 0; })) v[i] = 0;
            }
        }
        vanishing_ = std::move(v);
    }
    return *vanishing_;
}

// ---------------------------------------------------------------- helpers

namespace {

class Stopwatch {
public:
    explicit Stopwatch(VerificationReport& r) : r_(r), start_(std::chrono::steady_clock::now()) {}
    ~Stopwatch() {
        r_.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    VerificationReport& r_;
    std::chrono::steady_clock::time_point start_;
};

VerificationReport make_report(const std::string& statement, const GroupContext& ctx) {
    VerificationReport r;
    r.statement = statement;
    r.group = ctx.descriptor();
    return r;
}

void skip(VerificationReport& r, const std::string& reason) {
    r.status = Status::Skipped;
    r.detail["reason"] = reason;
}

bool is_zero(const std::int64_t* c, std::uint32_t phi) {
    return std::all_of(c, c + phi, [](std::int64_t x) { return x == 0; });
}

bool is_integer(const std::int64_t* c, std::uint32_t phi, std::int64_t v) {
    return c[0] == v && std::all_of(c + 1, c + phi, [](std::int64_t x) { return x == 0; });
}

std::optional<std::size_t> first_noncentral_nonzero(const CharacterTable& t, std::size_t i) {
    const auto& cd = t.group().classes();
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (cd.sizes[k] > 1 && !is_zero(t.coeffs(i, k), t.ring().phi())) return k;
    }
    return std::nullopt;
}

// Classes k with |chi_i(k)| = chi_i(1).
std::vector<char> center_classes(const CharacterTable& t, std::size_t i) {
    const std::uint32_t phi = t.ring().phi();
    const auto d2 = static_cast<std::int64_t>(t.degree(i) * t.degree(i));
    std::vector<std::int64_t> conj(phi), prod(phi);
    std::vector<char> keep(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        t.ring().conj(t.coeffs(i, k), conj.data());
        t.ring().mul(t.coeffs(i, k), conj.data(), prod.data());
        keep[k] = is_integer(prod.data(), phi, d2);
    }
    return keep;
}

Subgroup classes_to_subgroup(const FiniteGroup& g, const std::vector<char>& keep) {
    const auto& cd = g.classes();
    std::vector<Elem> members;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (!keep[k]) continue;
        auto m = cd.class_members(k);
        members.insert(members.end(), m.begin(), m.end());
    }
    return Subgroup(g, std::move(members));
}

std::optional<unsigned> log_base(std::uint64_t d, std::uint64_t p) {
    unsigned t = 0;
    while (d % p == 0) {
        d /= p;
        ++t;
    }
    if (d != 1) return std::nullopt;
    return t;
}

bool rows_equal_at(const CharacterTable& t, std::size_t i, std::size_t a, std::size_t b) {
    const std::uint32_t phi = t.ring().phi();
    return std::equal(t.coeffs(i, a), t.coeffs(i, a) + phi, t.coeffs(i, b));
}

bool is_invariant(const CharacterTable& nt, const Subgroup& n, std::size_t row) {
    const FiniteGroup& g = n.parent();
    const auto& ncd = n.as_group().classes();
    for (Elem x : g.generators()) {
        for (std::size_t c = 0; c < ncd.num_classes(); ++c) {
            Elem h = n.to_parent(ncd.reps[c]);
            std::size_t c2 = ncd.class_of[n.to_local(g.conjugate(h, x))];
            if (!rows_equal_at(nt, row, c, c2)) return false;
        }
    }
    return true;
}

std::size_t extension_count(const CharacterTable& gt, const CharacterTable& nt, const Subgroup& n,
                            std::size_t row) {
    return decompose(induce(nt.row(row), n), gt).eta();
}

nlohmann::json members_json(const Subgroup& s) { return s.members(); }

Subgroup subgroup_from_json(const FiniteGroup& g, const nlohmann::json& j) {
    return Subgroup(g, j.get<std::vector<Elem>>());
}

}  // namespace

// ---------------------------------------------------------------- verifiers

VerificationReport verify_eta_dichotomy(GroupContext& ctx) {
    auto r = make_report("theorem-a", ctx);
    Stopwatch sw(r);
    auto p = ctx.group().prime();
    if (!p) {
        skip(r, "not a p-group");
        return r;
    }
    const auto& t = ctx.table();
    auto faithful = t.faithful_rows();
    if (faithful.empty()) {
        skip(r, "no faithful irreducible character (center not cyclic)");
        return r;
    }
    auto& eng = ctx.eta();
    std::uint64_t pairs = 0;
    for (std::size_t a = 0; a < faithful.size(); ++a) {
        for (std::size_t b = a; b < faithful.size(); ++b) {
            const std::size_t i = faithful[a], j = faithful[b];
            const std::size_t eta = eng.eta(i, j);
            ++pairs;
            ++r.eta_histogram[eta];
            if (!(eta == 1 || 2 * eta > *p)) {
                r.fail({{"kind", "eta_dichotomy"}, {"rows", {i, j}}, {"eta", eta}, {"p", *p}});
            }
        }
    }
    r.detail["p"] = *p;
    r.detail["faithful_characters"] = faithful.size();
    r.detail["pairs"] = pairs;
    return r;
}

VerificationReport verify_small_eta_vanishing(GroupContext& ctx) {
    auto r = make_report("main-lemma", ctx);
    Stopwatch sw(r);
    auto p = ctx.group().prime();
    if (!p) {
        skip(r, "not a p-group");
        return r;
    }
    const auto& t = ctx.table();
    auto faithful = t.faithful_rows();
    if (faithful.empty()) {
        skip(r, "no faithful irreducible character (center not cyclic)");
        return r;
    }
    auto& eng = ctx.eta();
    const auto& van = ctx.vanishes_off_center();
    std::uint64_t pairs = 0, small = 0;
    for (std::size_t a = 0; a < faithful.size(); ++a) {
        for (std::size_t b = a; b < faithful.size(); ++b) {
            const std::size_t i = faithful[a], j = faithful[b];
            const std::size_t eta = eng.eta(i, j);
            ++pairs;
            if (2 * eta > *p) continue;
            ++small;
            ++r.eta_histogram[eta];
            for (std::size_t row : {i, j}) {
                if (!van[row]) {
                    r.fail({{"kind", "small_eta_vanishing"},
                            {"rows", {i, j}},
                            {"eta", eta},
                            {"row", row},
                            {"class", *first_noncentral_nonzero(t, row)}});
                }
            }
            if (eta != 1) r.fail({{"kind", "small_eta_not_one"}, {"rows", {i, j}}, {"eta", eta}, {"p", *p}});
        }
    }
    r.detail["p"] = *p;
    r.detail["pairs"] = pairs;
    r.detail["pairs_with_small_eta"] = small;
    return r;
}

VerificationReport verify_chief_factor_vanishing(GroupContext& ctx) {
    auto r = make_report("lemma-2-2", ctx);
    Stopwatch sw(r);
    auto p = ctx.group().prime();
    if (!p) {
        skip(r, "not a p-group");
        return r;
    }
    const FiniteGroup& g = ctx.group();
    const auto& t = ctx.table();
    const std::uint32_t phi = t.ring().phi();
    std::map<std::vector<char>, std::vector<Subgroup>> lowers_by_center;
    std::map<std::vector<Elem>, std::vector<Subgroup>> uppers;
    std::uint64_t configurations = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        auto keep = center_classes(t, i);
        if (std::all_of(keep.begin(), keep.end(), [](char c) { return c != 0; })) continue;
        Subgroup zchi = classes_to_subgroup(g, keep);
        auto it = lowers_by_center.find(keep);
        if (it == lowers_by_center.end()) {
            it = lowers_by_center.emplace(keep, ctx.normal_subgroups_inside(&zchi)).first;
        }
        for (const Subgroup& z : it->second) {
            auto up = uppers.find(z.members());
            if (up == uppers.end()) up = uppers.emplace(z.members(), normal_subgroups_between(g, z, *p)).first;
            for (const Subgroup& y : up->second) {
                if (y.is_subset_of(zchi)) continue;
                ++configurations;
                const auto& cd = g.classes();
                for (std::size_t k = 0; k < t.size(); ++k) {
                    if (!y.contains(cd.reps[k]) || z.contains(cd.reps[k])) continue;
                    if (!is_zero(t.coeffs(i, k), phi)) {
                        r.fail({{"kind", "chief_factor_vanishing"},
                                {"row", i},
                                {"lower", members_json(z)},
                                {"upper", members_json(y)},
                                {"class", k}});
                        break;
                    }
                }
            }
        }
    }
    r.detail["p"] = *p;
    r.detail["configurations"] = configurations;
    return r;
}

VerificationReport verify_invariant_extension_count(GroupContext& ctx, const Subgroup& n) {
    auto r = make_report("lemma-4-1", ctx);
    Stopwatch sw(r);
    if (!n.parent().same_as(ctx.group())) throw InvalidArgument("subgroup of a different group");
    if (!n.is_normal()) throw InvalidArgument("subgroup is not normal");
    auto p = ctx.group().prime();
    if (!p) {
        skip(r, "not a p-group");
        return r;
    }
    const auto& t = ctx.table();
    CharacterTable nt = CharacterTable::compute(n.as_group(), ctx.table_options());
    std::uint64_t invariant = 0;
    for (std::size_t row = 0; row < nt.size(); ++row) {
        if (!is_invariant(nt, n, row)) continue;
        ++invariant;
        const std::size_t count = extension_count(t, nt, n, row);
        ++r.eta_histogram[count];
        if (!(count == 1 || count >= *p)) {
            r.fail({{"kind", "invariant_extension_count"},
                    {"normal_subgroup", members_json(n)},
                    {"phi_row", row},
                    {"count", count},
                    {"p", *p}});
        }
    }
    r.detail["p"] = *p;
    r.detail["normal_subgroup_order"] = n.order();
    r.detail["invariant_characters"] = invariant;
    return r;
}

VerificationReport verify_invariant_extension_count_all(GroupContext& ctx) {
    auto r = make_report("lemma-4-1", ctx);
    Stopwatch sw(r);
    auto p = ctx.group().prime();
    if (!p) {
        skip(r, "not a p-group");
        return r;
    }
    std::uint64_t triples = 0, subgroups = 0;
    for (const Subgroup& n : ctx.normal_subgroups_inside(nullptr)) {
        auto sub = verify_invariant_extension_count(ctx, n);
        ++subgroups;
        triples += sub.detail["invariant_characters"].get<std::uint64_t>();
        for (auto& [k, v] : sub.eta_histogram) r.eta_histogram[k] += v;
        for (auto& w : sub.witnesses) r.fail(std::move(w));
    }
    r.detail["p"] = *p;
    r.detail["normal_subgroups"] = subgroups;
    r.detail["triples"] = triples;
    return r;
}

VerificationReport verify_pgroup_degree_bound(GroupContext& ctx) {
    auto r = make_report("lemma-5-1", ctx);
    Stopwatch sw(r);
    auto p = ctx.group().prime();
    if (!p) {
        skip(r, "not a p-group");
        return r;
    }
    const auto& t = ctx.table();
    auto& eng = ctx.eta();
    std::uint64_t checked = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::size_t m = eng.eta(i, t.conjugate_row(i));
        if (m <= 1) continue;
        ++checked;
        ++r.eta_histogram[m];
        auto texp = log_base(t.degree(i), *p);
        const bool ok = *p < 2 * m + 1 && texp && *texp >= 1 && *texp + 2 <= m;
        if (!ok) {
            r.fail({{"kind", "pgroup_degree_bound"}, {"row", i}, {"degree", t.degree(i)}, {"m", m}, {"p", *p}});
        }
    }
    r.detail["p"] = *p;
    r.detail["characters_checked"] = checked;
    return r;
}

// ---------------------------------------------------------------- permissible degrees

PermissibleDegrees::PermissibleDegrees(std::uint64_t n, ExponentBound bound) : n_(n) {
    if (n == 0) throw InvalidArgument("n must be positive");
    for (std::uint64_t q = 2; q < 2 * n + 1; ++q) {
        if (is_prime(q)) primes_.push_back(q);
    }
    max_exp_ = static_cast<std::int64_t>(n) - (bound == ExponentBound::Inclusive ? 2 : 3);
}

bool PermissibleDegrees::contains(std::uint64_t d) const {
    if (d == 0) return false;
    if (d == 1) return true;
    if (max_exp_ <= 0) return false;
    for (auto [q, t] : factorize(d)) {
        if (q >= 2 * n_ + 1 || static_cast<std::int64_t>(t) > max_exp_) return false;
    }
    return true;
}

std::uint64_t PermissibleDegrees::size() const {
    if (max_exp_ <= 0) return 1;
    unsigned __int128 s = 1;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        s *= static_cast<std::uint64_t>(max_exp_ + 1);
        if (s > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(s);
}

std::optional<std::vector<std::uint64_t>> PermissibleDegrees::elements(std::uint64_t limit) const {
    if (size() > limit) return std::nullopt;
    std::vector<std::uint64_t> out{1};
    if (max_exp_ > 0) {
        for (std::uint64_t q : primes_) {
            const std::size_t before = out.size();
            for (std::size_t i = 0; i < before; ++i) {
                unsigned __int128 v = out[i];
                for (std::int64_t t = 1; t <= max_exp_; ++t) {
                    v *= q;
                    if (v > UINT64_MAX) throw ResourceLimit("permissible degree exceeds 64 bits");
                    out.push_back(static_cast<std::uint64_t>(v));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

VerificationReport verify_nilpotent_degree_bound(GroupContext& ctx, ExponentBound asserted) {
    auto r = make_report("theorem-b", ctx);
    Stopwatch sw(r);
    if (!is_nilpotent(ctx.group())) {
        skip(r, "group is not nilpotent");
        return r;
    }
    const auto& t = ctx.table();
    auto& eng = ctx.eta();
    const char* bound_name = asserted == ExponentBound::Inclusive ? "inclusive" : "strict";
    nlohmann::json strict_misses = nlohmann::json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::size_t n = eng.eta(i, t.conjugate_row(i));
        ++r.eta_histogram[n];
        const std::uint64_t deg = t.degree(i);
        if (!PermissibleDegrees(n, asserted).contains(deg)) {
            r.fail({{"kind", "degree_bound"}, {"row", i}, {"degree", deg}, {"n", n}, {"bound", bound_name}});
        }
        if (!PermissibleDegrees(n, ExponentBound::Strict).contains(deg)) {
            strict_misses.push_back({{"row", i}, {"degree", deg}, {"n", n}});
        }
    }
    r.detail["bound"] = bound_name;
    r.detail["characters"] = t.size();
    r.detail["strict_bound"] = {{"holds", strict_misses.empty()},
                                {"misses", strict_misses.size()},
                                {"examples", nlohmann::json(std::vector<nlohmann::json>(
                                                 strict_misses.begin(),
                                                 strict_misses.begin() + std::min<std::ptrdiff_t>(
                                                                             10, strict_misses.size())))}};
    return r;
}

// ---------------------------------------------------------------- survey

std::size_t EtaSurvey::flagged() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const SurveyEntry& e) { return e.flagged; }));
}

EtaSurvey conjecture_scan(GroupContext& ctx) {
    EtaSurvey s;
    s.group = ctx.descriptor();
    auto p = ctx.group().prime();
    if (!p || *p == 2) return s;
    s.p = *p;
    const auto& t = ctx.table();
    auto faithful = t.faithful_rows();
    auto& eng = ctx.eta();
    const auto& van = ctx.vanishes_off_center();
    for (std::size_t a = 0; a < faithful.size(); ++a) {
        for (std::size_t b = a; b < faithful.size(); ++b) {
            SurveyEntry e;
            e.i = faithful[a];
            e.j = faithful[b];
            const auto& sum = eng.summary(e.i, e.j);
            e.eta = sum.eta;
            e.multiplicities = sum.multiplicities;
            e.degree_i = t.degree(e.i);
            e.degree_j = t.degree(e.j);
            e.vanishes_i = van[e.i];
            e.vanishes_j = van[e.j];
            e.flagged = 2 * e.eta - 1 > *p && e.eta < *p;
            s.entries.push_back(std::move(e));
        }
    }
    return s;
}

VerificationReport conjecture_scan_report(GroupContext& ctx) {
    auto r = make_report("conjecture-scan", ctx);
    Stopwatch sw(r);
    auto p = ctx.group().prime();
    if (!p || *p == 2) {
        skip(r, p ? "scan needs an odd prime" : "not a p-group");
        return r;
    }
    EtaSurvey s = conjecture_scan(ctx);
    nlohmann::json flags = nlohmann::json::array();
    for (const auto& e : s.entries) {
        ++r.eta_histogram[e.eta];
        if (e.flagged) {
            flags.push_back({{"label", "CONJECTURE COUNTEREXAMPLE CANDIDATE"},
                             {"rows", {e.i, e.j}},
                             {"eta", e.eta},
                             {"multiplicities", e.multiplicities}});
        }
    }
    r.detail["p"] = *p;
    r.detail["pairs"] = s.entries.size();
    r.detail["flagged"] = std::move(flags);
    return r;
}

// ---------------------------------------------------------------- witnesses

bool witness_reproduces(const nlohmann::json& w, GroupContext& ctx) {
    const std::string kind = w.at("kind").get<std::string>();
    const FiniteGroup& g = ctx.group();
    const auto& t = ctx.table();
    auto p = g.prime();
    auto row_pair = [&] { return std::make_pair(w.at("rows")[0].get<std::size_t>(), w.at("rows")[1].get<std::size_t>()); };

    if (kind == "eta_dichotomy") {
        auto [i, j] = row_pair();
        if (!p || !t.is_faithful(i) || !t.is_faithful(j)) return false;
        const std::size_t eta = decompose_product(t, i, j).eta();
        return !(eta == 1 || 2 * eta > *p);
    }
    if (kind == "small_eta_vanishing" || kind == "small_eta_not_one") {
        auto [i, j] = row_pair();
        if (!p || !t.is_faithful(i) || !t.is_faithful(j)) return false;
        const std::size_t eta = decompose_product(t, i, j).eta();
        if (2 * eta > *p) return false;
        if (kind == "small_eta_not_one") return eta != 1;
        const auto row = w.at("row").get<std::size_t>();
        const auto k = w.at("class").get<std::size_t>();
        return g.classes().sizes[k] > 1 && !is_zero(t.coeffs(row, k), t.ring().phi());
    }
    if (kind == "chief_factor_vanishing") {
        const auto i = w.at("row").get<std::size_t>();
        const auto k = w.at("class").get<std::size_t>();
        Subgroup z = subgroup_from_json(g, w.at("lower"));
        Subgroup y = subgroup_from_json(g, w.at("upper"));
        if (!p || !z.is_closed() || !y.is_closed() || !z.is_normal() || !y.is_normal()) return false;
        if (!z.is_subset_of(y) || y.order() != z.order() * *p) return false;
        Subgroup zchi = classes_to_subgroup(g, center_classes(t, i));
        if (!z.is_subset_of(zchi) || y.is_subset_of(zchi)) return false;
        const Elem rep = g.classes().reps[k];
        return y.contains(rep) && !z.contains(rep) && !is_zero(t.coeffs(i, k), t.ring().phi());
    }
    if (kind == "invariant_extension_count") {
        Subgroup n = subgroup_from_json(g, w.at("normal_subgroup"));
        if (!p || !n.is_closed() || !n.is_normal()) return false;
        CharacterTable nt = CharacterTable::compute(n.as_group(), ctx.table_options());
        const auto row = w.at("phi_row").get<std::size_t>();
        if (row >= nt.size() || !is_invariant(nt, n, row)) return false;
        const std::size_t count = extension_count(t, nt, n, row);
        return !(count == 1 || count >= *p);
    }
    if (kind == "pgroup_degree_bound") {
        const auto i = w.at("row").get<std::size_t>();
        if (!p) return false;
        const std::size_t m = decompose_product(t, i, t.conjugate_row(i)).eta();
        if (m <= 1) return false;
        auto texp = log_base(t.degree(i), *p);
        return !(*p < 2 * m + 1 && texp && *texp >= 1 && *texp + 2 <= m);
    }
    if (kind == "degree_bound") {
        const auto i = w.at("row").get<std::size_t>();
        const auto bound = w.at("bound").get<std::string>() == "strict" ? ExponentBound::Strict
                                                                        : ExponentBound::Inclusive;
        const std::size_t n = decompose_product(t, i, t.conjugate_row(i)).eta();
        return !PermissibleDegrees(n, bound).contains(t.degree(i));
    }
    throw InvalidArgument("unknown witness kind: " + kind);
}

}  // namespace pchar
