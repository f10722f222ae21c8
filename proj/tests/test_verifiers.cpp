#include <doctest.h>

#include "oracles.hpp"
#include "pchar/arith.hpp"
#include "pchar/errors.hpp"
#include "pchar/verifiers.hpp"

using namespace pchar;

namespace {

FiniteGroup from_file(const std::string& name) {
    return load_group_file(oracle::source_dir() + "/corpus/groups/" + name);
}

GroupContext ctx_of(const std::string& name, FiniteGroup g) { return GroupContext(name, std::move(g)); }

std::vector<std::pair<std::string, FiniteGroup>> pgroups() {
    return {{"C9", cyclic_group(9)},
            {"Q8", from_file("q8.perm")},
            {"D8", from_file("d4.perm")},
            {"D16", from_file("d16.perm")},
            {"M16", from_file("m16.perm")},
            {"H(3,2)", heisenberg_extraspecial(3, 2)},
            {"H(5,2)", heisenberg_extraspecial(5, 2)},
            {"C3 wr C3", function_power_semidirect(cyclic_group(3), 3)}};
}

using oracle::cplx;

// Per row, the classes where |chi| = chi(1), read from floating values.
std::vector<std::vector<char>> numeric_centers(const CharacterTable& t) {
    auto tab = oracle::numeric_table(t);
    std::vector<std::vector<char>> out(t.size(), std::vector<char>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t k = 0; k < t.size(); ++k)
            out[i][k] = std::abs(std::abs(tab[i][k]) - static_cast<double>(t.degree(i))) < 1e-6;
    return out;
}

std::vector<std::size_t> numeric_faithful(const CharacterTable& t) {
    auto tab = oracle::numeric_table(t);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        bool f = true;
        for (std::size_t k = 1; k < t.size() && f; ++k) f = std::abs(tab[i][k] - static_cast<double>(t.degree(i))) > 1e-6;
        if (f) out.push_back(i);
    }
    return out;
}

// Normal subgroups as unions of classes closed under multiplication.
std::vector<std::vector<Elem>> brute_normal_subgroups(const FiniteGroup& g) {
    const auto& cd = g.classes();
    const std::size_t r = cd.num_classes();
    REQUIRE(r <= 20);
    std::vector<std::vector<Elem>> out;
    for (std::uint32_t mask = 0; mask < (1u << (r - 1)); ++mask) {
        std::vector<char> in(g.order(), 0);
        std::vector<Elem> m;
        for (std::size_t k = 0; k < r; ++k) {
            if (k > 0 && !(mask >> (k - 1) & 1)) continue;
            for (Elem x : cd.class_members(k)) {
                in[x] = 1;
                m.push_back(x);
            }
        }
        if (g.order() % m.size() != 0) continue;
        bool closed = true;
        for (std::size_t a = 0; a < m.size() && closed; ++a)
            for (std::size_t b = 0; b < m.size() && closed; ++b) closed = in[g.mul(m[a], m[b])];
        if (!closed) continue;
        std::sort(m.begin(), m.end());
        out.push_back(m);
    }
    return out;
}

std::optional<std::uint64_t> exact_log(std::uint64_t d, std::uint64_t p) {
    std::uint64_t t = 0;
    while (d % p == 0) {
        d /= p;
        ++t;
    }
    if (d != 1) return std::nullopt;
    return t;
}

bool brute_permissible(std::uint64_t d, std::uint64_t n, bool strict) {
    const std::int64_t cap = static_cast<std::int64_t>(n) - (strict ? 3 : 2);
    std::map<std::uint64_t, std::int64_t> f;
    for (std::uint64_t q = 2; q * q <= d; ++q)
        while (d % q == 0) {
            d /= q;
            ++f[q];
        }
    if (d > 1) ++f[d];
    for (auto [q, e] : f)
        if (q >= 2 * n + 1 || e > cap) return false;
    return true;
}

}  // namespace

TEST_CASE("permissible degree sets") {
    CHECK(*PermissibleDegrees(1).elements() == std::vector<std::uint64_t>{1});
    CHECK(*PermissibleDegrees(2).elements() == std::vector<std::uint64_t>{1});
    CHECK(*PermissibleDegrees(3).elements() == std::vector<std::uint64_t>{1, 2, 3, 5, 6, 10, 15, 30});
    CHECK(*PermissibleDegrees(3, ExponentBound::Strict).elements() == std::vector<std::uint64_t>{1});
    CHECK(PermissibleDegrees(3).primes() == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(PermissibleDegrees(4).size() == 81);
    CHECK(PermissibleDegrees(4, ExponentBound::Strict).size() == 16);
    CHECK_FALSE(PermissibleDegrees(40).elements(1000).has_value());
    CHECK_THROWS_AS(PermissibleDegrees(0), InvalidArgument);
    CHECK_FALSE(PermissibleDegrees(3).contains(0));

    for (std::uint64_t n = 1; n <= 7; ++n) {
        for (bool strict : {false, true}) {
            PermissibleDegrees s(n, strict ? ExponentBound::Strict : ExponentBound::Inclusive);
            std::vector<std::uint64_t> brute;
            std::size_t disagreements = 0;
            for (std::uint64_t d = 1; d <= 200000; ++d) {
                const bool in = brute_permissible(d, n, strict);
                disagreements += s.contains(d) != in;
                if (in) brute.push_back(d);
            }
            CHECK(disagreements == 0);
            if (n == 7 && !strict) {
                // 13^5 * 11^5 * ... does not fit in 64 bits
                CHECK_THROWS_AS(s.elements(1u << 20), ResourceLimit);
                continue;
            }
            auto el = s.elements(1u << 20);
            REQUIRE(el.has_value());
            std::vector<std::uint64_t> small;
            for (auto d : *el)
                if (d <= 200000) small.push_back(d);
            CHECK(small == brute);
            CHECK(el->size() == s.size());
        }
    }
}

TEST_CASE("eta dichotomy against a floating point count") {
    for (const auto& [name, g] : pgroups()) {
        CAPTURE(name);
        auto ctx = ctx_of(name, g);
        auto r = verify_eta_dichotomy(ctx);
        const auto& t = ctx.table();
        auto faithful = numeric_faithful(t);
        CHECK(faithful == t.faithful_rows());
        const std::uint64_t p = *g.prime();
        bool holds = true;
        std::size_t pairs = 0;
        std::map<std::uint64_t, std::uint64_t> hist;
        for (std::size_t a = 0; a < faithful.size(); ++a) {
            for (std::size_t b = a; b < faithful.size(); ++b) {
                const auto e = oracle::numeric_eta(t, faithful[a], faithful[b]);
                ++hist[e];
                ++pairs;
                holds = holds && (e == 1 || 2 * e > p);
            }
        }
        CHECK(holds);
        CHECK(r.status == Status::Pass);
        CHECK(r.detail["pairs"] == pairs);
        CHECK(r.eta_histogram == hist);
        CHECK(r.witnesses.empty());
    }
}

TEST_CASE("small eta pairs vanish off the center") {
    for (const auto& [name, g] : pgroups()) {
        CAPTURE(name);
        auto ctx = ctx_of(name, g);
        auto r = verify_small_eta_vanishing(ctx);
        CHECK(r.status == Status::Pass);
        const auto& t = ctx.table();
        const std::uint64_t p = *g.prime();
        auto tab = oracle::numeric_table(t);
        const auto& cd = g.classes();
        std::size_t small = 0;
        for (auto i : t.faithful_rows()) {
            for (auto j : t.faithful_rows()) {
                if (j < i) continue;
                const auto e = oracle::numeric_eta(t, i, j);
                if (2 * e > p) continue;
                ++small;
                CHECK(e == 1);
                for (std::size_t k = 0; k < t.size(); ++k) {
                    if (cd.sizes[k] == 1) continue;
                    CHECK(std::abs(tab[i][k]) < 1e-9);
                    CHECK(std::abs(tab[j][k]) < 1e-9);
                }
            }
        }
        CHECK(r.detail["pairs_with_small_eta"] == small);
    }
}

TEST_CASE("chief factor vanishing against brute force normal subgroups") {
    for (const auto& [name, g] : pgroups()) {
        if (g.classes().num_classes() > 20) continue;
        CAPTURE(name);
        auto ctx = ctx_of(name, g);
        auto r = verify_chief_factor_vanishing(ctx);
        CHECK(r.status == Status::Pass);
        const auto& t = ctx.table();
        const std::uint64_t p = *g.prime();
        const auto normals = brute_normal_subgroups(g);
        CHECK(normals.size() == all_normal_subgroups(g).size());
        const auto zc = numeric_centers(t);
        const auto tab = oracle::numeric_table(t);
        const auto& cd = g.classes();
        std::uint64_t configs = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            std::set<Elem> zchi;
            for (Elem x = 0; x < g.order(); ++x)
                if (zc[i][cd.class_of[x]]) zchi.insert(x);
            if (zchi.size() == g.order()) continue;
            for (const auto& z : normals) {
                if (!std::includes(zchi.begin(), zchi.end(), z.begin(), z.end())) continue;
                for (const auto& y : normals) {
                    if (y.size() != z.size() * p || !std::includes(y.begin(), y.end(), z.begin(), z.end())) continue;
                    if (std::includes(zchi.begin(), zchi.end(), y.begin(), y.end())) continue;
                    ++configs;
                    for (Elem x : y)
                        if (!std::binary_search(z.begin(), z.end(), x)) CHECK(std::abs(tab[i][cd.class_of[x]]) < 1e-9);
                }
            }
        }
        CHECK(r.detail["configurations"] == configs);
    }
}

TEST_CASE("invariant extension counts") {
    auto q = from_file("q8.perm");
    auto ctx = ctx_of("Q8", q);
    auto r = verify_invariant_extension_count(ctx, center(q));
    CHECK(r.status == Status::Pass);
    CHECK(r.detail["invariant_characters"] == 2);
    // faithful phi extends to the degree-2 character only; the trivial one lies under the four linear ones
    CHECK(r.eta_histogram == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {4, 1}});

    auto d16 = from_file("d16.perm");
    auto dctx = ctx_of("D16", d16);
    std::array<Elem, 1> refl{0};
    for (Elem x = 0; x < d16.order(); ++x)
        if (oracle::element_order(d16, x) == 2 && center(d16).contains(x) == false) {
            refl[0] = x;
            break;
        }
    auto s = generated_subgroup(d16, refl);
    REQUIRE_FALSE(s.is_normal());
    CHECK_THROWS_AS(verify_invariant_extension_count(dctx, s), InvalidArgument);
    auto c4 = cyclic_group(4);
    CHECK_THROWS_AS(verify_invariant_extension_count(dctx, center(c4)), InvalidArgument);

    for (const auto& [name, g] : pgroups()) {
        if (g.order() > 81) continue;
        CAPTURE(name);
        auto c = ctx_of(name, g);
        auto all = verify_invariant_extension_count_all(c);
        CHECK(all.status == Status::Pass);
        // count Irr(G | phi) by floating inner products of restrictions
        const auto& t = c.table();
        const auto tab = oracle::numeric_table(t);
        std::map<std::uint64_t, std::uint64_t> hist;
        for (const auto& n : all_normal_subgroups(g)) {
            const auto& h = n.as_group();
            auto nt = character_table(h);
            auto ntab = oracle::numeric_table(nt);
            const auto& ncd = h.classes();
            for (std::size_t row = 0; row < nt.size(); ++row) {
                bool invariant = true;
                for (Elem x = 0; x < h.order() && invariant; ++x) {
                    for (Elem y = 0; y < g.order() && invariant; ++y) {
                        const Elem conj = g.mul(g.mul(g.inverse(y), n.members()[x]), y);
                        invariant = std::abs(ntab[row][ncd.class_of[x]] - ntab[row][ncd.class_of[n.to_local(conj)]]) < 1e-9;
                    }
                }
                if (!invariant) continue;
                std::uint64_t count = 0;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    cplx s = 0;
                    for (Elem x = 0; x < h.order(); ++x)
                        s += tab[i][g.classes().class_of[n.members()[x]]] * std::conj(ntab[row][ncd.class_of[x]]);
                    count += std::abs(s) > 1e-6;
                }
                ++hist[count];
            }
        }
        CHECK(all.eta_histogram == hist);
    }
}

TEST_CASE("p-group degree bound") {
    for (const auto& [name, g] : pgroups()) {
        CAPTURE(name);
        auto ctx = ctx_of(name, g);
        auto r = verify_pgroup_degree_bound(ctx);
        CHECK(r.status == Status::Pass);
        const auto& t = ctx.table();
        const std::uint64_t p = *g.prime();
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto m = oracle::numeric_eta(t, i, t.conjugate_row(i));
            if (m <= 1) continue;
            CHECK(p < 2 * m + 1);
            auto texp = exact_log(t.degree(i), p);
            REQUIRE(texp.has_value());
            CHECK(*texp >= 1);
            CHECK(*texp + 2 <= m);
        }
    }
}

TEST_CASE("nilpotent degree bound, both exponent bounds") {
    std::vector<std::pair<std::string, FiniteGroup>> groups = pgroups();
    groups.emplace_back("Q8xC3", direct_product(from_file("q8.perm"), cyclic_group(3)));
    groups.emplace_back("H(3,2)xC2", direct_product(heisenberg_extraspecial(3, 2), cyclic_group(2)));
    for (const auto& [name, g] : groups) {
        CAPTURE(name);
        auto ctx = ctx_of(name, g);
        auto inc = verify_nilpotent_degree_bound(ctx);
        auto strict = verify_nilpotent_degree_bound(ctx, ExponentBound::Strict);
        const auto& t = ctx.table();
        bool inc_holds = true, strict_holds = true;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto n = oracle::numeric_eta(t, i, t.conjugate_row(i));
            inc_holds = inc_holds && brute_permissible(t.degree(i), n, false);
            strict_holds = strict_holds && brute_permissible(t.degree(i), n, true);
        }
        CHECK(inc_holds);
        CHECK(inc.status == Status::Pass);
        CHECK((strict.status == Status::Pass) == strict_holds);
        CHECK(inc.detail["strict_bound"]["holds"] == strict_holds);
        for (const auto& w : strict.witnesses) CHECK(witness_reproduces(w, ctx));
    }
}

TEST_CASE("dihedral group of order 16 misses the strict bound") {
    auto g = from_file("d16.perm");
    auto ctx = ctx_of("D16", g);
    auto r = verify_nilpotent_degree_bound(ctx, ExponentBound::Strict);
    REQUIRE(r.status == Status::Fail);
    const auto& t = ctx.table();
    CHECK(r.witnesses.size() == 2);
    for (const auto& w : r.witnesses) {
        CHECK(w["degree"] == 2);
        CHECK(w["n"] == 3);
        CHECK(witness_reproduces(w, ctx));

        auto relaxed = w;
        relaxed["bound"] = "inclusive";
        CHECK_FALSE(witness_reproduces(relaxed, ctx));
        auto linear = w;
        linear["row"] = 0;
        CHECK_FALSE(witness_reproduces(linear, ctx));
    }
    auto faithful = t.faithful_rows();
    CHECK(faithful.size() == 2);
    auto inc = verify_nilpotent_degree_bound(ctx);
    CHECK(inc.status == Status::Pass);
    CHECK(inc.detail["strict_bound"]["misses"] == 2);
}

TEST_CASE("tampered witnesses do not reproduce") {
    auto q = from_file("q8.perm");
    auto ctx = ctx_of("Q8", q);
    using nlohmann::json;
    CHECK_FALSE(witness_reproduces(json{{"kind", "eta_dichotomy"}, {"rows", {4, 4}}, {"eta", 2}, {"p", 2}}, ctx));
    CHECK_FALSE(witness_reproduces(json{{"kind", "eta_dichotomy"}, {"rows", {0, 4}}, {"eta", 2}, {"p", 2}}, ctx));
    CHECK_FALSE(witness_reproduces(json{{"kind", "small_eta_not_one"}, {"rows", {4, 4}}, {"eta", 4}, {"p", 2}}, ctx));
    CHECK_FALSE(witness_reproduces(json{{"kind", "pgroup_degree_bound"}, {"row", 4}, {"degree", 2}, {"m", 4}, {"p", 2}}, ctx));
    CHECK_FALSE(witness_reproduces(json{{"kind", "degree_bound"}, {"row", 4}, {"degree", 2}, {"n", 4}, {"bound", "inclusive"}}, ctx));

    auto z = center(q);
    std::vector<Elem> zm = z.members();
    CHECK_FALSE(witness_reproduces(json{{"kind", "chief_factor_vanishing"},
                                        {"row", 4},
                                        {"lower", json::array()},
                                        {"upper", zm},
                                        {"class", 1}},
                                   ctx));
    CHECK_FALSE(witness_reproduces(json{{"kind", "invariant_extension_count"},
                                        {"normal_subgroup", zm},
                                        {"phi_row", 0},
                                        {"count", 4},
                                        {"p", 2}},
                                   ctx));
    CHECK_THROWS_AS(witness_reproduces(json{{"kind", "no_such_check"}}, ctx), InvalidArgument);
}

TEST_CASE("preconditions") {
    PermGenerators s3{3, {{1, 2, 0}, {1, 0, 2}}};
    auto ctx = ctx_of("S3", group_from_perm_generators(s3));
    CHECK(verify_eta_dichotomy(ctx).status == Status::Skipped);
    CHECK(verify_small_eta_vanishing(ctx).status == Status::Skipped);
    CHECK(verify_chief_factor_vanishing(ctx).status == Status::Skipped);
    CHECK(verify_pgroup_degree_bound(ctx).status == Status::Skipped);
    CHECK(verify_invariant_extension_count_all(ctx).status == Status::Skipped);
    auto b = verify_nilpotent_degree_bound(ctx);
    CHECK(b.status == Status::Skipped);
    CHECK(b.detail["reason"] == "group is not nilpotent");

    auto qc = ctx_of("Q8xC3", direct_product(from_file("q8.perm"), cyclic_group(3)));
    CHECK(verify_eta_dichotomy(qc).status == Status::Skipped);
    CHECK(verify_nilpotent_degree_bound(qc).status == Status::Pass);

    auto q = ctx_of("Q8", from_file("q8.perm"));
    auto scan = conjecture_scan_report(q);
    CHECK(scan.status == Status::Skipped);
    CHECK(conjecture_scan(q).entries.empty());
}

TEST_CASE("conjecture scan records faithful pairs") {
    for (const auto& [name, g] : pgroups()) {
        if (*g.prime() == 2) continue;
        CAPTURE(name);
        auto ctx = ctx_of(name, g);
        auto s = conjecture_scan(ctx);
        const auto& t = ctx.table();
        const auto f = t.faithful_rows();
        CHECK(s.entries.size() == f.size() * (f.size() + 1) / 2);
        std::size_t flagged = 0;
        for (const auto& e : s.entries) {
            CHECK(e.eta == oracle::numeric_eta(t, e.i, e.j));
            std::uint64_t total = 0;
            for (std::size_t k = 0; k < e.multiplicities.size(); ++k) total += e.multiplicities[k];
            CHECK(e.multiplicities.size() == e.eta);
            CHECK(total >= e.eta);
            CHECK(total * 1 <= e.degree_i * e.degree_j);
            CHECK(std::is_sorted(e.multiplicities.rbegin(), e.multiplicities.rend()));
            flagged += 2 * e.eta - 1 > s.p && e.eta < s.p;
        }
        CHECK(s.flagged() == flagged);
        auto r = conjecture_scan_report(ctx);
        CHECK(r.status == Status::Pass);
        CHECK(r.detail["flagged"].size() == flagged);
    }
}

TEST_CASE("budget") {
    auto ctx = ctx_of("H(7,2)", heisenberg_extraspecial(7, 2));
    ctx.set_budget(0.0);
    CHECK_THROWS_AS(ctx.table(), BudgetExceeded);
}

TEST_CASE("conjecture scan on C5 wr C5 agrees with the Mackey count") {
    auto ctx = ctx_of("example:5,1", function_power_semidirect(cyclic_group(5), 5));
    auto s = conjecture_scan(ctx);
    std::map<std::size_t, std::size_t> hist;
    for (const auto& e : s.entries) ++hist[e.eta];
    const auto mackey = oracle::wreath_faithful_eta(5);
    CHECK(hist == mackey);
    // eta = 4 gives 2 eta - 1 = 7 > 5 with eta < 5
    CHECK(s.flagged() == mackey.at(4));
    CHECK(s.flagged() == 5000);
}
