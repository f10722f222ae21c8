#include <doctest.h>

#include <chrono>

#include "oracles.hpp"
#include "pchar/constructions.hpp"
#include "pchar/errors.hpp"

using namespace pchar;

namespace {

using Constituents = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// chi chi = sum_s Ind(lambda_0 lambda_s). s = 0 gives lambda(1) copies of the
// induced mu; s and -s give the same irreducible of degree p lambda(1)^2.
Constituents expected_constituents(std::uint64_t p, unsigned m) {
    std::uint64_t l = 1;
    for (unsigned i = 1; i < m; ++i) l *= p;
    Constituents c{{p * l, l}};
    for (std::uint64_t s = 1; s <= (p - 1) / 2; ++s) c.emplace_back(p * l * l, 2);
    std::sort(c.begin(), c.end());
    return c;
}

// Ind from A to G by averaging conjugates, as complex numbers per element of G.
std::vector<oracle::cplx> induced_values(const Example& ex, const ExampleBase& base) {
    const auto& g = ex.g;
    const auto tab = oracle::numeric_table(base.table);
    const std::uint64_t e = ex.spec.e_order().value();
    std::uint64_t top = 1;
    for (std::uint64_t i = 1; i < ex.spec.p; ++i) top *= e;
    std::vector<oracle::cplx> out(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
        oracle::cplx s = 0;
        for (Elem y = 0; y < g.order(); ++y) {
            const Elem c = g.mul(g.mul(y, x), g.inverse(y));
            if (!ex.a.contains(c)) continue;
            s += tab[ex.lambda_row][base.e.classes().class_of[c / top]];
        }
        out[x] = s / static_cast<double>(ex.a.order());
    }
    return out;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(ExampleSpec(2, 1), InvalidArgument);
    CHECK_THROWS_AS(ExampleSpec(9, 1), InvalidArgument);
    CHECK_THROWS_AS(ExampleSpec(3, 0), InvalidArgument);
    ExampleSpec s(5, 1);
    CHECK(s.g_order() == 15625u);
    CHECK(s.a_order() == 3125u);
    CHECK(s.e_order() == 5u);
    CHECK(s.expected_eta() == 3);
    CHECK(ExampleSpec(7, 1).g_order() == 5764801u);
    CHECK(ExampleSpec(3, 2).g_order() == 59049u);
    CHECK_FALSE(ExampleSpec(997, 3).g_order().has_value());
}

TEST_CASE("lambda squared is a multiple of mu") {
    for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 1}, {5, 1}, {3, 2}, {5, 2}, {3, 3}}) {
        CAPTURE(p);
        CAPTURE(m);
        ExampleSpec spec(p, m);
        auto base = example_base(spec);
        auto oa = analyze_orbits(spec);
        CHECK(oa.lambda == base.lambda);
        const auto& t = base.table;
        CHECK(t.is_faithful(oa.lambda));
        std::uint64_t l = 1;
        for (unsigned i = 1; i < m; ++i) l *= p;
        CHECK(t.degree(oa.lambda) == l);
        ClassFunction scaled = t.row(oa.mu);
        scaled *= Rational(static_cast<long>(l));
        CHECK(product(t.row(oa.lambda), t.row(oa.lambda)) == scaled);
    }
}

TEST_CASE("orbit method against the closed form") {
    for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{
             {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
        CAPTURE(p);
        CAPTURE(m);
        ExampleSpec spec(p, m);
        const auto start = std::chrono::steady_clock::now();
        auto oa = analyze_orbits(spec);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        CHECK(secs < 1.0);
        CHECK(oa.eta() == (p + 1) / 2);
        CHECK(oa.constituents() == expected_constituents(p, m));
        CHECK(oa.stabilizers_trivial);
        CHECK(oa.representatives_distinct == true);
        CHECK(oa.representatives_cover == true);
        // sum of m_i theta_i(1) = chi(1)^2
        std::uint64_t total = 0;
        for (auto [d, mult] : oa.constituents()) total += d * mult;
        const std::uint64_t chi1 = p * expected_constituents(p, m)[0].second;
        CHECK(total == chi1 * chi1);

        auto r = verify_example_via_orbits(spec);
        CHECK(r.status == Status::Pass);
        CHECK(r.detail["eta"] == (p + 1) / 2);
    }
    auto big = analyze_orbits(ExampleSpec(17, 1));
    CHECK(big.eta() == 9);
    CHECK_FALSE(big.representatives_distinct.has_value());
}

TEST_CASE("the wreath product of order 81") {
    ExampleSpec spec(3, 1);
    auto ex = build_example(spec);
    CHECK(ex.g.order() == 81);
    CHECK(ex.a.order() == 27);
    CHECK(ex.a.is_normal());
    CHECK(ex.chi.degree() == 3);
    CHECK(character_inner_product(ex.chi, ex.chi) == 1);
    CHECK(is_faithful(ex.chi));

    auto base = example_base(spec);
    auto ind = induced_values(ex, base);
    for (Elem x = 0; x < ex.g.order(); ++x) CHECK(std::abs(oracle::eval(ex.chi.at(x)) - ind[x]) < 1e-9);

    CHECK(index_action_matches(ex, base.table));

    auto t = character_table(ex.g);
    std::vector<oracle::cplx> sq(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto v = oracle::eval(ex.chi[k]);
        sq[k] = v * v;
    }
    bool integral = false;
    auto mult = oracle::numeric_decompose(t, sq, &integral);
    CHECK(integral);
    Constituents cons;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (mult[i] != 0) cons.emplace_back(t.degree(i), static_cast<std::uint64_t>(mult[i]));
    std::sort(cons.begin(), cons.end());
    CHECK(cons == expected_constituents(3, 1));

    auto r = verify_example_via_table(spec);
    CHECK(r.status == Status::Pass);
    CHECK(r.detail["eta"] == 2);
    CHECK(r.detail["group_order"] == 81);
    CHECK(r.detail["center_order"] == 3);

    auto cc = cross_check_methods(spec);
    CHECK(cc.status == Status::Pass);
    CHECK(cc.detail["table"]["eta"] == cc.detail["orbits"]["eta"]);
}

TEST_CASE("limits") {
    CHECK_THROWS_AS(build_example(ExampleSpec(3, 1), 80), ResourceLimit);
    auto over = verify_example_via_table(ExampleSpec(7, 1));
    CHECK(over.status == Status::Skipped);
    auto slow = verify_example_via_table(ExampleSpec(5, 1), 0.0);
    CHECK(slow.status == Status::Skipped);
    auto cc = cross_check_methods(ExampleSpec(7, 1));
    CHECK(cc.status == Status::Skipped);
    CHECK(cc.detail["orbits"]["eta"] == 4);
}
