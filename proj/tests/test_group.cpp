#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "pchar/errors.hpp"
#include "pchar/group.hpp"

using namespace pchar;

namespace {

FiniteGroup q8() { return load_group_file(oracle::source_dir() + "/corpus/groups/q8.perm"); }

std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
    const auto& cd = g.classes();
    return {cd.sizes.begin(), cd.sizes.end()};
}

}  // namespace

TEST_CASE("cyclic groups") {
    CHECK(cyclic_group(1).order() == 1);
    auto c3 = cyclic_group(3);
    CHECK(c3.order() == 3);
    CHECK(c3.element_order(1) == 3);
    CHECK(cyclic_group(5).inverse(2) == 3);
    for (std::size_t n : {1, 2, 6, 12, 30}) {
        auto g = cyclic_group(n);
        CHECK(check_group_axioms(g));
        CHECK(g.classes().num_classes() == n);
        CHECK(center(g).order() == n);
    }
}

TEST_CASE("direct products") {
    auto c6 = direct_product(cyclic_group(2), cyclic_group(3));
    CHECK(c6.order() == 6);
    CHECK(c6.element_order(1 * 3 + 1) == 6);
    auto g = direct_product(cyclic_group(1), q8());
    CHECK(g.order() == 8);
    CHECK(g.classes().num_classes() == 5);
    auto q8c3 = direct_product(q8(), cyclic_group(3));
    CHECK(q8c3.order() == 24);
    CHECK(center(q8c3).order() == oracle::center(q8c3).size());
    CHECK(center(q8c3).order() == 6);
    CHECK(check_group_axioms(q8c3));
}

TEST_CASE("heisenberg extraspecial groups") {
    auto c3 = heisenberg_extraspecial(3, 1);
    CHECK(c3.order() == 3);
    CHECK(c3.classes().num_classes() == 3);

    auto h = heisenberg_extraspecial(3, 2);
    CHECK(h.order() == 27);
    CHECK(h.exponent() == 3);
    CHECK(oracle::center(h).size() == 3);
    CHECK(check_group_axioms(h));

    auto h5 = heisenberg_extraspecial(5, 2);
    CHECK(h5.order() == 125);
    for (Elem x = 1; x < h5.order(); ++x) CHECK(oracle::element_order(h5, x) == 5);

    auto h33 = heisenberg_extraspecial(3, 3);
    CHECK(h33.order() == 243);
    CHECK(oracle::center(h33).size() == 3);
    CHECK(check_group_axioms(h33));
}

TEST_CASE("function power semidirect") {
    auto g = function_power_semidirect(cyclic_group(3), 3);
    CHECK(g.order() == 81);
    CHECK(check_group_axioms(g));
    CHECK(center(g).order() == 3);
    CHECK(oracle::center(g).size() == 3);

    CHECK(function_power_semidirect(cyclic_group(5), 5).order() == 15625);

    auto c3 = function_power_semidirect(cyclic_group(1), 3);
    CHECK(c3.order() == 3);
    CHECK(c3.classes().num_classes() == 3);

    // p^(p(2m-1)+1)
    auto big = function_power_semidirect(heisenberg_extraspecial(3, 2), 3);
    CHECK(big.order() == 59049);
    CHECK_THROWS_AS(function_power_semidirect(cyclic_group(7), 7), ResourceLimit);

    // members below |e|^p form a normal subgroup on which coordinates multiply pointwise
    std::vector<Elem> a(27);
    for (Elem x = 0; x < 27; ++x) a[x] = x;
    Subgroup sub(g, a);
    CHECK(sub.is_closed());
    CHECK(sub.is_normal());
    CHECK(g.mul(1 * 9, 2 * 9) == 0);
}

TEST_CASE("permutation groups") {
    PermGenerators c4{4, {{1, 2, 3, 0}}};
    auto g = group_from_perm_generators(c4);
    CHECK(g.order() == 4);
    CHECK(g.classes().num_classes() == 4);

    CHECK(group_from_perm_generators(PermGenerators{5, {}}).order() == 1);

    auto q = q8();
    CHECK(q.order() == 8);
    CHECK(check_group_axioms(q));
    std::size_t involutions = 0;
    for (Elem x = 0; x < 8; ++x) involutions += oracle::element_order(q, x) == 2;
    CHECK(involutions == 1);

    // same bytes, same indexing
    auto q2 = q8();
    for (Elem x = 0; x < 8; ++x)
        for (Elem y = 0; y < 8; ++y) CHECK(q.mul(x, y) == q2.mul(x, y));
}

TEST_CASE("group file parsing") {
    std::istringstream ok("# c3\ntable 3\n0 1 2\n1 2 0\n2 0 1\n");
    CHECK(parse_group(ok).order() == 3);

    std::istringstream notbij("perm 3\n0 0 1\n");
    CHECK_THROWS_AS(parse_group(notbij), ParseError);
    std::istringstream badtable("table 2\n0 1\n1 1\n");
    CHECK_THROWS_AS(parse_group(badtable), ParseError);
    std::istringstream header("group 3\n");
    CHECK_THROWS_AS(parse_group(header), ParseError);

    try {
        std::istringstream in("perm 3\n1 2 0\n0 1 5\n");
        parse_group(in);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }

    auto g = heisenberg_extraspecial(3, 2);
    std::ostringstream out;
    write_group_table(out, g);
    std::istringstream back(out.str());
    auto h = parse_group(back);
    CHECK(h.order() == 27);
    CHECK(h.classes().num_classes() == 11);

    std::ostringstream perm;
    write_regular_perm(perm, g);
    std::istringstream pback(perm.str());
    CHECK(parse_group(pback).classes().num_classes() == 11);
}

TEST_CASE("conjugacy classes agree with brute force") {
    std::vector<FiniteGroup> groups{cyclic_group(5), q8(), heisenberg_extraspecial(3, 2),
                                    function_power_semidirect(cyclic_group(3), 3),
                                    load_group_file(oracle::source_dir() + "/corpus/groups/d16.perm"),
                                    load_group_file(oracle::source_dir() + "/corpus/groups/m16.perm")};
    for (const auto& g : groups) {
        const auto& cd = g.classes();
        std::set<std::vector<Elem>> got;
        std::size_t total = 0;
        for (std::size_t k = 0; k < cd.num_classes(); ++k) {
            auto m = cd.class_members(k);
            std::vector<Elem> v(m.begin(), m.end());
            std::sort(v.begin(), v.end());
            got.insert(v);
            total += v.size();
            CHECK(g.order() % v.size() == 0);
            CHECK(cd.class_of[cd.reps[k]] == k);
            if (k > 1) {
                CHECK(cd.sizes[k - 1] <= cd.sizes[k]);
            }
        }
        CHECK(total == g.order());
        CHECK(got == oracle::classes(g));
        CHECK(cd.sizes[0] == 1);
        CHECK(cd.class_members(0)[0] == g.identity());

        std::vector<Elem> singles;
        for (std::size_t k = 0; k < cd.num_classes(); ++k)
            if (cd.sizes[k] == 1) singles.push_back(cd.reps[k]);
        std::sort(singles.begin(), singles.end());
        CHECK(center(g).members() == singles);
    }
    CHECK(class_sizes(q8()) == std::vector<std::size_t>{1, 1, 2, 2, 2});
    auto h = class_sizes(heisenberg_extraspecial(3, 2));
    CHECK(std::count(h.begin(), h.end(), 1u) == 3);
    CHECK(std::count(h.begin(), h.end(), 3u) == 8);
}

TEST_CASE("subgroups and normal subgroups") {
    auto c9 = cyclic_group(9);
    auto ups = normal_subgroups_between(c9, trivial_subgroup(c9), 3);
    REQUIRE(ups.size() == 1);
    CHECK(ups[0].order() == 3);

    auto q = q8();
    auto zq = center(q);
    CHECK(zq.order() == 2);
    auto above = normal_subgroups_between(q, zq, 2);
    CHECK(above.size() == 3);
    for (const auto& y : above) CHECK(y.order() == 4);
    CHECK(all_normal_subgroups(q).size() == 6);

    auto h = heisenberg_extraspecial(3, 2);
    auto yh = normal_subgroups_between(h, center(h), 3);
    CHECK(yh.size() == 4);
    for (const auto& y : yh) {
        CHECK(y.order() == 9);
        CHECK(y.is_normal());
        CHECK(y.is_closed());
    }
    // normal subgroups of H(3,2): 1, Z, the four of order 9, H
    CHECK(all_normal_subgroups(h).size() == 7);

    // within restricts the candidates
    auto within = normal_subgroups_between(h, trivial_subgroup(h), std::nullopt, &yh[0]);
    CHECK(within.size() == 1);

    std::array<Elem, 1> gen{1};
    auto s = generated_subgroup(c9, gen);
    CHECK(s.order() == 9);
    auto nc = normal_closure(q, std::array<Elem, 1>{zq.members()[1]});
    CHECK(nc == zq);
    CHECK(whole_group(q).order() == 8);
    CHECK(trivial_subgroup(q).is_subset_of(zq));
}

TEST_CASE("nilpotency") {
    CHECK(is_nilpotent(q8()));
    CHECK(is_nilpotent(cyclic_group(6)));
    CHECK(is_nilpotent(direct_product(heisenberg_extraspecial(3, 2), cyclic_group(2))));
    // S3 from its regular action
    PermGenerators s3{3, {{1, 2, 0}, {1, 0, 2}}};
    auto g = group_from_perm_generators(s3);
    CHECK(g.order() == 6);
    CHECK_FALSE(is_nilpotent(g));
    CHECK_FALSE(g.prime().has_value());
    CHECK(q8().prime() == 2u);
}

TEST_CASE("element cap") {
    CHECK_THROWS_AS(cyclic_group(11, 10), ResourceLimit);
    CHECK_THROWS_AS(heisenberg_extraspecial(7, 3, 1000), ResourceLimit);
    CHECK_THROWS_AS(heisenberg_extraspecial(4, 2), InvalidArgument);
}
