#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "pchar/arith.hpp"
#include "pchar/cyclotomic.hpp"
#include "pchar/cyclotomic_int.hpp"
#include "pchar/errors.hpp"

using namespace pchar;

namespace {

Cyclotomic random_cyc(std::mt19937_64& rng, std::uint32_t e) {
    std::uniform_int_distribution<long> d(-5, 5);
    std::vector<Rational> c(e);
    for (auto& x : c) x = Rational(d(rng), 1 + std::abs(d(rng)) % 3);
    return Cyclotomic::from_powers(e, c);
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-8; }

}  // namespace

TEST_CASE("arith helpers") {
    for (std::uint64_t n = 0; n < 2000; ++n) {
        bool naive = n >= 2;
        for (std::uint64_t d = 2; d * d <= n && naive; ++d) naive = n % d != 0;
        CHECK(is_prime(n) == naive);
    }
    for (std::uint64_t n = 1; n < 500; ++n) {
        std::uint64_t prod = 1;
        for (auto [p, k] : factorize(n)) prod *= *checked_pow(p, k);
        CHECK(prod == n);
        std::uint64_t coprime = 0;
        for (std::uint64_t k = 1; k <= n; ++k) coprime += std::gcd(k, n) == 1;
        CHECK(euler_phi(n) == coprime);
    }
    CHECK(prime_power_base(243) == 3u);
    CHECK_FALSE(prime_power_base(12).has_value());
    CHECK_FALSE(checked_pow(10, 20).has_value());

    const std::uint64_t q = modp::prime_one_mod(25, 1000);
    CHECK(is_prime(q));
    CHECK(q % 25 == 1);
    CHECK(q > 1000);
    for (std::uint64_t a : {2ull, 17ull, 999ull}) CHECK(modp::mul(a, modp::inv(a, q), q) == 1);
    const std::uint64_t g = modp::primitive_root(q);
    for (auto [p, k] : factorize(q - 1)) CHECK(modp::pow(g, (q - 1) / p, q) != 1);
}

TEST_CASE("roots of unity") {
    CHECK(Cyclotomic::root(1, 0) == Cyclotomic(1));
    CHECK(Cyclotomic::root(4, 2) == Cyclotomic(-1));
    Cyclotomic s;
    for (int i = 0; i < 7; ++i) s += Cyclotomic::root(7, i);
    CHECK(s.is_zero());
    CHECK(Cyclotomic::root(12, 12) == Cyclotomic(1));
    CHECK(Cyclotomic::root(9, -1) == Cyclotomic::root(9, 8));
}

TEST_CASE("field operations") {
    auto z3 = Cyclotomic::root(3, 1);
    auto z3b = Cyclotomic::root(3, 2);
    CHECK((Cyclotomic(1) + z3) * (Cyclotomic(1) + z3b) == Cyclotomic(1));
    auto a = Cyclotomic(2) + Cyclotomic::root(5, 1);
    CHECK((a + (-a)).is_zero());
    CHECK(a * a.inverse() == Cyclotomic(1));
    CHECK((Cyclotomic(1) + z3).conj() * (Cyclotomic(1) + z3) == Cyclotomic(1));
    CHECK(Cyclotomic(Rational(3, 4)).conj() == Cyclotomic(Rational(3, 4)));
    CHECK(Cyclotomic::root(5, 1).conj() == Cyclotomic::root(5, 4));
    CHECK_THROWS_AS(Cyclotomic(0, 5).inverse(), DivisionByZero);

    CHECK(Cyclotomic(3).as_integer() == Integer(3));
    CHECK_FALSE(z3.as_integer().has_value());
    CHECK((z3 + z3b + Cyclotomic(1)).as_integer() == Integer(0));
    CHECK(Cyclotomic(Rational(1, 2)).as_rational() == Rational(1, 2));
    CHECK_FALSE(Cyclotomic(Rational(1, 2)).as_integer().has_value());
}

TEST_CASE("ring axioms and canonical form") {
    std::mt19937_64 rng(7);
    for (std::uint32_t e : {1u, 3u, 4u, 5u, 8u, 9u, 12u, 15u, 25u, 27u}) {
        CHECK(Cyclotomic(0, e).coeffs().size() == euler_phi(e));
        for (int rep = 0; rep < 30; ++rep) {
            auto a = random_cyc(rng, e), b = random_cyc(rng, e), c = random_cyc(rng, e);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a + b == b + a);
            CHECK(a.conj().conj() == a);
            CHECK((a * b).conj() == a.conj() * b.conj());
            CHECK(close(oracle::eval(a * b), oracle::eval(a) * oracle::eval(b)));
            CHECK(close(oracle::eval(a.conj()), std::conj(oracle::eval(a))));
            // equal values give identical coefficient vectors
            auto d = (a + b) - b;
            CHECK(d.coeffs() == a.coeffs());
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == Cyclotomic(1, e));
                std::complex<double> prod = 1;
                for (std::int64_t t = 1; t <= e; ++t)
                    if (std::gcd<std::int64_t>(t, e) == 1) prod *= oracle::eval(a.galois(t));
                CHECK(std::abs(prod - a.norm().get_d()) < 1e-6 * std::max(1.0, std::abs(prod)));
            }
        }
    }
}

TEST_CASE("embedding commutes with arithmetic") {
    std::mt19937_64 rng(11);
    for (auto [e, f] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 12}, {4, 12}, {5, 25}, {9, 27}, {3, 15}}) {
        for (int rep = 0; rep < 20; ++rep) {
            auto a = random_cyc(rng, e), b = random_cyc(rng, e);
            CHECK((a * b).embed(f) == a.embed(f) * b.embed(f));
            CHECK((a + b).embed(f) == a.embed(f) + b.embed(f));
            CHECK(close(oracle::eval(a.embed(f)), oracle::eval(a)));
        }
    }
    auto [x, y] = common_conductor(Cyclotomic::root(3, 1), Cyclotomic::root(4, 1));
    CHECK(x.conductor() == 12);
    CHECK(y.conductor() == 12);
    CHECK(Cyclotomic::root(3, 1) * Cyclotomic::root(4, 1) == Cyclotomic::root(12, 7));
}

TEST_CASE("descent to subfields") {
    CHECK(Cyclotomic(-2, 4).descend(2) == Cyclotomic(-2, 2));
    CHECK(Cyclotomic::root(4, 1).descend(2) == std::nullopt);
    // sqrt(-3) = zeta_3 - zeta_3^2 lives in conductor 3 and in 12
    auto s = Cyclotomic::root(3, 1) - Cyclotomic::root(3, 2);
    CHECK(s.embed(12).descend(3) == s);
    CHECK(s.embed(12).descend(6) == s.embed(6));
    CHECK_FALSE(s.descend(4).has_value());
    CHECK(Cyclotomic::root(5, 2).descend(10) == Cyclotomic::root(5, 2).embed(10));
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_cyc(rng, 9);
        CHECK(a.embed(45).descend(9) == a);
        CHECK(close(oracle::eval(*a.embed(45).descend(9)), oracle::eval(a)));
    }
}

TEST_CASE("galois action") {
    auto z = Cyclotomic::root(9, 1);
    CHECK(z.galois(2) == Cyclotomic::root(9, 2));
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_cyc(rng, 9), b = random_cyc(rng, 9);
        CHECK((a * b).galois(4) == a.galois(4) * b.galois(4));
        CHECK(close(oracle::eval(a.galois(-1)), std::conj(oracle::eval(a))));
    }
}

TEST_CASE("proper support sums of prime roots") {
    std::array<std::uint64_t, 3> s3{0, 1, 2};
    std::array<std::int64_t, 3> zero{0, 0, 0};
    CHECK(proper_support_root_sum_is_zero(5, s3, zero));
    std::array<std::uint64_t, 4> s4{0, 1, 2, 3};
    std::array<std::int64_t, 4> ones{1, 1, 1, 1};
    CHECK_FALSE(proper_support_root_sum_is_zero(5, s4, ones));
    std::array<std::uint64_t, 5> full{0, 1, 2, 3, 4};
    std::array<std::int64_t, 5> all{1, 1, 1, 1, 1};
    CHECK_THROWS_AS(proper_support_root_sum_is_zero(5, full, all), InvalidArgument);

    std::mt19937_64 rng(2024);
    std::size_t false_zeros = 0, cases = 0;
    for (std::uint64_t p : {3, 5, 7, 11}) {
        for (int rep = 0; rep < 2500; ++rep) {
            std::vector<std::uint64_t> idx(p);
            std::iota(idx.begin(), idx.end(), 0);
            std::shuffle(idx.begin(), idx.end(), rng);
            const std::size_t k = 1 + rng() % (p - 1);
            std::vector<std::uint64_t> support(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
            std::vector<std::int64_t> coeffs(k);
            std::uniform_int_distribution<std::int64_t> d(-20, 20);
            do {
                for (auto& c : coeffs) c = d(rng);
            } while (std::all_of(coeffs.begin(), coeffs.end(), [](auto c) { return c == 0; }));
            ++cases;
            false_zeros += proper_support_root_sum_is_zero(p, support, coeffs);
        }
    }
    CHECK(cases == 10000);
    CHECK(false_zeros == 0);
}

TEST_CASE("integer cyclotomic ring matches the rational one") {
    std::mt19937_64 rng(5);
    for (std::uint32_t e : {3u, 4u, 8u, 9u, 12u, 25u}) {
        IntCyclotomicRing ring(e);
        CHECK(ring.phi() == euler_phi(e));
        for (std::int64_t k = -2; k < static_cast<std::int64_t>(2 * e); ++k) {
            CHECK(ring.to_cyclotomic(ring.power(k).data()) == Cyclotomic::root(e, k));
        }
        std::uniform_int_distribution<std::int64_t> d(-4, 4);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<std::int64_t> a(ring.phi()), b(ring.phi()), c(ring.phi());
            for (auto& x : a) x = d(rng);
            for (auto& x : b) x = d(rng);
            ring.mul(a.data(), b.data(), c.data());
            CHECK(ring.to_cyclotomic(c.data()) == ring.to_cyclotomic(a.data()) * ring.to_cyclotomic(b.data()));
            ring.conj(a.data(), c.data());
            CHECK(ring.to_cyclotomic(c.data()) == ring.to_cyclotomic(a.data()).conj());
            auto back = ring.from_cyclotomic(ring.to_cyclotomic(a.data()));
            REQUIRE(back.has_value());
            CHECK(*back == a);
        }
        CHECK_FALSE(ring.from_cyclotomic(Cyclotomic(Rational(1, 2))).has_value());
    }
}

TEST_CASE("display") {
    CHECK(Cyclotomic(3).to_string() == "3");
    auto z = Cyclotomic::root(4, 1);
    CHECK(close(z.approx(), {0, 1}));
}
