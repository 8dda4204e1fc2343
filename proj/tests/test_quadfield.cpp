#include <catch2/catch_amalgamated.hpp>

#include "generators.hpp"
#include "hml/hml.hpp"

using namespace hml;

TEST_CASE("field constructors") {
    CHECK(make_field(5) == Field{2, 5});
    CHECK(make_field(3) == Field{2, 12});
    CHECK(make_field(2) == Field{2, 8});
    CHECK(rational_field() == Field{1, 1});
    CHECK(field_from_disc(12) == make_field(3));
    CHECK_THROWS_AS(make_field(4), InvalidField);
    CHECK_THROWS_AS(make_field(1), InvalidField);
    CHECK_THROWS_AS(field_from_disc(7), InvalidField);
    CHECK_THROWS_AS(field_from_disc(16), InvalidField);
}

TEST_CASE("kronecker symbol") {
    CHECK(kronecker(5, 11) == 1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(5, 5) == 0);
    CHECK(kronecker(8, 7) == 1);
    CHECK(kronecker(8, 3) == -1);
    CHECK(kronecker(13, 2) == -1);
    CHECK(kronecker(17, 2) == 1);
    // agrees with Euler's criterion at odd primes
    for (std::int64_t p : primes_up_to(200)) {
        if (p == 2) continue;
        for (std::int64_t a : {5, 8, 12, 13, 21, 24}) {
            std::int64_t r = 1;
            for (std::int64_t i = 0; i < (p - 1) / 2; ++i) r = r * (a % p) % p;
            const int euler = (a % p == 0) ? 0 : (r == 1 ? 1 : -1);
            CHECK(kronecker(a, p) == euler);
        }
    }
}

TEST_CASE("prime splitting") {
    const Field f = make_field(5);
    auto s11 = split_prime(f, 11);
    REQUIRE(s11.size() == 2);
    CHECK(s11[0].norm == 11);
    CHECK(s11[1].norm == 11);
    CHECK(s11[0].split == SplitType::Split);
    auto s2 = split_prime(f, 2);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].norm == 4);
    CHECK(s2[0].split == SplitType::Inert);
    auto s5 = split_prime(f, 5);
    REQUIRE(s5.size() == 1);
    CHECK(s5[0].norm == 5);
    CHECK(s5[0].split == SplitType::Ramified);
    CHECK(divides_different(f, s5[0]));
    CHECK_FALSE(divides_different(f, s11[0]));
    CHECK_THROWS_AS(split_prime(f, 9), InvalidInput);

    const auto q = split_prime(rational_field(), 7);
    REQUIRE(q.size() == 1);
    CHECK(q[0].norm == 7);
}

TEST_CASE("ideals of given norm") {
    const Field f = make_field(5);
    CHECK(ideals_of_norm(f, 11).size() == 2);
    CHECK(ideals_of_norm(f, 4).size() == 1);
    CHECK(ideals_of_norm(f, 2).empty());
    const auto one = ideals_of_norm(f, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].is_unit());
    CHECK(ideals_of_norm(f, 121).size() == 3);
}

TEST_CASE("ideal arithmetic") {
    const Field f = make_field(5);
    const auto P = Ideal::prime_power(f, prime_ideal(f, 11, 0));
    const auto Q = Ideal::prime_power(f, prime_ideal(f, 11, 1));
    const auto PQ = mul(P, Q);
    CHECK(PQ.norm() == 121);
    REQUIRE(divide_exact(PQ, P).has_value());
    CHECK(*divide_exact(PQ, P) == Q);
    CHECK_FALSE(divide_exact(Q, P).has_value());
    CHECK(coprime(P, Q));
    CHECK(gcd(PQ, P) == P);
    CHECK(lcm(P, Q) == PQ);
    CHECK(radical(mul(P, P)) == P);
    CHECK(ideal_divisors(PQ).size() == 4);
    CHECK(PQ.label() == "11.0*11.1");
    CHECK_THROWS_AS(mul(P, Ideal::unit(rational_field())), InvalidInput);
}

TEST_CASE("property: norm is multiplicative") {
    for (int i = 0; i < 2000; ++i) {
        const Field f = gen::field();
        const auto a = gen::ideal(f, 300);
        const auto b = gen::ideal(f, 300);
        CHECK(mul(a, b).norm() == a.norm() * b.norm());
    }
}

TEST_CASE("property: divide undoes multiply") {
    for (int i = 0; i < 2000; ++i) {
        const Field f = gen::field();
        const auto a = gen::ideal(f, 500);
        const auto b = gen::ideal(f, 500);
        const auto q = divide_exact(mul(a, b), b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
        CHECK(divides(b, mul(a, b)));
        CHECK(mul(gcd(a, b), lcm(a, b)) == mul(a, b));
    }
}

TEST_CASE("property: enumeration is sorted and counts match ideals_of_norm") {
    for (std::int64_t disc : {1, 5, 8, 12, 13}) {
        const Field f = field_from_disc(disc);
        const auto all = ideals_up_to(f, 400);
        std::vector<std::int64_t> count(401, 0);
        for (std::size_t i = 0; i < all.size(); ++i) {
            ++count[static_cast<std::size_t>(all[i].norm())];
            if (i) CHECK(all[i - 1].norm() <= all[i].norm());
        }
        for (std::int64_t n = 1; n <= 400; ++n) {
            CHECK(count[static_cast<std::size_t>(n)] == static_cast<std::int64_t>(ideals_of_norm(f, n).size()));
        }
    }
}

TEST_CASE("norm overflow is reported") {
    const Field f = rational_field();
    const auto p = Ideal::prime_power(f, split_prime(f, 3).front(), 30);
    CHECK_THROWS_AS(mul(p, p), InvalidInput);
}
