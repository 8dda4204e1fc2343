#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hml/hml.hpp"

using namespace hml;
using Catch::Matchers::WithinAbs;

TEST_CASE("zeta coefficients") {
    const Field f = make_field(5);
    CHECK(zeta_coeff(f, 11) == 2);
    CHECK(zeta_coeff(f, 4) == 1);
    CHECK(zeta_coeff(f, 2) == 0);
    CHECK(zeta_coeff(f, 1) == 1);
    for (std::int64_t n = 1; n < 50; ++n) CHECK(zeta_coeff(rational_field(), n) == 1);
    CHECK_THROWS_AS(zeta_coeff(f, 0), InvalidInput);
}

TEST_CASE("coprime-restricted coefficients") {
    const Field f = make_field(5);
    const auto c = Ideal::prime_power(f, split_prime(f, 2).front());
    CHECK(zeta_coeff_coprime(f, 4, c) == 0);
    CHECK(zeta_coeff_coprime(f, 11, c) == 2);
    CHECK(zeta_coeff_coprime(f, 1, c) == 1);
}

TEST_CASE("two paths to a_n agree") {
    for (std::int64_t disc : {5, 8, 12, 13, 17, 24}) {
        const Field f = field_from_disc(disc);
        std::vector<std::int64_t> count(2001, 0);
        for (const auto& m : ideals_up_to(f, 2000)) ++count[static_cast<std::size_t>(m.norm())];
        for (std::int64_t n = 1; n <= 2000; ++n) CHECK(zeta_coeff(f, n) == count[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("partial sums") {
    const auto z = zeta_partial(rational_field(), 2.0, 1000000);
    CHECK_THAT(z.value, WithinAbs(std::numbers::pi * std::numbers::pi / 6, 1e-6));
    CHECK(std::abs(z.value - std::numbers::pi * std::numbers::pi / 6) <= z.truncation_bound);
    CHECK(zeta_partial(make_field(5), 2.0, 1).value == 1.0);
    CHECK_THROWS_AS(zeta_partial(rational_field(), 1.0, 10), DivergenceGuard);
}

TEST_CASE("quadratic zeta factors as zeta times L(chi)") {
    const Field f = make_field(5);
    const std::int64_t N = 200000;
    const auto z = zeta_partial(f, 2.0, N);
    double l = 0.0;
    for (std::int64_t n = N; n >= 1; --n) l += kronecker(5, n) / (double(n) * n);
    const double product = std::numbers::pi * std::numbers::pi / 6 * l;
    CHECK(std::abs(z.value - product) <= z.truncation_bound + 1e-5);
}

TEST_CASE("removing Euler factors") {
    const Field f = make_field(5);
    const auto c = mul(Ideal::prime_power(f, split_prime(f, 2).front()),
                       Ideal::prime_power(f, prime_ideal(f, 11, 0)));
    const std::int64_t N = 100000;
    const auto full = zeta_partial(f, 2.0, N);
    const auto restricted = zeta_partial_coprime(f, 2.0, N, c);
    const double expected = full.value * euler_factor_removed(c, 2.0);
    CHECK(std::abs(restricted.value - expected) <= restricted.truncation_bound + full.truncation_bound);
    CHECK_THAT(euler_factor_removed(c, 2.0), WithinAbs((1 - 1.0 / 16) * (1 - 1.0 / 121), 1e-15));
}
