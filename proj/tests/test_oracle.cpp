#include <catch2/catch_amalgamated.hpp>

#include "hml/hml.hpp"

using namespace hml;

namespace {

// prod_{n=1}^{N} (1 - q^n), multiplied out term by term.
PowerSeries direct_euler(std::int64_t N) {
    PowerSeries acc(N);
    acc[0] = 1;
    for (std::int64_t n = 1; n <= N; ++n) {
        PowerSeries factor(N);
        factor[0] = 1;
        factor[n] = -1;
        acc = acc * factor;
    }
    return acc;
}

}  // namespace

TEST_CASE("pentagonal expansion matches the direct product") {
    for (std::int64_t N : {1, 5, 20, 60}) {
        const auto a = euler_product(N);
        const auto b = direct_euler(N);
        for (std::int64_t n = 0; n <= N; ++n) CHECK(a[n] == b[n]);
    }
}

TEST_CASE("power recurrence matches repeated multiplication") {
    const auto e = euler_product(40);
    PowerSeries slow(40);
    slow[0] = 1;
    for (int i = 0; i < 24; ++i) slow = slow * e;
    const auto fast = e.pow(24);
    for (std::int64_t n = 0; n <= 40; ++n) CHECK(fast[n] == slow[n]);
    CHECK_THROWS_AS(PowerSeries(std::vector<BigInt>{2, 1}).pow(3), InvalidInput);
}

TEST_CASE("tau values") {
    const auto d = delta_series(12);
    CHECK(d[0] == 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == -24);
    CHECK(d[3] == 252);
    CHECK(d[4] == -1472);
    CHECK(d[5] == 4830);
    CHECK(d[6] == -6048);
    CHECK(d[7] == -16744);
    CHECK(d[8] == 84480);
    CHECK(d[11] == 534612);
    CHECK(d[12] == -370944);
}

TEST_CASE("E4 and the weight 16 form") {
    const auto e4 = e4_series(5);
    CHECK(e4[0] == 1);
    CHECK(e4[1] == 240);
    CHECK(e4[2] == 2160);
    const auto w = weight16_series(6);
    CHECK(w[1] == 1);
    CHECK(w[2] == 216);
    CHECK(w[3] == -3348);
    CHECK(w[4] == 13888);
    CHECK(w[5] == 52110);
    CHECK(w[6] == -723168);
}

TEST_CASE("exported fixture") {
    const auto t = export_fixture(delta_series(100), 12, 100, "delta");
    CHECK(t.entries.size() == 25);
    CHECK(t.entries.at(split_prime(rational_field(), 97).front()) == Rational(delta_series(97)[97]));
    CHECK_THROWS_AS(export_fixture(delta_series(10), 12, 20), PrecisionError);
}

TEST_CASE("synthetic tables are deterministic and within the bound") {
    const Field f = make_field(5);
    const auto w = WeightData::from({4, 6});
    const auto a = synthetic_table(f, w, Ideal::unit(f), 200, 7);
    const auto b = synthetic_table(f, w, Ideal::unit(f), 200, 7);
    const auto c = synthetic_table(f, w, Ideal::unit(f), 200, 8);
    CHECK(a.entries == b.entries);
    CHECK_FALSE(a.entries == c.entries);
    CHECK(validate_ramanujan(a).pass);
    const auto lvl = Ideal::prime_power(f, prime_ideal(f, 11, 1));
    const auto d = synthetic_table(f, w, lvl, 200, 7);
    CHECK(d.entries.count(prime_ideal(f, 11, 1)) == 0);
    CHECK(d.entries.count(prime_ideal(f, 11, 0)) == 1);
}
