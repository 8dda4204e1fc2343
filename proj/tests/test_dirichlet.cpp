#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "generators.hpp"
#include "hml/hml.hpp"

using namespace hml;
using Catch::Matchers::WithinAbs;

namespace {

const Field Q = rational_field();

struct Pair {
    CoefficientSystem f;
    CoefficientSystem g;
};

const Pair& delta_pair() {
    static const Pair p{build_eigen_system(export_fixture(delta_series(2000), 12, 2000), 2000),
                        build_eigen_system(export_fixture(weight16_series(2000), 16, 2000), 2000)};
    return p;
}

}  // namespace

TEST_CASE("real zeros of Dirichlet polynomials") {
    auto z = real_zero_scan(DirichletPolynomial({{1, 1.0}, {2, -1.0}}), -5, 5);
    REQUIRE(z.zeros.size() == 1);
    CHECK_THAT(z.zeros[0], WithinAbs(0.0, 1e-9));
    z = real_zero_scan(DirichletPolynomial({{1, 1.0}}), -5, 5);
    CHECK(z.zeros.empty());
    CHECK_FALSE(z.identically_zero);
    z = real_zero_scan(DirichletPolynomial({{1, -1.0}, {2, 3.0}}), -5, 5);
    REQUIRE(z.zeros.size() == 1);
    CHECK_THAT(z.zeros[0], WithinAbs(std::log2(3.0), 1e-9));
    CHECK(real_zero_scan(DirichletPolynomial(), -1, 1).identically_zero);
    CHECK(real_zero_scan(DirichletPolynomial({{3, 0.0}}), -1, 1).identically_zero);
}

TEST_CASE("Landau positivity") {
    auto r = landau_positivity_check({1, 0, 2}, 1.0);
    CHECK(r.monotone);
    CHECK_FALSE(r.identically_zero);
    CHECK(r.total > 0);
    CHECK(landau_positivity_check({0, 0}, 1.0).identically_zero);
    CHECK_THROWS_AS(landau_positivity_check({1, -1}, 0.5), NotApplicable);
}

TEST_CASE("property: Landau partial sums are monotone") {
    for (int i = 0; i < 300; ++i) {
        std::vector<double> c(static_cast<std::size_t>(gen::uniform(1, 40)));
        for (auto& x : c) x = gen::uniform(0, 3) == 0 ? 0.0 : gen::real(0, 10);
        const double sign = gen::uniform(0, 1) ? 1.0 : -1.0;
        for (auto& x : c) x *= sign;
        const auto r = landau_positivity_check(c, gen::real(-2, 4));
        CHECK(r.monotone);
        for (std::size_t k = 1; k < r.partial_sums.size(); ++k) CHECK(r.partial_sums[k] >= r.partial_sums[k - 1]);
    }
}

TEST_CASE("raw Rankin sum") {
    const auto& p = delta_pair();
    const Ideal one = Ideal::unit(Q);
    CHECK(rs_raw(p.f, p.g, one, 20.0, 1).value == 1.0);
    const auto d = delta_series(100);
    const auto e = weight16_series(100);
    double direct = 0.0;
    for (int n = 100; n >= 1; --n) direct += d[n].convert_to<double>() * e[n].convert_to<double>() * std::pow(n, -20.0);
    CHECK_THAT(rs_raw(p.f, p.g, one, 20.0, 100).value, WithinAbs(direct, 1e-12));
}

TEST_CASE("Rankin coefficients") {
    const auto& p = delta_pair();
    const Ideal one = Ideal::unit(Q);
    const auto s = rs_coefficients(p.f, p.g, one, one, 100);
    CHECK(s.b[1] == 1);
    const auto d = delta_series(4);
    const auto e = weight16_series(4);
    CHECK(s.b[4] == Rational(big_pow(2, 26) + d[4] * e[4]));
    CHECK(s.b[2] == Rational(d[2] * e[2]));
}

TEST_CASE("Rankin coefficients of the trivial pair") {
    const Field f = make_field(5);
    CoefficientSystem one = CoefficientSystem::from_function(f, WeightData::from({2, 2}), Ideal::unit(f), 50,
                                                             [](const Ideal& m) { return Rational(m.is_unit() ? 1 : 0); });
    const auto s = rs_coefficients(one, one, Ideal::unit(f), Ideal::unit(f), 50);
    for (std::int64_t m = 1; m <= 50; ++m) {
        const auto r = static_cast<std::int64_t>(std::llround(std::sqrt(double(m))));
        if (r * r == m) CHECK(s.b[m] == Rational(zeta_coeff(f, r) * big_pow(r, 2)));
        else CHECK(s.b[m] == 0);
    }
}

TEST_CASE("restriction is invisible after killing") {
    const auto& p = delta_pair();
    const Ideal q = Ideal::prime_power(Q, split_prime(Q, 3).front());
    const auto g = kill_multiples(p.g, q);
    const double a = rs_raw(p.f, g, Ideal::unit(Q), 20.0, 900).value;
    const double b = rs_raw(p.f, g, q, 20.0, 900).value;
    CHECK(a == b);
}

TEST_CASE("two assemblies of L agree") {
    const auto& p = delta_pair();
    const Ideal one = Ideal::unit(Q);
    const auto s = rs_coefficients(p.f, p.g, one, one, 2000);
    for (double sv : {18.0, 20.0, 25.0, 30.0}) {
        const auto chk = rs_convolution_check(s, p.f, p.g, sv);
        CHECK(chk.within());
        CHECK(chk.residual < 1e-6);
    }
    CHECK_THAT(s.value(200.0).value, WithinAbs(1.0, 1e-12));
}

TEST_CASE("Gamma pole lattice") {
    const auto& p = delta_pair();
    const Ideal one = Ideal::unit(Q);
    const auto s = rs_coefficients(p.f, p.g, one, one, 100);
    const auto w12 = WeightData::from({12});
    const auto w16 = WeightData::from({16});
    auto r = completed_lambda(w12, w16, s, 15.0);
    CHECK(r.pole);
    CHECK(r.pole_factor == 1);
    CHECK(r.pole_gamma == 1);
    CHECK_FALSE(completed_lambda(w12, w16, s, 16.0).pole);
    CHECK_FALSE(completed_lambda(w12, w16, s, 7.3).pole);
    // poles at s - 15 in Z_{<=0} or s in Z_{<=0}
    for (int k = -20; k <= 40; ++k) {
        const double sv = k / 2.0;
        const bool expected = (k % 2 == 0) && sv <= 15.0;
        CHECK(completed_lambda(w12, w16, s, sv).pole == expected);
    }
}
