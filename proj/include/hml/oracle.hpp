#pragma once

// Level-one classical eigenforms from exact q-expansions, independent of the
// Hecke machinery in forms.hpp: Delta = q prod (1 - q^n)^24, E4, and E4 * Delta.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hml/arith.hpp"
#include "hml/error.hpp"
#include "hml/forms.hpp"
#include "hml/quadfield.hpp"

namespace hml {

/// Exact integer power series c(0) + c(1) q + ... + c(N) q^N.
class PowerSeries {
  public:
    explicit PowerSeries(std::int64_t precision) : c_(static_cast<std::size_t>(check(precision)) + 1) {}
    explicit PowerSeries(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw InvalidInput("PowerSeries: need at least the constant term");
    }

    std::int64_t precision() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    const BigInt& operator[](std::int64_t n) const { return c_.at(static_cast<std::size_t>(n)); }
    BigInt& operator[](std::int64_t n) { return c_.at(static_cast<std::size_t>(n)); }
    const std::vector<BigInt>& coefficients() const { return c_; }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries out(std::min(a.precision(), b.precision()));
        for (std::int64_t n = 0; n <= out.precision(); ++n) out[n] = a[n] + b[n];
        return out;
    }

    /// Product truncated at the smaller precision.
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        PowerSeries out(std::min(a.precision(), b.precision()));
        for (std::int64_t i = 0; i <= out.precision(); ++i) {
            if (a[i] == 0) continue;
            for (std::int64_t j = 0; i + j <= out.precision(); ++j) out[i + j] += a[i] * b[j];
        }
        return out;
    }

    /// this^k, via n F_n = sum_{j=1}^{n} ((k+1) j - n) P_j F_{n-j} for P_0 = 1.
    /// Sparse inputs (such as the Euler product) make this O(N * nnz).
    PowerSeries pow(unsigned k) const {
        if (c_[0] != 1) throw InvalidInput("PowerSeries::pow requires constant term 1");
        std::vector<std::int64_t> support;
        for (std::int64_t j = 1; j <= precision(); ++j) {
            if (c_[static_cast<std::size_t>(j)] != 0) support.push_back(j);
        }
        PowerSeries out(precision());
        out[0] = 1;
        BigInt acc;
        for (std::int64_t n = 1; n <= precision(); ++n) {
            acc = 0;
            for (std::int64_t j : support) {
                if (j > n) break;
                const std::int64_t w = static_cast<std::int64_t>(k + 1) * j - n;
                acc += w * (c_[static_cast<std::size_t>(j)] * out[n - j]);
            }
            out[n] = acc / n;
        }
        return out;
    }

  private:
    static std::int64_t check(std::int64_t precision) {
        if (precision < 0) throw InvalidInput("PowerSeries: negative precision");
        return precision;
    }
    std::vector<BigInt> c_;
};

/// prod_{n >= 1} (1 - q^n) to precision N, from the pentagonal number expansion.
inline PowerSeries euler_product(std::int64_t N) {
    PowerSeries out(N);
    out[0] = 1;
    for (std::int64_t k = 1;; ++k) {
        const std::int64_t g1 = k * (3 * k - 1) / 2;
        const std::int64_t g2 = k * (3 * k + 1) / 2;
        if (g1 > N) break;
        const int sign = (k % 2 == 0) ? 1 : -1;
        out[g1] += sign;
        if (g2 <= N) out[g2] += sign;
    }
    return out;
}

/// Delta = q prod (1 - q^n)^24; coefficients are tau(n).
inline PowerSeries delta_series(std::int64_t N) {
    if (N < 1) throw InvalidInput("delta_series: N must be at least 1");
    const PowerSeries eta24 = euler_product(N - 1).pow(24);
    PowerSeries out(N);
    for (std::int64_t n = 1; n <= N; ++n) out[n] = eta24[n - 1];
    return out;
}

/// E4 = 1 + 240 sum sigma_3(n) q^n.
inline PowerSeries e4_series(std::int64_t N) {
    if (N < 1) throw InvalidInput("e4_series: N must be at least 1");
    std::vector<BigInt> sigma3(static_cast<std::size_t>(N) + 1);
    for (std::int64_t d = 1; d <= N; ++d) {
        const BigInt d3 = BigInt(d) * d * d;
        for (std::int64_t m = d; m <= N; m += d) sigma3[static_cast<std::size_t>(m)] += d3;
    }
    PowerSeries out(N);
    out[0] = 1;
    for (std::int64_t n = 1; n <= N; ++n) out[n] = 240 * sigma3[static_cast<std::size_t>(n)];
    return out;
}

/// E4 * Delta, the normalized level-one cusp eigenform of weight 16.
inline PowerSeries weight16_series(std::int64_t N) {
    return e4_series(N) * delta_series(N);
}

/// Eigenvalue table over the rational field with C(p) = c(p) for primes p <= prime_bound.
inline EigenPrimeTable export_fixture(const PowerSeries& series, int weight, std::int64_t prime_bound,
                                      std::string label = {}) {
    if (series.precision() < prime_bound) {
        throw PrecisionError("export_fixture: series precision " + std::to_string(series.precision()) +
                             " is below the prime bound " + std::to_string(prime_bound));
    }
    const Field field = rational_field();
    EigenPrimeTable table(field, WeightData::from({weight}), Ideal::unit(field));
    table.label = std::move(label);
    for (std::int64_t p : primes_up_to(prime_bound)) table.set(split_prime(field, p).front(), Rational(series[p]));
    return table;
}

namespace detail {

// Uniform integer in [-bound, bound].
inline BigInt uniform_symmetric(std::mt19937_64& rng, const BigInt& bound) {
    if (bound < BigInt(1) << 62) {
        const auto b = bound.convert_to<std::int64_t>();
        return BigInt(std::uniform_int_distribution<std::int64_t>(-b, b)(rng));
    }
    BigInt r = 0;
    for (int i = 0; i < 4; ++i) r = (r << 64) + BigInt(rng());
    return r % (2 * bound + 1) - bound;
}

}  // namespace detail

/// Random integral eigenvalues within the Ramanujan bound |C(p)| <= 2 N(p)^{(k0-1)/2}
/// at every prime of norm <= prime_bound coprime to the level.
inline EigenPrimeTable synthetic_table(const Field& field, const WeightData& weight, const Ideal& level,
                                       std::int64_t prime_bound, std::uint64_t seed, std::string label = {}) {
    std::mt19937_64 rng(seed);
    EigenPrimeTable table(field, weight, level);
    table.label = std::move(label);
    for (const auto& p : prime_ideals_up_to(field, prime_bound)) {
        if (level.valuation(p) != 0) continue;
        const BigInt bound = boost::multiprecision::sqrt(4 * big_pow(p.norm, static_cast<unsigned>(weight.k0 - 1)));
        table.set(p, Rational(detail::uniform_symmetric(rng, bound)));
    }
    return table;
}

}  // namespace hml
