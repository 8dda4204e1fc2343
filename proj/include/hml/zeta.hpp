#pragma once

// Dirichlet coefficients of the Dedekind zeta function: a_n counts integral
// ideals of norm n, a_n(c) those coprime to c.

#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "hml/arith.hpp"
#include "hml/quadfield.hpp"

namespace hml {

/// A truncated sum together with a bound on what the truncation discarded.
struct TruncatedValue {
    double value = 0.0;
    double truncation_bound = 0.0;
};

/// a_n as the divisor-character sum sum_{d | n} (disc | d); 1 over the rationals.
inline std::int64_t zeta_coeff(const Field& field, std::int64_t n) {
    if (n < 1) throw InvalidInput("zeta_coeff: n must be positive");
    if (field.is_rational()) return 1;
    std::int64_t total = 0;
    for (std::int64_t d : divisors(n)) total += kronecker(field.disc, d);
    return total;
}

namespace detail {

// Number of ideals of norm p^e coprime to c, from the splitting of p.
inline std::int64_t local_zeta_count(const Field& field, std::int64_t p, int e, const Ideal* c) {
    if (e == 0) return 1;
    const auto above = split_prime(field, p);
    auto allowed = [&](const PrimeIdeal& q) { return c == nullptr || c->valuation(q) == 0; };
    switch (above.front().split) {
        case SplitType::Split: {
            const int free = (allowed(above[0]) ? 1 : 0) + (allowed(above[1]) ? 1 : 0);
            return free == 2 ? e + 1 : (free == 1 ? 1 : 0);
        }
        case SplitType::Inert:
            return (e % 2 == 0 && allowed(above[0])) ? 1 : 0;
        case SplitType::Ramified:
            return allowed(above[0]) ? 1 : 0;
    }
    return 0;
}

inline std::int64_t zeta_count_from_factorization(const Field& field,
                                                  const std::vector<std::pair<std::int64_t, int>>& fac,
                                                  const Ideal* c) {
    std::int64_t total = 1;
    for (const auto& [p, e] : fac) {
        total *= local_zeta_count(field, p, e, c);
        if (total == 0) break;
    }
    return total;
}

}  // namespace detail

/// a_n(c): ideals of norm n coprime to c, computed from local splitting data.
inline std::int64_t zeta_coeff_coprime(const Field& field, std::int64_t n, const Ideal& c) {
    if (n < 1) throw InvalidInput("zeta_coeff_coprime: n must be positive");
    if (c.disc() != field.disc) throw InvalidInput("zeta_coeff_coprime: restriction ideal over another field");
    return detail::zeta_count_from_factorization(field, factorize(n), &c);
}

/// Upper bound for sum_{n > N} a_n n^{-s}, using a_n <= d(n) for quadratic fields.
inline double zeta_tail_bound(const Field& field, double s, std::int64_t N) {
    const double n = static_cast<double>(N);
    const double base = std::pow(n, 1.0 - s) / (s - 1.0);
    if (field.is_rational()) return base;
    return ((1.0 + std::log(n)) * std::pow(2.0, s - 1.0) + s / (s - 1.0)) * base;
}

/// Cached table n -> a_n(c) for n up to a bound that only grows. Reads take a
/// shared lock; extending the bound is exclusive.
class ZetaCoefficients {
  public:
    explicit ZetaCoefficients(Field field, std::optional<Ideal> restriction = std::nullopt)
        : field_(field), restriction_(std::move(restriction)), values_{0} {
        if (restriction_ && restriction_->disc() != field_.disc) {
            throw InvalidInput("ZetaCoefficients: restriction ideal over another field");
        }
    }

    ZetaCoefficients(const ZetaCoefficients& other) : field_(other.field_), restriction_(other.restriction_) {
        std::shared_lock lock(other.mutex_);
        values_ = other.values_;
    }

    const Field& field() const { return field_; }
    const std::optional<Ideal>& restriction() const { return restriction_; }

    std::int64_t bound() const {
        std::shared_lock lock(mutex_);
        return static_cast<std::int64_t>(values_.size()) - 1;
    }

    /// Extends the table to cover 1..n; already-computed entries are kept.
    void ensure(std::int64_t n) {
        std::unique_lock lock(mutex_);
        const auto old = static_cast<std::int64_t>(values_.size()) - 1;
        if (n <= old) return;
        const FactorSieve sieve(n);
        const Ideal* c = restriction_ ? &*restriction_ : nullptr;
        values_.reserve(static_cast<std::size_t>(n) + 1);
        for (std::int64_t m = old + 1; m <= n; ++m) {
            values_.push_back(detail::zeta_count_from_factorization(field_, sieve.factorize(m), c));
        }
    }

    std::int64_t at(std::int64_t n) {
        if (n < 1) throw InvalidInput("ZetaCoefficients::at: n must be positive");
        ensure(n);
        std::shared_lock lock(mutex_);
        return values_[static_cast<std::size_t>(n)];
    }

    /// sum_{n <= N} a_n(c) n^{-s}, summed from the small terms up.
    TruncatedValue partial(double s, std::int64_t N) {
        if (!(s > 1.0)) throw DivergenceGuard("zeta partial sum requires s > 1");
        if (N < 1) throw InvalidInput("zeta partial sum requires N >= 1");
        ensure(N);
        std::shared_lock lock(mutex_);
        double sum = 0.0;
        for (std::int64_t n = N; n >= 1; --n) {
            const auto a = values_[static_cast<std::size_t>(n)];
            if (a != 0) sum += static_cast<double>(a) * std::pow(static_cast<double>(n), -s);
        }
        return {sum, zeta_tail_bound(field_, s, N)};
    }

  private:
    Field field_;
    std::optional<Ideal> restriction_;
    mutable std::shared_mutex mutex_;
    std::vector<std::int64_t> values_;
};

inline TruncatedValue zeta_partial(const Field& field, double s, std::int64_t N) {
    ZetaCoefficients table(field);
    return table.partial(s, N);
}

inline TruncatedValue zeta_partial_coprime(const Field& field, double s, std::int64_t N, const Ideal& c) {
    ZetaCoefficients table(field, c);
    return table.partial(s, N);
}

/// prod_{p | c} (1 - N(p)^{-s}).
inline double euler_factor_removed(const Ideal& c, double s) {
    double prod = 1.0;
    for (const auto& f : c.factors()) prod *= 1.0 - std::pow(static_cast<double>(f.prime.norm), -s);
    return prod;
}

}  // namespace hml
