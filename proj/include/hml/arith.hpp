#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "hml/error.hpp"

namespace hml {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw InvalidInput("integer overflow in norm arithmetic: " + std::to_string(a) + " * " +
                           std::to_string(b));
    }
    return r;
}

inline std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

inline BigInt big_pow(std::int64_t base, unsigned exp) {
    return boost::multiprecision::pow(BigInt(base), exp);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::int64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

/// Prime factorization by trial division, ascending primes.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw InvalidInput("factorize: n must be positive, got " + std::to_string(n));
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_squarefree(std::int64_t n) {
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return false;
    }
    return true;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t count = out.size();
        std::int64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

/// Smallest-prime-factor table on [0, limit] for bulk factorization.
class FactorSieve {
  public:
    explicit FactorSieve(std::int64_t limit) : spf_(static_cast<std::size_t>(limit) + 1, 0) {
        for (std::int64_t i = 2; i <= limit; ++i) {
            if (spf_[i] != 0) continue;
            for (std::int64_t j = i; j <= limit; j += i) {
                if (spf_[j] == 0) spf_[j] = i;
            }
        }
    }

    std::int64_t limit() const { return static_cast<std::int64_t>(spf_.size()) - 1; }

    std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) const {
        if (n < 1 || n > limit()) return hml::factorize(n);
        std::vector<std::pair<std::int64_t, int>> out;
        while (n > 1) {
            const std::int64_t p = spf_[n];
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        return out;
    }

    bool is_prime(std::int64_t n) const { return n >= 2 && n <= limit() && spf_[n] == n; }

  private:
    std::vector<std::int64_t> spf_;
};

inline std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    std::vector<std::int64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

/// Kronecker symbol (a|n) for n >= 1, with the (a|2) supplement from a mod 8.
inline int kronecker(std::int64_t a, std::int64_t n) {
    if (n < 1) throw InvalidInput("kronecker: n must be positive");
    if (n == 1) return 1;
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        const std::int64_t r = ((a % 8) + 8) % 8;
        if (r % 2 == 0) return 0;
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol for odd n.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline std::string to_string(const Rational& q) {
    return q.str();
}

}  // namespace hml
