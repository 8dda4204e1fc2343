#pragma once

// Base fields of degree <= 2 and their integral ideals, held in factored form.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hml/arith.hpp"
#include "hml/error.hpp"

namespace hml {

/// The rational field (degree 1, disc 1) or a real quadratic field given by its
/// fundamental discriminant.
struct Field {
    int degree = 1;
    std::int64_t disc = 1;

    bool is_rational() const { return degree == 1; }
    friend bool operator==(const Field&, const Field&) = default;
};

inline Field rational_field() {
    return Field{1, 1};
}

/// Q(sqrt d) for squarefree d > 1.
inline Field make_field(std::int64_t d) {
    if (d <= 1) throw InvalidField("make_field: d must exceed 1, got " + std::to_string(d));
    if (!is_squarefree(d)) throw InvalidField("make_field: d = " + std::to_string(d) + " is not squarefree");
    return Field{2, d % 4 == 1 ? d : 4 * d};
}

/// Inverse of make_field; disc 1 selects the rational field.
inline Field field_from_disc(std::int64_t disc) {
    if (disc == 1) return rational_field();
    if (disc > 1 && disc % 4 == 1 && is_squarefree(disc)) return Field{2, disc};
    if (disc > 4 && disc % 4 == 0) {
        const std::int64_t d = disc / 4;
        if ((d % 4 == 2 || d % 4 == 3) && is_squarefree(d)) return Field{2, disc};
    }
    throw InvalidField("not a positive fundamental discriminant: " + std::to_string(disc));
}

enum class SplitType { Split, Inert, Ramified };

inline const char* to_string(SplitType t) {
    switch (t) {
        case SplitType::Split: return "split";
        case SplitType::Inert: return "inert";
        case SplitType::Ramified: return "ramified";
    }
    return "?";
}

/// A prime ideal above the rational prime residue_char. For a split prime the
/// two ideals above p carry index 0 and 1; the index is a label only and does
/// not correspond to a choice of embedding.
struct PrimeIdeal {
    std::int64_t residue_char = 2;
    int index = 0;
    std::int64_t norm = 2;
    SplitType split = SplitType::Ramified;

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.residue_char == b.residue_char && a.index == b.index;
    }
    friend std::strong_ordering operator<=>(const PrimeIdeal& a, const PrimeIdeal& b) {
        if (auto c = a.residue_char <=> b.residue_char; c != 0) return c;
        return a.index <=> b.index;
    }

    /// `p` when p has a single prime above it, `p.i` otherwise.
    std::string label() const {
        std::string s = std::to_string(residue_char);
        if (split == SplitType::Split) s += "." + std::to_string(index);
        return s;
    }
};

inline SplitType split_type(const Field& field, std::int64_t p) {
    if (field.is_rational()) return SplitType::Ramified;
    switch (kronecker(field.disc, p)) {
        case 1: return SplitType::Split;
        case -1: return SplitType::Inert;
        default: return SplitType::Ramified;
    }
}

/// Prime ideals above p. Over the rational field the single prime (p) is
/// reported with split type Ramified (e = f = 1, one prime of norm p).
inline std::vector<PrimeIdeal> split_prime(const Field& field, std::int64_t p) {
    if (!is_prime(p)) throw InvalidInput("split_prime: " + std::to_string(p) + " is not prime");
    const SplitType t = split_type(field, p);
    switch (t) {
        case SplitType::Split: return {PrimeIdeal{p, 0, p, t}, PrimeIdeal{p, 1, p, t}};
        case SplitType::Inert: return {PrimeIdeal{p, 0, checked_mul(p, p), t}};
        case SplitType::Ramified: return {PrimeIdeal{p, 0, p, t}};
    }
    return {};
}

struct IdealFactor {
    PrimeIdeal prime;
    int exponent = 1;

    friend bool operator==(const IdealFactor&, const IdealFactor&) = default;
    friend auto operator<=>(const IdealFactor&, const IdealFactor&) = default;
};

/// Integral ideal in factored form. Factors are kept sorted by prime with
/// positive exponents; the empty factorization is the unit ideal.
class Ideal {
  public:
    Ideal() = default;

    static Ideal unit(const Field& field) {
        Ideal a;
        a.degree_ = field.degree;
        a.disc_ = field.disc;
        return a;
    }

    static Ideal prime_power(const Field& field, const PrimeIdeal& p, int exponent = 1) {
        Ideal a = unit(field);
        if (exponent < 0) throw InvalidInput("prime_power: negative exponent");
        if (exponent > 0) {
            a.factors_.push_back({p, exponent});
            a.norm_ = checked_pow(p.norm, exponent);
        }
        return a;
    }

    /// Builds an ideal from arbitrary factors; merges repeated primes.
    static Ideal from_factors(const Field& field, std::vector<IdealFactor> factors) {
        Ideal a = unit(field);
        std::sort(factors.begin(), factors.end(),
                  [](const IdealFactor& x, const IdealFactor& y) { return x.prime < y.prime; });
        for (const auto& f : factors) {
            if (f.exponent < 0) throw InvalidInput("from_factors: negative exponent");
            if (f.exponent == 0) continue;
            if (!a.factors_.empty() && a.factors_.back().prime == f.prime) {
                a.factors_.back().exponent += f.exponent;
            } else {
                a.factors_.push_back(f);
            }
        }
        a.norm_ = a.recompute_norm();
        return a;
    }

    Field field() const { return Field{degree_, disc_}; }
    std::int64_t disc() const { return disc_; }
    std::int64_t norm() const { return norm_; }
    const std::vector<IdealFactor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }

    int valuation(const PrimeIdeal& p) const {
        for (const auto& f : factors_) {
            if (f.prime == p) return f.exponent;
        }
        return 0;
    }

    std::int64_t recompute_norm() const {
        std::int64_t n = 1;
        for (const auto& f : factors_) n = checked_mul(n, checked_pow(f.prime.norm, f.exponent));
        return n;
    }

    /// `1` for the unit ideal, otherwise `p[.i][^e]` joined by `*`.
    std::string label() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (const auto& f : factors_) {
            if (!s.empty()) s += "*";
            s += f.prime.label();
            if (f.exponent != 1) s += "^" + std::to_string(f.exponent);
        }
        return s;
    }

    friend bool operator==(const Ideal& a, const Ideal& b) {
        return a.disc_ == b.disc_ && a.factors_ == b.factors_;
    }

    /// Norm first, then factorization; ideals of equal norm are in a fixed order.
    friend std::strong_ordering operator<=>(const Ideal& a, const Ideal& b) {
        if (auto c = a.norm_ <=> b.norm_; c != 0) return c;
        if (auto c = a.disc_ <=> b.disc_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(),
                                                      b.factors_.begin(), b.factors_.end());
    }

  private:
    friend Ideal mul(const Ideal&, const Ideal&);
    friend std::optional<Ideal> divide_exact(const Ideal&, const Ideal&);
    friend Ideal gcd(const Ideal&, const Ideal&);
    friend Ideal lcm(const Ideal&, const Ideal&);

    int degree_ = 1;
    std::int64_t disc_ = 1;
    std::vector<IdealFactor> factors_;
    std::int64_t norm_ = 1;
};

struct IdealHash {
    std::size_t operator()(const Ideal& a) const noexcept {
        std::size_t h = std::hash<std::int64_t>{}(a.disc());
        for (const auto& f : a.factors()) {
            const std::uint64_t v = (static_cast<std::uint64_t>(f.prime.residue_char) << 8) ^
                                    (static_cast<std::uint64_t>(f.prime.index) << 4) ^
                                    static_cast<std::uint64_t>(f.exponent) * 0x9e3779b97f4a7c15ULL;
            h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

namespace detail {

inline void require_same_field(const Ideal& a, const Ideal& b, const char* op) {
    if (a.disc() != b.disc()) {
        throw InvalidInput(std::string(op) + ": ideals over different fields (disc " +
                           std::to_string(a.disc()) + " vs " + std::to_string(b.disc()) + ")");
    }
}

// Merge two sorted factor lists, combining exponents of shared primes with op.
template <typename Combine>
std::vector<IdealFactor> merge_factors(const std::vector<IdealFactor>& x, const std::vector<IdealFactor>& y,
                                       Combine combine) {
    std::vector<IdealFactor> out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
        PrimeIdeal p;
        int ex = 0;
        int ey = 0;
        if (j == y.size() || (i < x.size() && x[i].prime < y[j].prime)) {
            p = x[i].prime;
            ex = x[i++].exponent;
        } else if (i == x.size() || y[j].prime < x[i].prime) {
            p = y[j].prime;
            ey = y[j++].exponent;
        } else {
            p = x[i].prime;
            ex = x[i++].exponent;
            ey = y[j++].exponent;
        }
        out.push_back({p, combine(ex, ey)});
    }
    return out;
}

}  // namespace detail

inline Ideal mul(const Ideal& a, const Ideal& b) {
    detail::require_same_field(a, b, "mul");
    Ideal r = a;
    r.factors_ = detail::merge_factors(a.factors_, b.factors_, [](int x, int y) { return x + y; });
    r.norm_ = checked_mul(a.norm_, b.norm_);
    return r;
}

/// b^{-1} a when it is integral, std::nullopt otherwise.
inline std::optional<Ideal> divide_exact(const Ideal& a, const Ideal& b) {
    detail::require_same_field(a, b, "divide_exact");
    if (b.factors_.empty()) return a;
    if (a.norm_ % b.norm_ != 0) return std::nullopt;
    Ideal r = a;
    r.factors_.clear();
    bool integral = true;
    auto merged = detail::merge_factors(a.factors_, b.factors_, [&](int x, int y) {
        if (x < y) integral = false;
        return x - y;
    });
    if (!integral) return std::nullopt;
    for (const auto& f : merged) {
        if (f.exponent > 0) r.factors_.push_back(f);
    }
    r.norm_ = a.norm_ / b.norm_;
    return r;
}

inline Ideal gcd(const Ideal& a, const Ideal& b) {
    detail::require_same_field(a, b, "gcd");
    Ideal r = a;
    r.factors_.clear();
    for (const auto& f : detail::merge_factors(a.factors_, b.factors_, [](int x, int y) { return std::min(x, y); })) {
        if (f.exponent > 0) r.factors_.push_back(f);
    }
    r.norm_ = r.recompute_norm();
    return r;
}

inline Ideal lcm(const Ideal& a, const Ideal& b) {
    detail::require_same_field(a, b, "lcm");
    Ideal r = a;
    r.factors_ = detail::merge_factors(a.factors_, b.factors_, [](int x, int y) { return std::max(x, y); });
    r.norm_ = r.recompute_norm();
    return r;
}

inline bool coprime(const Ideal& a, const Ideal& b) {
    return gcd(a, b).is_unit();
}

inline bool divides(const Ideal& d, const Ideal& a) {
    return divide_exact(a, d).has_value();
}

/// Product of the distinct primes dividing a.
inline Ideal radical(const Ideal& a) {
    std::vector<IdealFactor> fs;
    for (const auto& f : a.factors()) fs.push_back({f.prime, 1});
    return Ideal::from_factors(a.field(), std::move(fs));
}

/// All integral divisors of a, in ascending order.
inline std::vector<Ideal> ideal_divisors(const Ideal& a) {
    std::vector<Ideal> out{Ideal::unit(a.field())};
    for (const auto& f : a.factors()) {
        const std::size_t count = out.size();
        for (int e = 1; e <= f.exponent; ++e) {
            const Ideal pe = Ideal::prime_power(a.field(), f.prime, e);
            for (std::size_t i = 0; i < count; ++i) out.push_back(mul(out[i], pe));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Ideals of norm p^e, where p has the listed primes above it.
inline std::vector<Ideal> local_ideals(const Field& field, const std::vector<PrimeIdeal>& above, int e) {
    std::vector<Ideal> out;
    const PrimeIdeal& first = above.front();
    switch (first.split) {
        case SplitType::Split:
            for (int a = e; a >= 0; --a) {
                out.push_back(Ideal::from_factors(field, {{above[0], a}, {above[1], e - a}}));
            }
            break;
        case SplitType::Inert:
            if (e % 2 == 0) out.push_back(Ideal::prime_power(field, first, e / 2));
            break;
        case SplitType::Ramified:
            out.push_back(Ideal::prime_power(field, first, e));
            break;
    }
    return out;
}

inline std::vector<Ideal> ideals_from_factorization(const Field& field,
                                                    const std::vector<std::pair<std::int64_t, int>>& fac) {
    std::vector<Ideal> out{Ideal::unit(field)};
    for (const auto& [p, e] : fac) {
        const auto local = local_ideals(field, split_prime(field, p), e);
        std::vector<Ideal> next;
        next.reserve(out.size() * local.size());
        for (const auto& a : out) {
            for (const auto& b : local) next.push_back(mul(a, b));
        }
        out = std::move(next);
        if (out.empty()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Every integral ideal of norm exactly n, in canonical order.
inline std::vector<Ideal> ideals_of_norm(const Field& field, std::int64_t n) {
    if (n < 1) throw InvalidInput("ideals_of_norm: n must be positive");
    return detail::ideals_from_factorization(field, factorize(n));
}

/// Every integral ideal of norm at most bound, sorted by norm.
inline std::vector<Ideal> ideals_up_to(const Field& field, std::int64_t bound) {
    std::vector<Ideal> out;
    if (bound < 1) return out;
    const FactorSieve sieve(bound);
    for (std::int64_t n = 1; n <= bound; ++n) {
        auto batch = detail::ideals_from_factorization(field, sieve.factorize(n));
        for (auto& a : batch) out.push_back(std::move(a));
    }
    return out;
}

/// Prime ideals of norm at most bound, ordered by norm then label.
inline std::vector<PrimeIdeal> prime_ideals_up_to(const Field& field, std::int64_t bound) {
    std::vector<PrimeIdeal> out;
    for (std::int64_t p : primes_up_to(bound)) {
        for (const auto& q : split_prime(field, p)) {
            if (q.norm <= bound) out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.norm != b.norm ? a.norm < b.norm : a < b;
    });
    return out;
}

/// The prime ideal of the field with given residue characteristic and index.
inline PrimeIdeal prime_ideal(const Field& field, std::int64_t p, int index) {
    for (const auto& q : split_prime(field, p)) {
        if (q.index == index) return q;
    }
    throw InvalidInput("no prime ideal " + std::to_string(p) + "." + std::to_string(index) + " over disc " +
                       std::to_string(field.disc));
}

/// A prime of the field divides the different exactly when it is ramified.
inline bool divides_different(const Field& field, const PrimeIdeal& p) {
    return !field.is_rational() && field.disc % p.residue_char == 0;
}

}  // namespace hml
