#pragma once

// Ideal-indexed coefficient systems C(m, f) of Hilbert cusp forms, their Hecke
// structure, and the operators f|q, f|U(q) and f - (f|U(q))|q.
//
// Coefficients are exact rationals. The boundary to floating point is beta(),
// which divides by N(a)^{(k0-1)/2}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hml/arith.hpp"
#include "hml/error.hpp"
#include "hml/quadfield.hpp"

namespace hml {

/// Weight vector (k_1, ..., k_n) with k0 = max k_j and k'_j = k0 - k_j.
struct WeightData {
    std::vector<int> weights;
    int k0 = 0;
    std::vector<int> kprime;

    static WeightData from(std::vector<int> w) {
        if (w.empty()) throw InvalidInput("weight vector is empty");
        for (int k : w) {
            if (k <= 0) throw InvalidInput("weights must be positive integers");
        }
        WeightData out;
        out.k0 = *std::max_element(w.begin(), w.end());
        for (int k : w) out.kprime.push_back(out.k0 - k);
        out.weights = std::move(w);
        return out;
    }

    std::string label() const {
        std::string s;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(weights[i]);
        }
        return s;
    }

    friend bool operator==(const WeightData& a, const WeightData& b) { return a.weights == b.weights; }
};

/// Hecke eigenvalues C(p, f) at primes coprime to the level.
struct EigenPrimeTable {
    Field field;
    WeightData weight;
    Ideal level;
    std::map<PrimeIdeal, Rational> entries;
    bool cm_flag = false;
    std::string label;

    EigenPrimeTable(Field f, WeightData w, Ideal lvl) : field(f), weight(std::move(w)), level(std::move(lvl)) {
        if (level.disc() != field.disc) throw InvalidInput("EigenPrimeTable: level ideal over another field");
    }

    void set(const PrimeIdeal& p, Rational value) {
        if (level.valuation(p) != 0) {
            throw InvalidInput("EigenPrimeTable: prime " + p.label() + " divides the level " + level.label());
        }
        entries[p] = std::move(value);
    }
};

/// C(p^m) from C(p) via C(p^{m+1}) = C(p)C(p^m) - N(p)^{k0-1} C(p^{m-1}); entries 0..m_max.
inline std::vector<Rational> prime_power_coeffs(const Rational& c_p, std::int64_t norm_p, int k0, int m_max) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(m_max) + 1);
    out.emplace_back(1);
    if (m_max >= 1) out.push_back(c_p);
    const BigInt scale = big_pow(norm_p, static_cast<unsigned>(k0 - 1));
    for (int m = 1; m < m_max; ++m) {
        out.push_back(c_p * out[m] - Rational(scale) * out[m - 1]);
    }
    return out;
}

inline Rational prime_power_coeff(const Rational& c_p, std::int64_t norm_p, int k0, int m) {
    if (m < 0) throw InvalidInput("prime_power_coeff: negative exponent");
    if (norm_p < 2) throw InvalidInput("prime_power_coeff: prime norm must be at least 2");
    if (k0 < 2) throw InvalidInput("prime_power_coeff: k0 must be at least 2");
    return prime_power_coeffs(c_p, norm_p, k0, m).back();
}

/// c / N^{(k0-1)/2}; the integral part of the power is divided out exactly
/// before converting so large norms do not overflow.
inline double normalized_coefficient(const Rational& c, const BigInt& norm, int k0) {
    if (c == 0) return 0.0;
    const int e2 = k0 - 1;
    if (e2 >= 0 && e2 % 2 == 0) {
        const Rational q = c / Rational(boost::multiprecision::pow(norm, static_cast<unsigned>(e2 / 2)));
        return q.convert_to<double>();
    }
    const double rest = std::pow(norm.convert_to<double>(), e2 >= 0 ? 0.5 : static_cast<double>(e2) / 2.0);
    if (e2 < 0) return c.convert_to<double>() / rest;
    const Rational q = c / Rational(boost::multiprecision::pow(norm, static_cast<unsigned>((e2 - 1) / 2)));
    return q.convert_to<double>() / rest;
}

/// Materialized coefficient table on every integral ideal of norm <= bound.
/// Eigen systems omit ideals sharing a prime with the level; querying one is
/// a NotCovered error rather than an implicit zero.
class CoefficientSystem {
  public:
    CoefficientSystem(Field field, WeightData weight, Ideal level, std::int64_t bound, bool is_eigen,
                      bool cm_flag = false)
        : field_(field),
          weight_(std::move(weight)),
          level_(std::move(level)),
          bound_(bound),
          is_eigen_(is_eigen),
          cm_flag_(cm_flag) {
        if (level_.disc() != field_.disc) throw InvalidInput("CoefficientSystem: level ideal over another field");
        if (bound_ < 1) throw BoundError("CoefficientSystem: bound must be at least 1");
    }

    /// General (non-eigen) system with C(m) = fn(m) for every ideal of norm <= bound.
    template <typename Fn>
    static CoefficientSystem from_function(Field field, WeightData weight, Ideal level, std::int64_t bound, Fn fn) {
        CoefficientSystem sys(field, std::move(weight), std::move(level), bound, false);
        for (const auto& m : ideals_up_to(field, bound)) sys.set(m, fn(m));
        return sys;
    }

    const Field& field() const { return field_; }
    const WeightData& weight() const { return weight_; }
    const Ideal& level() const { return level_; }
    std::int64_t bound() const { return bound_; }
    bool is_eigen() const { return is_eigen_; }
    bool cm_flag() const { return cm_flag_; }
    std::size_t size() const { return coeffs_.size(); }

    bool covers(const Ideal& m) const { return m.norm() <= bound_ && coeffs_.count(m) != 0; }

    const Rational& coeff(const Ideal& m) const {
        if (m.disc() != field_.disc) throw InvalidInput("coefficient query with an ideal over another field");
        if (m.norm() > bound_) {
            throw BoundError("coefficient at " + m.label() + " (norm " + std::to_string(m.norm()) +
                             ") is beyond the system bound " + std::to_string(bound_));
        }
        auto it = coeffs_.find(m);
        if (it == coeffs_.end()) {
            throw NotCovered("coefficient at " + m.label() + " is not covered (level " + level_.label() + ")");
        }
        return it->second;
    }

    /// C(den^{-1} num): zero when den^{-1} num is not integral.
    Rational coeff_at_quotient(const Ideal& num, const Ideal& den) const {
        auto q = divide_exact(num, den);
        if (!q) return Rational(0);
        return coeff(*q);
    }

    void set(const Ideal& m, Rational value) {
        if (m.norm() > bound_) throw BoundError("set: ideal " + m.label() + " beyond bound");
        coeffs_[m] = std::move(value);
    }

    /// Entries sorted by ideal (norm first).
    std::vector<std::pair<Ideal, Rational>> sorted_entries() const {
        std::vector<std::pair<Ideal, Rational>> out(coeffs_.begin(), coeffs_.end());
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    const std::unordered_map<Ideal, Rational, IdealHash>& entries() const { return coeffs_; }

    void set_level(Ideal level) { level_ = std::move(level); }
    void clear_eigen() { is_eigen_ = false; }

  private:
    Field field_;
    WeightData weight_;
    Ideal level_;
    std::int64_t bound_;
    bool is_eigen_;
    bool cm_flag_;
    std::unordered_map<Ideal, Rational, IdealHash> coeffs_;
};

/// Coefficients on all ideals of norm <= bound coprime to the level, from
/// multiplicativity and the prime-power recurrence.
inline CoefficientSystem build_eigen_system(const EigenPrimeTable& table, std::int64_t bound) {
    if (bound < 1) throw BoundError("build_eigen_system: bound must be at least 1");
    const int k0 = table.weight.k0;
    std::map<PrimeIdeal, std::vector<Rational>> powers;
    for (const auto& p : prime_ideals_up_to(table.field, bound)) {
        if (table.level.valuation(p) != 0) {
            if (table.entries.count(p)) {
                throw InvalidInput("eigenvalue table lists prime " + p.label() + " dividing the level");
            }
            continue;
        }
        auto it = table.entries.find(p);
        if (it == table.entries.end()) {
            throw IncompleteTable("eigenvalue table is missing prime " + p.label() + " (norm " +
                                  std::to_string(p.norm) + ") needed for bound " + std::to_string(bound));
        }
        int m_max = 0;
        for (std::int64_t n = 1; n <= bound / p.norm; n *= p.norm) ++m_max;
        powers.emplace(p, prime_power_coeffs(it->second, p.norm, k0, m_max));
    }

    CoefficientSystem sys(table.field, table.weight, table.level, bound, true, table.cm_flag);
    for (const auto& m : ideals_up_to(table.field, bound)) {
        if (!coprime(m, table.level)) continue;
        Rational c(1);
        for (const auto& f : m.factors()) c *= powers.at(f.prime)[static_cast<std::size_t>(f.exponent)];
        sys.set(m, std::move(c));
    }
    return sys;
}

/// C(m)C(n) - sum_{a | m + n} N(a)^{k0-1} C(a^{-2} m n); zero for eigen systems.
inline Rational hecke_product_check(const CoefficientSystem& sys, const Ideal& m, const Ideal& n) {
    if (!sys.is_eigen()) throw NotApplicable("hecke_product_check requires an eigen system");
    const Ideal mn = mul(m, n);
    if (mn.norm() > sys.bound()) {
        throw BoundError("hecke_product_check: N(mn) = " + std::to_string(mn.norm()) + " exceeds bound " +
                         std::to_string(sys.bound()));
    }
    const int k0 = sys.weight().k0;
    Rational sum(0);
    for (const auto& a : ideal_divisors(gcd(m, n))) {
        const Ideal a2 = mul(a, a);
        sum += Rational(big_pow(a.norm(), static_cast<unsigned>(k0 - 1))) * sys.coeff_at_quotient(mn, a2);
    }
    return sys.coeff(m) * sys.coeff(n) - sum;
}

/// f|q: C(m, f|q) = C(q^{-1} m, f), zero off integral quotients. Level becomes q*level.
inline CoefficientSystem shift_by(const CoefficientSystem& sys, const Ideal& q) {
    if (q.disc() != sys.field().disc) throw InvalidInput("shift_by: ideal over another field");
    if (q.is_unit()) return sys;
    CoefficientSystem out(sys.field(), sys.weight(), mul(sys.level(), q), checked_mul(sys.bound(), q.norm()),
                          false, sys.cm_flag());
    for (const auto& m : ideals_up_to(sys.field(), out.bound())) {
        auto d = divide_exact(m, q);
        if (!d) {
            out.set(m, Rational(0));
        } else if (sys.covers(*d)) {
            out.set(m, sys.coeff(*d));
        }
    }
    return out;
}

/// f|U(q): C(m, f|U(q)) = C(qm, f). The result reaches norm floor(bound / N(q)).
inline CoefficientSystem u_operator(const CoefficientSystem& sys, const Ideal& q) {
    if (q.disc() != sys.field().disc) throw InvalidInput("u_operator: ideal over another field");
    if (q.is_unit()) return sys;
    const std::int64_t bound = sys.bound() / q.norm();
    if (bound < 1) {
        throw BoundError("u_operator: N(q) = " + std::to_string(q.norm()) + " exceeds the system bound " +
                         std::to_string(sys.bound()));
    }
    CoefficientSystem out(sys.field(), sys.weight(), mul(sys.level(), q), bound, false, sys.cm_flag());
    for (const auto& m : ideals_up_to(sys.field(), bound)) {
        const Ideal qm = mul(q, m);
        if (sys.covers(qm)) out.set(m, sys.coeff(qm));
    }
    return out;
}

/// Pointwise a - b on ideals both cover, up to the smaller bound.
inline CoefficientSystem subtract(const CoefficientSystem& a, const CoefficientSystem& b) {
    if (a.field() != b.field()) throw InvalidInput("subtract: systems over different fields");
    if (!(a.weight() == b.weight())) throw InvalidInput("subtract: systems of different weight");
    CoefficientSystem out(a.field(), a.weight(), lcm(a.level(), b.level()), std::min(a.bound(), b.bound()), false,
                          a.cm_flag());
    for (const auto& [m, c] : a.entries()) {
        if (m.norm() <= out.bound() && b.covers(m)) out.set(m, c - b.coeff(m));
    }
    return out;
}

/// g = f - (f|U(q))|q, of level q^2 * level. g vanishes on multiples of q and
/// agrees with f on ideals coprime to q. The result reaches norm
/// floor(bound / N(q)) * N(q).
inline CoefficientSystem kill_multiples(const CoefficientSystem& sys, const Ideal& q) {
    CoefficientSystem g = subtract(sys, shift_by(u_operator(sys, q), q));
    g.set_level(mul(sys.level(), mul(q, q)));
    return g;
}

/// beta(a, f) = C(a, f) / N(a)^{(k0-1)/2}.
inline double beta(const CoefficientSystem& sys, const Ideal& a) {
    return normalized_coefficient(sys.coeff(a), BigInt(a.norm()), sys.weight().k0);
}

struct PrimeCheck {
    PrimeIdeal prime;
    Rational value;
    double beta = 0.0;
    double bound = 0.0;  // 2 N(p)^{(k0-1)/2}
    bool pass = true;
};

struct RamanujanReport {
    std::vector<PrimeCheck> checks;
    bool pass = true;
    bool vacuous = false;  // empty table: passes with a warning

    std::vector<PrimeIdeal> failures() const {
        std::vector<PrimeIdeal> out;
        for (const auto& c : checks) {
            if (!c.pass) out.push_back(c.prime);
        }
        return out;
    }
};

/// |C(p)| <= 2 N(p)^{(k0-1)/2} at every listed prime, decided exactly as
/// C(p)^2 <= 4 N(p)^{k0-1}.
inline RamanujanReport validate_ramanujan(const EigenPrimeTable& table) {
    RamanujanReport report;
    report.vacuous = table.entries.empty();
    const int k0 = table.weight.k0;
    for (const auto& [p, c] : table.entries) {
        PrimeCheck check;
        check.prime = p;
        check.value = c;
        check.beta = normalized_coefficient(c, BigInt(p.norm), k0);
        check.bound = 2.0 * std::pow(static_cast<double>(p.norm), (k0 - 1) / 2.0);
        check.pass = c * c <= Rational(4 * big_pow(p.norm, static_cast<unsigned>(k0 - 1)));
        report.pass = report.pass && check.pass;
        report.checks.push_back(std::move(check));
    }
    return report;
}

}  // namespace hml
