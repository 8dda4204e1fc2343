#pragma once

// Angles alpha_p with beta(p) = 2 cos alpha_p, the closed form for
// beta(p^m), and joint non-vanishing counts along powers of a fixed prime.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "hml/arith.hpp"
#include "hml/error.hpp"

namespace hml {

/// Angles within this distance of 0 or pi are treated as exactly 0 or pi.
inline constexpr double kBoundarySnap = 1e-12;

/// Zero threshold for |beta(p^m)| when the angle is only known in floating point.
inline constexpr double kZeroTolerance = 1e-8;

enum class AngleKind { Zero, Pi, RationalMultiple, IrrationalMultiple };

inline const char* to_string(AngleKind k) {
    switch (k) {
        case AngleKind::Zero: return "zero";
        case AngleKind::Pi: return "pi";
        case AngleKind::RationalMultiple: return "rational";
        case AngleKind::IrrationalMultiple: return "irrational";
    }
    return "?";
}

/// Classification of alpha / pi. For RationalMultiple, alpha = r pi / s with
/// gcd(r, s) = 1 and 0 < r < s. `residual` is |beta - 2 cos alpha| at the
/// matched angle; `exact` marks classifications decided in exact arithmetic.
struct AngleClass {
    double alpha = 0.0;
    AngleKind kind = AngleKind::IrrationalMultiple;
    int r = 0;
    int s = 0;
    double residual = 0.0;
    bool exact = false;

    bool on_boundary() const { return kind == AngleKind::Zero || kind == AngleKind::Pi; }

    std::string label() const {
        if (kind == AngleKind::RationalMultiple) return std::to_string(r) + "/" + std::to_string(s);
        return to_string(kind);
    }

    static AngleClass zero() { return {0.0, AngleKind::Zero, 0, 1, 0.0, true}; }
    static AngleClass pi() { return {std::numbers::pi, AngleKind::Pi, 1, 1, 0.0, true}; }
    static AngleClass rational(int r, int s) {
        return {r * std::numbers::pi / s, AngleKind::RationalMultiple, r, s, 0.0, true};
    }
    static AngleClass irrational(double alpha) { return {alpha, AngleKind::IrrationalMultiple, 0, 0, 0.0, false}; }
};

/// alpha in [0, pi] with beta = 2 cos alpha.
inline double angle_of(double beta) {
    if (!(std::abs(beta) <= 2.0 + kBoundarySnap)) {
        throw RamanujanViolation("normalized eigenvalue " + std::to_string(beta) + " lies outside [-2, 2]");
    }
    const double alpha = std::acos(std::clamp(beta / 2.0, -1.0, 1.0));
    if (alpha <= kBoundarySnap) return 0.0;
    if (std::numbers::pi - alpha <= kBoundarySnap) return std::numbers::pi;
    return alpha;
}

/// beta(p^m) = sin((m+1) alpha) / sin alpha, with the limits m+1 at alpha = 0
/// and (-1)^m (m+1) at alpha = pi.
inline double beta_power_closed(double alpha, std::int64_t m) {
    if (m < 0) throw InvalidInput("beta_power_closed: m must be nonnegative");
    const double m1 = static_cast<double>(m + 1);
    if (alpha <= kBoundarySnap) return m1;
    if (std::numbers::pi - alpha <= kBoundarySnap) return (m % 2 == 0) ? m1 : -m1;
    return std::sin(m1 * alpha) / std::sin(alpha);
}

/// beta(p^0..p^m_max) from beta(p^{m+1}) = beta(p) beta(p^m) - beta(p^{m-1}).
inline std::vector<double> beta_power_sequence(double beta_p, std::int64_t m_max) {
    std::vector<double> out{1.0};
    if (m_max >= 1) out.push_back(beta_p);
    for (std::int64_t m = 1; m < m_max; ++m) out.push_back(beta_p * out[m] - out[m - 1]);
    return out;
}

/// Exact classification of a rational beta. A rational 2 cos(r pi / s) is one
/// of 0, +-1, +-2; any other rational value is an irrational multiple of pi.
inline AngleClass classify_angle(const Rational& beta) {
    if (beta * beta > 4) throw RamanujanViolation("normalized eigenvalue " + beta.str() + " lies outside [-2, 2]");
    if (beta == 2) return AngleClass::zero();
    if (beta == -2) return AngleClass::pi();
    if (beta == 0) return AngleClass::rational(1, 2);
    if (beta == 1) return AngleClass::rational(1, 3);
    if (beta == -1) return AngleClass::rational(2, 3);
    AngleClass out = AngleClass::irrational(angle_of(beta.convert_to<double>()));
    out.exact = true;
    return out;
}

/// Exact classification from beta^2 and the sign of beta, for normalized
/// eigenvalues C / N^{(k0-1)/2} whose square is rational. 2 cos(r pi / s) has
/// rational square only for beta^2 in {0, 1, 2, 3, 4}.
inline AngleClass classify_angle_from_square(const Rational& beta_sq, int sign) {
    if (beta_sq > 4 || beta_sq < 0) {
        throw RamanujanViolation("normalized eigenvalue squared " + beta_sq.str() + " lies outside [0, 4]");
    }
    const bool neg = sign < 0;
    if (beta_sq == 4) return neg ? AngleClass::pi() : AngleClass::zero();
    if (beta_sq == 3) return neg ? AngleClass::rational(5, 6) : AngleClass::rational(1, 6);
    if (beta_sq == 2) return neg ? AngleClass::rational(3, 4) : AngleClass::rational(1, 4);
    if (beta_sq == 1) return neg ? AngleClass::rational(2, 3) : AngleClass::rational(1, 3);
    if (beta_sq == 0) return AngleClass::rational(1, 2);
    const double b = std::sqrt(beta_sq.convert_to<double>());
    AngleClass out = AngleClass::irrational(angle_of(neg ? -b : b));
    out.exact = true;
    return out;
}

/// Heuristic classification of a measured beta: the first r/s (smallest s,
/// then smallest r, s <= s_max) with |beta - 2 cos(r pi / s)| < tol.
inline AngleClass classify_angle(double beta, double tol, int s_max) {
    if (!(tol > 0.0)) throw InvalidInput("classify_angle: tolerance must be positive");
    if (s_max < 2) throw InvalidInput("classify_angle: s_max must be at least 2");
    const double alpha = angle_of(beta);
    if (std::abs(beta - 2.0) < tol) {
        auto out = AngleClass::zero();
        out.residual = std::abs(beta - 2.0);
        out.exact = false;
        return out;
    }
    if (std::abs(beta + 2.0) < tol) {
        auto out = AngleClass::pi();
        out.residual = std::abs(beta + 2.0);
        out.exact = false;
        return out;
    }
    for (int s = 2; s <= s_max; ++s) {
        for (int r = 1; r < s; ++r) {
            if (std::gcd(r, s) != 1) continue;
            const double residual = std::abs(beta - 2.0 * std::cos(r * std::numbers::pi / s));
            if (residual < tol) {
                auto out = AngleClass::rational(r, s);
                out.residual = residual;
                out.exact = false;
                return out;
            }
        }
    }
    return AngleClass::irrational(alpha);
}

/// Whether beta(p^m) = 0. Rational classes decide this arithmetically
/// (s | m+1). An irrational multiple of pi never gives a zero; the floating
/// threshold applies only to angles that were not classified exactly.
inline bool power_coeff_vanishes(const AngleClass& angle, std::int64_t m) {
    switch (angle.kind) {
        case AngleKind::Zero:
        case AngleKind::Pi: return false;
        case AngleKind::RationalMultiple: return (m + 1) % angle.s == 0;
        case AngleKind::IrrationalMultiple:
            if (angle.exact) return false;
            return std::abs(beta_power_closed(angle.alpha, m)) < kZeroTolerance;
    }
    return false;
}

struct NonvanishingCount {
    std::int64_t empirical = 0;
    std::int64_t formula = 0;
};

/// #{1 <= m <= x : beta(p^m) != 0} by enumeration, and x - floor(x/s).
inline NonvanishingCount nonvanishing_count(const AngleClass& angle, std::int64_t x) {
    if (x < 1) throw InvalidInput("nonvanishing_count: x must be positive");
    NonvanishingCount out;
    for (std::int64_t m = 1; m <= x; ++m) {
        if (!power_coeff_vanishes(angle, m)) ++out.empirical;
    }
    out.formula = angle.kind == AngleKind::RationalMultiple ? x - x / angle.s : x;
    return out;
}

/// Joint non-vanishing of C(p^m, f) C(p^m, g) for m <= x, with the case of
/// the density argument it falls under.
///   case 1: both angles in {0, pi}
///   case 2: exactly one angle in {0, pi}
///   case 3: both interior and equal
///   case 4: both interior and distinct
struct DensityReport {
    int case_id = 0;
    std::int64_t x = 0;
    std::int64_t nonzero_count = 0;
    std::int64_t formula_lo = 0;  // equals formula_hi for a point formula
    std::int64_t formula_hi = 0;
    Rational lower_bound_density;
    Rational limit_density;  // exact asymptotic density

    bool point_formula() const { return formula_lo == formula_hi; }
    bool positive_density() const { return lower_bound_density > 0; }
    /// Positive density forces infinitely many m with nonvanishing product.
    bool infinitely_many() const { return positive_density(); }

    /// Enumeration agrees with the formula up to the one-step offset between
    /// zeros at s | m and zeros at s | m+1.
    bool consistent() const {
        if (point_formula()) return std::abs(nonzero_count - formula_lo) <= 1;
        return nonzero_count >= formula_lo - 1 && nonzero_count <= formula_hi;
    }
};

namespace detail {

inline bool same_angle(const AngleClass& a, const AngleClass& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == AngleKind::RationalMultiple) return a.r == b.r && a.s == b.s;
    return std::abs(a.alpha - b.alpha) <= kBoundarySnap;
}

}  // namespace detail

inline DensityReport simultaneous_density(const AngleClass& f, const AngleClass& g, std::int64_t x) {
    if (x < 1) throw InvalidInput("simultaneous_density: x must be positive");
    DensityReport rep;
    rep.x = x;
    for (std::int64_t m = 1; m <= x; ++m) {
        if (!power_coeff_vanishes(f, m) && !power_coeff_vanishes(g, m)) ++rep.nonzero_count;
    }

    auto single = [&](const AngleClass& a) {
        if (a.kind == AngleKind::RationalMultiple) {
            rep.formula_lo = rep.formula_hi = x - x / a.s;
            rep.lower_bound_density = rep.limit_density = Rational(a.s - 1, a.s);
        } else {
            rep.formula_lo = rep.formula_hi = x;
            rep.lower_bound_density = rep.limit_density = Rational(1);
        }
    };

    if (f.on_boundary() && g.on_boundary()) {
        rep.case_id = 1;
        single(f);
    } else if (f.on_boundary() || g.on_boundary()) {
        rep.case_id = 2;
        single(f.on_boundary() ? g : f);
    } else if (detail::same_angle(f, g)) {
        rep.case_id = 3;
        single(f);
    } else {
        rep.case_id = 4;
        const bool rf = f.kind == AngleKind::RationalMultiple;
        const bool rg = g.kind == AngleKind::RationalMultiple;
        if (rf && rg) {
            rep.formula_lo = x - x / f.s - x / g.s;
            rep.formula_hi = x;
            rep.lower_bound_density = Rational(1) - Rational(1, f.s) - Rational(1, g.s);
            rep.limit_density = rep.lower_bound_density + Rational(1, std::lcm(f.s, g.s));
        } else {
            single(rf ? f : g);
        }
    }
    return rep;
}

}  // namespace hml
