#pragma once

// Dirichlet polynomials and the Rankin-Selberg series of two coefficient
// systems. Every series value is a truncation and carries a bound on what was
// cut off; analytic continuation is not attempted.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hml/arith.hpp"
#include "hml/error.hpp"
#include "hml/forms.hpp"
#include "hml/quadfield.hpp"
#include "hml/zeta.hpp"

namespace hml {

struct DirichletTerm {
    std::int64_t n = 1;
    double a = 0.0;
};

/// Finite sum sum a(n) n^{-s} with strictly increasing indices and no stored zeros.
class DirichletPolynomial {
  public:
    DirichletPolynomial() = default;

    explicit DirichletPolynomial(const std::vector<std::pair<std::int64_t, double>>& terms) {
        std::map<std::int64_t, double> merged;
        for (const auto& [n, a] : terms) {
            if (n < 1) throw InvalidInput("Dirichlet polynomial index must be positive");
            merged[n] += a;
        }
        for (const auto& [n, a] : merged) {
            if (a != 0.0) terms_.push_back({n, a});
        }
    }

    const std::vector<DirichletTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    double operator()(double s) const {
        double sum = 0.0;
        for (const auto& t : terms_) sum += t.a * std::exp(-s * std::log(static_cast<double>(t.n)));
        return sum;
    }

  private:
    std::vector<DirichletTerm> terms_;
};

struct ZeroScan {
    bool identically_zero = false;
    std::vector<double> zeros;
    /// Sign bracketing on a grid misses zeros of even order and pairs of zeros
    /// closer than the grid spacing.
    static constexpr const char* kCaveat = "sign-change bracketing: tangential zeros may be missed";
};

/// Real zeros of p on [lo, hi]: sign changes between grid points, refined by
/// bisection to width tol. The empty polynomial is reported as identically zero.
inline ZeroScan real_zero_scan(const DirichletPolynomial& p, double lo, double hi, int grid = 10000,
                               double tol = 1e-10) {
    if (!(lo < hi)) throw InvalidInput("real_zero_scan: need lo < hi");
    if (grid < 2) throw InvalidInput("real_zero_scan: grid must have at least 2 points");
    ZeroScan out;
    if (p.empty()) {
        out.identically_zero = true;
        return out;
    }
    const double step = (hi - lo) / (grid - 1);
    double x0 = lo;
    double f0 = p(x0);
    if (f0 == 0.0) out.zeros.push_back(x0);
    for (int i = 1; i < grid; ++i) {
        const double x1 = (i == grid - 1) ? hi : lo + step * i;
        const double f1 = p(x1);
        if (f1 == 0.0) {
            out.zeros.push_back(x1);
        } else if (f0 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
            double a = x0;
            double b = x1;
            double fa = f0;
            while (b - a > tol) {
                const double mid = 0.5 * (a + b);
                const double fm = p(mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            out.zeros.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return out;
}

struct LandauReport {
    std::vector<double> partial_sums;  // of the sign-normalized series
    int sign = 1;                      // -1 when the input was nonpositive
    bool monotone = true;
    bool identically_zero = false;
    double total = 0.0;
};

/// Partial sums s_i = sum_{n <= i} a(n) / n^alpha of a one-signed coefficient
/// list. They are nondecreasing, so the sum can vanish only when every
/// coefficient does.
inline LandauReport landau_positivity_check(const std::vector<double>& coeffs, double alpha) {
    const bool any_pos = std::any_of(coeffs.begin(), coeffs.end(), [](double a) { return a > 0.0; });
    const bool any_neg = std::any_of(coeffs.begin(), coeffs.end(), [](double a) { return a < 0.0; });
    if (any_pos && any_neg) throw NotApplicable("landau_positivity_check: coefficients change sign");
    LandauReport rep;
    rep.sign = any_neg ? -1 : 1;
    rep.identically_zero = !any_pos && !any_neg;
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double next = s + rep.sign * coeffs[i] * std::pow(static_cast<double>(i + 1), -alpha);
        if (next < s) rep.monotone = false;
        s = next;
        rep.partial_sums.push_back(s);
    }
    rep.total = s;
    return rep;
}

/// Assumed coefficient growth |C(m, f) C(m, g)| <= constant * N(m)^exponent,
/// used only to bound truncation tails.
struct GrowthBound {
    double constant = 1.0;
    double exponent = 0.0;

    /// From |C(p)| <= 2 N(p)^{(k0-1)/2}: |C(m)| <= d(m) N(m)^{(k0-1)/2}, with the
    /// ideal divisor count d(m) <= 2 N(m)^{1/2} over Q and <= 4 N(m) over a
    /// quadratic field.
    static GrowthBound deligne(const Field& field, int k0_plus_l0) {
        const double base = (k0_plus_l0 - 2) / 2.0;
        if (field.is_rational()) return {4.0, base + 1.0};
        return {16.0, base + 2.0};
    }
};

namespace detail {

// sum_{n > M} a_n * A n^{gamma - s}, with a_n <= 1 over Q and a_n <= 2 sqrt(n) otherwise.
inline double series_tail(const Field& field, const GrowthBound& g, double s, std::int64_t M) {
    const double count_const = field.is_rational() ? 1.0 : 2.0;
    const double count_exp = field.is_rational() ? 0.0 : 0.5;
    const double sigma = s - g.exponent - count_exp;
    if (!(sigma > 1.0)) return std::numeric_limits<double>::infinity();
    return g.constant * count_const * std::pow(static_cast<double>(M), 1.0 - sigma) / (sigma - 1.0);
}

// Upper bound on the full (restricted) Dedekind zeta series at sigma > 1.
inline double zeta_upper(const Field& field, double sigma) {
    const double z = sigma / (sigma - 1.0);
    return field.is_rational() ? z : z * z;
}

inline void require_compatible(const CoefficientSystem& f, const CoefficientSystem& g, std::int64_t M) {
    if (f.field() != g.field()) throw InvalidInput("Rankin-Selberg: systems over different fields");
    if (M < 1) throw InvalidInput("Rankin-Selberg: truncation must be at least 1");
    if (M > f.bound() || M > g.bound()) {
        throw BoundError("Rankin-Selberg: truncation " + std::to_string(M) + " exceeds a system bound (" +
                         std::to_string(f.bound()) + ", " + std::to_string(g.bound()) + ")");
    }
}

// S(k) = sum_{N(m) = k, (m, n) = 1} C(m, f) C(m, g) for k <= M, exactly.
inline std::vector<Rational> norm_sums(const CoefficientSystem& f, const CoefficientSystem& g,
                                       const Ideal& n_restrict, std::int64_t M) {
    std::vector<Rational> out(static_cast<std::size_t>(M) + 1);
    for (const auto& m : ideals_up_to(f.field(), M)) {
        if (!coprime(m, n_restrict)) continue;
        out[static_cast<std::size_t>(m.norm())] += f.coeff(m) * g.coeff(m);
    }
    return out;
}

}  // namespace detail

/// R(s) = sum_{N(m) <= M, (m, n) = 1} C(m, f) C(m, g) N(m)^{-s}.
inline TruncatedValue rs_raw(const CoefficientSystem& f, const CoefficientSystem& g, const Ideal& n_restrict,
                             double s, std::int64_t M) {
    detail::require_compatible(f, g, M);
    const auto sums = detail::norm_sums(f, g, n_restrict, M);
    double value = 0.0;
    for (std::int64_t k = M; k >= 1; --k) {
        const auto& c = sums[static_cast<std::size_t>(k)];
        if (c != 0) value += c.convert_to<double>() * std::pow(static_cast<double>(k), -s);
    }
    const auto growth = GrowthBound::deligne(f.field(), f.weight().k0 + g.weight().k0);
    return {value, detail::series_tail(f.field(), growth, s, M)};
}

/// Coefficients b_m of L(s) = zeta_F^c(2s - (k0+l0) + 2) R(s) = sum b_m m^{-s}:
///   b_m = sum_{n^2 | m} a_n(c) n^{k0+l0-2} sum_{N(m') = m/n^2, (m', n) = 1} C(m', f) C(m', g).
struct RankinSeries {
    Field field;
    std::vector<Rational> b;  // b[m] for 1 <= m <= truncation; b[0] unused
    Ideal c_level;
    Ideal n_restrict;
    int k0_plus_l0 = 0;
    std::int64_t truncation = 0;
    std::vector<Rational> raw;  // S(k) of the underlying R, for the tail bounds
    GrowthBound growth;
    std::vector<std::string> warnings;

    double coefficient(std::int64_t m) const { return b.at(static_cast<std::size_t>(m)).convert_to<double>(); }

    /// sum_{m <= M} b_m m^{-s} for M <= truncation, with its tail bound.
    TruncatedValue value(double s, std::int64_t M) const {
        if (M < 1 || M > truncation) throw BoundError("RankinSeries::value: M outside 1..truncation");
        double sum = 0.0;
        for (std::int64_t m = M; m >= 1; --m) {
            const auto& c = b[static_cast<std::size_t>(m)];
            if (c != 0) sum += c.convert_to<double>() * std::pow(static_cast<double>(m), -s);
        }
        return {sum, tail_bound(s, M)};
    }

    TruncatedValue value(double s) const { return value(s, truncation); }

    /// Bound on sum_{m > M} |b_m| m^{-s}: a pair (n, m') with n^2 N(m') > M has
    /// n > M^{1/4} or N(m') > M^{1/2}.
    double tail_bound(double s, std::int64_t M) const {
        const double sigma_z = 2.0 * s - k0_plus_l0 + 2.0;
        if (!(sigma_z > 1.0)) return std::numeric_limits<double>::infinity();
        const auto root2 = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(M))));
        const auto root4 = static_cast<std::int64_t>(std::floor(std::sqrt(std::sqrt(static_cast<double>(M)))));
        const double r_abs = raw_abs(s, M) + detail::series_tail(field, growth, s, M);
        return detail::zeta_upper(field, sigma_z) * detail::series_tail(field, growth, s, std::max<std::int64_t>(root2, 1)) +
               zeta_tail_bound(field, sigma_z, std::max<std::int64_t>(root4, 1)) * r_abs;
    }

    /// sum_{k <= M} |S(k)| k^{-s}.
    double raw_abs(double s, std::int64_t M) const {
        double sum = 0.0;
        for (std::int64_t k = M; k >= 1; --k) {
            const auto& c = raw[static_cast<std::size_t>(k)];
            if (c != 0) sum += std::abs(c.convert_to<double>()) * std::pow(static_cast<double>(k), -s);
        }
        return sum;
    }
};

inline RankinSeries rs_coefficients(const CoefficientSystem& f, const CoefficientSystem& g, const Ideal& c,
                                    const Ideal& n_restrict, std::int64_t M) {
    detail::require_compatible(f, g, M);
    if (c.disc() != f.field().disc || n_restrict.disc() != f.field().disc) {
        throw InvalidInput("rs_coefficients: ideal over another field");
    }
    RankinSeries out;
    out.field = f.field();
    out.c_level = c;
    out.n_restrict = n_restrict;
    out.k0_plus_l0 = f.weight().k0 + g.weight().k0;
    out.truncation = M;
    out.growth = GrowthBound::deligne(f.field(), out.k0_plus_l0);
    if (f.weight() == g.weight()) out.warnings.push_back("weights of f and g coincide");
    out.raw = detail::norm_sums(f, g, n_restrict, M);

    ZetaCoefficients zeta(f.field(), c);
    const auto root = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(M))));
    zeta.ensure(std::max<std::int64_t>(root, 1));
    std::vector<Rational> weight_n(static_cast<std::size_t>(root) + 1);
    for (std::int64_t n = 1; n <= root; ++n) {
        weight_n[static_cast<std::size_t>(n)] =
            Rational(zeta.at(n) * big_pow(n, static_cast<unsigned>(out.k0_plus_l0 - 2)));
    }
    out.b.assign(static_cast<std::size_t>(M) + 1, Rational(0));
    for (std::int64_t n = 1; n * n <= M; ++n) {
        const auto& w = weight_n[static_cast<std::size_t>(n)];
        if (w == 0) continue;
        for (std::int64_t k = 1; k * n * n <= M; ++k) {
            const auto& sk = out.raw[static_cast<std::size_t>(k)];
            if (sk != 0) out.b[static_cast<std::size_t>(k * n * n)] += w * sk;
        }
    }
    return out;
}

struct ConvolutionCheck {
    double series_path = 0.0;   // sum b_m m^{-s}
    double product_path = 0.0;  // zeta^c partial * R partial
    double residual = 0.0;
    double bound = 0.0;  // tails of both paths plus rounding
    bool within() const { return residual <= bound; }
};

/// Compares the two assemblies of L(s), both truncated at M (default: the
/// series truncation).
inline ConvolutionCheck rs_convolution_check(const RankinSeries& series, const CoefficientSystem& f,
                                             const CoefficientSystem& g, double s, std::int64_t M = 0) {
    const double sigma_z = 2.0 * s - series.k0_plus_l0 + 2.0;
    if (!(sigma_z > 1.0)) {
        throw InvalidInput("rs_convolution_check: need s > (k0 + l0)/2 - 1/2 for the zeta factor to converge");
    }
    if (M == 0) M = series.truncation;
    const auto lhs = series.value(s, M);
    const auto r = rs_raw(f, g, series.n_restrict, s, M);
    const auto z = zeta_partial_coprime(series.field, sigma_z, M, series.c_level);

    ConvolutionCheck out;
    out.series_path = lhs.value;
    out.product_path = z.value * r.value;
    out.residual = std::abs(out.series_path - out.product_path);

    double abs_series = 0.0;
    for (std::int64_t m = 1; m <= M; ++m) {
        const auto& c = series.b[static_cast<std::size_t>(m)];
        if (c != 0) abs_series += std::abs(c.convert_to<double>()) * std::pow(static_cast<double>(m), -s);
    }
    const double r_abs = series.raw_abs(s, M);
    const double tail_product =
        detail::zeta_upper(series.field, sigma_z) * r.truncation_bound + z.truncation_bound * (r_abs + r.truncation_bound);
    const double rounding = 64.0 * DBL_EPSILON * (abs_series + z.value * r_abs);
    out.bound = lhs.truncation_bound + tail_product + rounding;
    return out;
}

/// Gamma-completed value prod_j Gamma(s + 1 + (k_j - l_j - k0 - l0)/2) Gamma(s - (k'_j + l'_j)/2) L(s),
/// or the first Gamma factor whose argument is a non-positive integer.
struct LambdaResult {
    bool pole = false;
    int pole_factor = 0;  // 1-based j
    int pole_gamma = 0;   // 1 or 2 within factor j
    double pole_argument = 0.0;
    double log_abs_gamma = 0.0;
    int gamma_sign = 1;
    TruncatedValue L;
    double value = 0.0;
};

namespace detail {

inline bool nonpositive_integer(double x) {
    const double r = std::round(x);
    return r <= 0.0 && std::abs(x - r) < 1e-12;
}

}  // namespace detail

inline LambdaResult completed_lambda(const WeightData& wf, const WeightData& wg, const RankinSeries& series,
                                     double s) {
    if (wf.weights.size() != wg.weights.size()) throw InvalidInput("completed_lambda: weight vectors differ in length");
    LambdaResult out;
    const int k0 = wf.k0;
    const int l0 = wg.k0;
    for (std::size_t j = 0; j < wf.weights.size(); ++j) {
        const double args[2] = {s + 1.0 + (wf.weights[j] - wg.weights[j] - k0 - l0) / 2.0,
                                s - (wf.kprime[j] + wg.kprime[j]) / 2.0};
        for (int which = 0; which < 2; ++which) {
            if (detail::nonpositive_integer(args[which])) {
                out.pole = true;
                out.pole_factor = static_cast<int>(j) + 1;
                out.pole_gamma = which + 1;
                out.pole_argument = args[which];
                return out;
            }
            int sign = 1;
            out.log_abs_gamma += lgamma_r(args[which], &sign);
            out.gamma_sign *= sign;
        }
    }
    out.L = series.value(s);
    if (out.L.value == 0.0) {
        out.value = 0.0;
    } else {
        const int sign = out.gamma_sign * (out.L.value < 0 ? -1 : 1);
        out.value = sign * std::exp(out.log_abs_gamma + std::log(std::abs(out.L.value)));
    }
    return out;
}

}  // namespace hml
