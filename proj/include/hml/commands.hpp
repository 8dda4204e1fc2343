#pragma once

// The hml subcommands as plain functions writing to a stream, so that the
// executable in tools/ is a thin argument parser and tests can drive them
// directly. Output is deterministic for fixed inputs.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hml/arith.hpp"
#include "hml/dirichlet.hpp"
#include "hml/error.hpp"
#include "hml/fixture.hpp"
#include "hml/forms.hpp"
#include "hml/oracle.hpp"
#include "hml/quadfield.hpp"
#include "hml/satotate.hpp"
#include "hml/zeta.hpp"

namespace hml {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUsage = 2, kExitHypothesis = 3, kExitValidation = 4 };

struct OutputOptions {
    char sep = ',';
    bool allow_unchecked = false;
};

inline char separator_for(const std::string& format) {
    if (format == "csv") return ',';
    if (format == "tsv") return '\t';
    throw InvalidInput("unknown output format '" + format + "' (expected csv or tsv)");
}

// ---------------------------------------------------------------- zeta

inline void run_zeta(std::int64_t disc, std::int64_t max_norm, const std::optional<std::string>& coprime_to,
                     std::ostream& out, const OutputOptions& opt = {}) {
    if (max_norm < 1) throw InvalidInput("--max-norm must be at least 1");
    const Field field = field_from_disc(disc);
    std::optional<Ideal> c;
    if (coprime_to) c = parse_ideal(field, *coprime_to);
    CsvWriter w(out, opt.sep);
    std::vector<std::string> header{"n", "a_n"};
    if (c) header.push_back("a_n_coprime");
    w.row(header);
    const FactorSieve sieve(max_norm);
    for (std::int64_t n = 1; n <= max_norm; ++n) {
        const auto fac = sieve.factorize(n);
        std::vector<std::string> row{std::to_string(n), std::to_string(detail::zeta_count_from_factorization(field, fac, nullptr))};
        if (c) row.push_back(std::to_string(detail::zeta_count_from_factorization(field, fac, &*c)));
        w.row(row);
    }
}

// ---------------------------------------------------------------- signs

struct SignsSummary {
    std::int64_t positive = 0;
    std::int64_t negative = 0;
    std::int64_t zero = 0;
    std::int64_t skipped = 0;  // ideals sharing a factor with a level
    std::string first_positive;
    std::string first_negative;
    std::vector<std::string> warnings;
};

namespace detail {

inline void require_same_field(const EigenPrimeTable& f, const EigenPrimeTable& g) {
    if (!(f.field == g.field)) throw InvalidInput("fixtures are over different fields");
}

}  // namespace detail

/// Signs of C(m, f) C(m, g) for every ideal m with N(m) <= max_norm coprime
/// to both levels.
inline SignsSummary run_signs(const Fixture& ff, const Fixture& gf, std::int64_t max_norm, std::ostream& out,
                              const OutputOptions& opt = {}) {
    if (max_norm < 1) throw InvalidInput("--max-norm must be at least 1");
    const auto tf = ff.to_table(opt.allow_unchecked);
    const auto tg = gf.to_table(opt.allow_unchecked);
    detail::require_same_field(tf, tg);
    if (tf.weight == tg.weight) {
        throw HypothesisViolation("f and g have the same weight " + tf.weight.label() +
                                  "; sign changes are only guaranteed for distinct weights");
    }
    SignsSummary sum;
    if (!(tf.level == tg.level)) {
        sum.warnings.push_back("levels differ (" + tf.level.label() + " vs " + tg.level.label() +
                               "); ideals meeting either level are skipped");
    }
    const auto f = build_eigen_system(tf, max_norm);
    const auto g = build_eigen_system(tg, max_norm);

    CsvWriter w(out, opt.sep);
    w.row({"norm", "ideal", "c_f", "c_g", "product", "sign"});
    for (const auto& m : ideals_up_to(tf.field, max_norm)) {
        if (!f.covers(m) || !g.covers(m)) {
            ++sum.skipped;
            continue;
        }
        const Rational p = f.coeff(m) * g.coeff(m);
        const int s = p > 0 ? 1 : (p < 0 ? -1 : 0);
        if (s > 0) {
            if (sum.positive++ == 0) sum.first_positive = m.label();
        } else if (s < 0) {
            if (sum.negative++ == 0) sum.first_negative = m.label();
        } else {
            ++sum.zero;
        }
        w.row({std::to_string(m.norm()), m.label(), format_rational(f.coeff(m)), format_rational(g.coeff(m)),
               format_rational(p), std::to_string(s)});
    }
    for (const auto& warn : sum.warnings) w.comment("warning: " + warn);
    w.comment("positive=" + std::to_string(sum.positive) + " negative=" + std::to_string(sum.negative) +
              " zero=" + std::to_string(sum.zero) + " skipped=" + std::to_string(sum.skipped));
    w.comment("first_positive=" + (sum.first_positive.empty() ? std::string("none") : sum.first_positive) +
              " first_negative=" + (sum.first_negative.empty() ? std::string("none") : sum.first_negative));
    return sum;
}

// ---------------------------------------------------------------- density

struct DensityResult {
    PrimeIdeal prime;
    AngleClass angle_f;
    AngleClass angle_g;
    DensityReport report;
    std::vector<std::string> warnings;
};

namespace detail {

inline AngleClass exact_angle(const EigenPrimeTable& t, const PrimeIdeal& p) {
    auto it = t.entries.find(p);
    if (it == t.entries.end()) {
        throw IncompleteTable("fixture '" + t.label + "' has no eigenvalue at " + p.label());
    }
    const Rational& c = it->second;
    const Rational beta_sq = c * c / Rational(big_pow(p.norm, static_cast<unsigned>(t.weight.k0 - 1)));
    return classify_angle_from_square(beta_sq, c > 0 ? 1 : (c < 0 ? -1 : 0));
}

inline PrimeIdeal parse_prime(const Field& field, const std::string& spec) {
    const Ideal p = parse_ideal(field, spec);
    if (p.factors().size() != 1 || p.factors().front().exponent != 1) {
        throw InvalidInput("'" + spec + "' is not a prime ideal");
    }
    return p.factors().front().prime;
}

}  // namespace detail

/// Counts 1 <= m <= x with C(p^m, f) C(p^m, g) != 0 and compares with the
/// density formula for the case the pair of angles falls under.
inline DensityResult run_density(const Fixture& ff, const Fixture& gf, const std::string& prime, std::int64_t x,
                                 std::ostream& out, const OutputOptions& opt = {}) {
    if (x < 1) throw InvalidInput("--x must be at least 1");
    const auto tf = ff.to_table(opt.allow_unchecked);
    const auto tg = gf.to_table(opt.allow_unchecked);
    detail::require_same_field(tf, tg);
    DensityResult res;
    res.prime = detail::parse_prime(tf.field, prime);
    if (tf.level.valuation(res.prime) != 0 || tg.level.valuation(res.prime) != 0) {
        throw HypothesisViolation("prime " + res.prime.label() + " divides a level");
    }
    if (divides_different(tf.field, res.prime)) {
        throw HypothesisViolation("prime " + res.prime.label() + " is ramified in the field");
    }
    for (const auto* t : {&tf, &tg}) {
        for (int k : t->weight.weights) {
            if (k < 2 || k % 2 != 0) {
                res.warnings.push_back("fixture '" + t->label + "' has weight " + t->weight.label() +
                                       " outside even weights >= 2");
                break;
            }
        }
    }
    res.angle_f = detail::exact_angle(tf, res.prime);
    res.angle_g = detail::exact_angle(tg, res.prime);
    res.report = simultaneous_density(res.angle_f, res.angle_g, x);

    CsvWriter w(out, opt.sep);
    w.row({"prime", "x", "case", "angle_f", "angle_g", "nonzero_count", "formula_lo", "formula_hi",
           "lower_density", "limit_density", "consistent"});
    const auto& r = res.report;
    w.row({res.prime.label(), std::to_string(x), std::to_string(r.case_id), res.angle_f.label(), res.angle_g.label(),
           std::to_string(r.nonzero_count), std::to_string(r.formula_lo), std::to_string(r.formula_hi),
           format_rational(r.lower_bound_density), format_rational(r.limit_density), r.consistent() ? "1" : "0"});
    for (const auto& warn : res.warnings) w.comment("warning: " + warn);
    return res;
}

// ---------------------------------------------------------------- kill

/// Coefficients of f and of g = f - (f|U(q))|q on ideals of norm <= max_norm;
/// g vanishes on the multiples of q.
inline CoefficientSystem run_kill(const Fixture& ff, const std::string& q_spec, std::int64_t max_norm,
                                  std::ostream& out, const OutputOptions& opt = {}) {
    if (max_norm < 1) throw InvalidInput("--max-norm must be at least 1");
    const auto t = ff.to_table(opt.allow_unchecked);
    const Ideal q = parse_ideal(t.field, q_spec);
    const std::int64_t nq = q.norm();
    const std::int64_t bound = checked_mul((max_norm + nq - 1) / nq, nq);
    const auto f = build_eigen_system(t, bound);
    const auto g = kill_multiples(f, q);

    CsvWriter w(out, opt.sep);
    w.row({"norm", "ideal", "c_f", "c_g", "multiple_of_q"});
    for (const auto& m : ideals_up_to(t.field, max_norm)) {
        const bool mult = divides(q, m);
        const std::string cf = f.covers(m) ? format_rational(f.coeff(m)) : "NA";
        const std::string cg = g.covers(m) ? format_rational(g.coeff(m)) : "NA";
        w.row({std::to_string(m.norm()), m.label(), cf, cg, mult ? "1" : "0"});
    }
    w.comment("q=" + q.label() + " level_g=" + g.level().label());
    return g;
}

// ---------------------------------------------------------------- rankin

struct RankinOptions {
    double s = 0.0;
    std::int64_t terms = 1000;
    bool completed = false;
    std::optional<std::string> restrict_to;
};

/// R(s), both assemblies of L(s) and, optionally, the Gamma-completed value.
inline void run_rankin(const Fixture& ff, const Fixture& gf, const RankinOptions& ro, std::ostream& out,
                       const OutputOptions& opt = {}) {
    if (ro.terms < 1) throw InvalidInput("--terms must be at least 1");
    const auto tf = ff.to_table(opt.allow_unchecked);
    const auto tg = gf.to_table(opt.allow_unchecked);
    detail::require_same_field(tf, tg);
    if (ro.completed && tf.weight == tg.weight) {
        throw HypothesisViolation("the completed value needs distinct weights, both are " + tf.weight.label());
    }
    const Ideal n = ro.restrict_to ? parse_ideal(tf.field, *ro.restrict_to) : Ideal::unit(tf.field);
    const Ideal c = lcm(tf.level, tg.level);
    const auto f = build_eigen_system(tf, ro.terms);
    const auto g = build_eigen_system(tg, ro.terms);
    const auto series = rs_coefficients(f, g, c, n, ro.terms);
    const auto r = rs_raw(f, g, n, ro.s, ro.terms);
    const auto l = series.value(ro.s);

    std::vector<std::string> header{"s", "terms", "R", "R_bound", "L_series", "L_series_bound"};
    std::vector<std::string> row{format_double(ro.s), std::to_string(ro.terms), format_double(r.value),
                                 format_double(r.truncation_bound), format_double(l.value),
                                 format_double(l.truncation_bound)};
    const double sigma_z = 2.0 * ro.s - series.k0_plus_l0 + 2.0;
    header.insert(header.end(), {"L_product", "residual", "residual_bound"});
    if (sigma_z > 1.0) {
        const auto chk = rs_convolution_check(series, f, g, ro.s);
        row.insert(row.end(), {format_double(chk.product_path), format_double(chk.residual), format_double(chk.bound)});
    } else {
        row.insert(row.end(), {"NA", "NA", "NA"});
    }
    if (ro.completed) {
        header.insert(header.end(), {"lambda", "pole"});
        const auto lam = completed_lambda(tf.weight, tg.weight, series, ro.s);
        if (lam.pole) {
            row.insert(row.end(), {"NA", "factor " + std::to_string(lam.pole_factor) + " gamma " +
                                             std::to_string(lam.pole_gamma) + " at " +
                                             format_double(lam.pole_argument)});
        } else {
            row.insert(row.end(), {format_double(lam.value), "none"});
        }
    }
    CsvWriter w(out, opt.sep);
    w.row(header);
    w.row(row);
    for (const auto& warn : series.warnings) w.comment("warning: " + warn);
}

// ---------------------------------------------------------------- oracle

struct OracleOptions {
    std::string form = "delta";
    std::int64_t primes = 100;
    std::uint64_t seed = 0;
    std::int64_t disc = 1;
    std::vector<int> weights{12};
    std::string level = "1";
};

inline Fixture make_oracle_fixture(const OracleOptions& o) {
    if (o.primes < 2) throw InvalidInput("--primes must be at least 2");
    if (o.form == "delta") return Fixture::from_table(export_fixture(delta_series(o.primes), 12, o.primes, "delta"));
    if (o.form == "e4delta") {
        return Fixture::from_table(export_fixture(weight16_series(o.primes), 16, o.primes, "e4delta"));
    }
    if (o.form == "synthetic") {
        const Field field = field_from_disc(o.disc);
        const auto weight = WeightData::from(o.weights);
        if (static_cast<int>(weight.weights.size()) != field.degree) {
            throw InvalidInput("--weights needs " + std::to_string(field.degree) + " entries for this field");
        }
        return Fixture::from_table(synthetic_table(field, weight, parse_ideal(field, o.level), o.primes, o.seed,
                                                   "synthetic-" + std::to_string(o.seed)));
    }
    throw InvalidInput("unknown --form '" + o.form + "' (expected delta, e4delta or synthetic)");
}

inline void run_oracle(const OracleOptions& o, std::ostream& out) { write_fixture(out, make_oracle_fixture(o)); }

// ---------------------------------------------------------------- validate

/// One row per prime; returns the report so callers can pick the exit code.
inline RamanujanReport run_validate(const Fixture& fx, std::ostream& out, const OutputOptions& opt = {}) {
    const auto table = fx.to_table(true);
    const auto report = validate_ramanujan(table);
    CsvWriter w(out, opt.sep);
    w.row({"prime", "norm", "eigenvalue", "beta", "bound", "pass"});
    for (const auto& c : report.checks) {
        w.row({c.prime.label(), std::to_string(c.prime.norm), format_rational(c.value), format_double(c.beta),
               format_double(c.bound), c.pass ? "1" : "0"});
    }
    if (report.vacuous) w.comment("warning: empty eigenvalue table");
    std::string failed;
    for (const auto& p : report.failures()) failed += (failed.empty() ? "" : " ") + p.label();
    w.comment(report.pass ? std::string("result=pass") : "result=fail primes=" + failed);
    return report;
}

}  // namespace hml
