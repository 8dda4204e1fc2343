#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hml/commands.hpp"

namespace {

struct Common {
    std::string out = "-";
    std::string format = "csv";
    bool allow_unchecked = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "output path, or - for stdout");
    cmd->add_option("--format", c.format, "csv or tsv")->check(CLI::IsMember({"csv", "tsv"}));
    cmd->add_flag("--allow-unchecked", c.allow_unchecked, "skip the Ramanujan check on fixtures");
}

// Renders into a buffer so a failing command leaves no partial output file.
template <typename Fn>
int emit(const Common& c, Fn&& fn) {
    std::ostringstream buf;
    const int code = fn(buf, hml::OutputOptions{hml::separator_for(c.format), c.allow_unchecked});
    if (c.out == "-") {
        std::cout << buf.str();
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw hml::InvalidInput("cannot write '" + c.out + "'");
        f << buf.str();
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hml: Hilbert modular form coefficient toolkit"};
    app.require_subcommand(1);

    Common common;
    std::int64_t max_norm = 100;
    std::int64_t disc = 1;
    std::optional<std::string> coprime_to;
    std::string fixture_f, fixture_g, prime, q_spec, fixture_path;
    std::int64_t x = 1000;
    hml::RankinOptions rankin;
    hml::OracleOptions oracle;

    auto* zeta = app.add_subcommand("zeta", "ideal counts a_n of the Dedekind zeta function");
    add_common(zeta, common);
    zeta->add_option("--disc", disc, "field discriminant (1 for the rationals)");
    zeta->add_option("--max-norm", max_norm, "largest n");
    zeta->add_option("--coprime-to", coprime_to, "also count ideals coprime to this ideal");

    auto* signs = app.add_subcommand("signs", "signs of C(m,f)C(m,g) by norm");
    add_common(signs, common);
    signs->add_option("f", fixture_f, "fixture for f")->required();
    signs->add_option("g", fixture_g, "fixture for g")->required();
    signs->add_option("--max-norm", max_norm, "largest norm");

    auto* density = app.add_subcommand("density", "joint non-vanishing along powers of a prime");
    add_common(density, common);
    density->add_option("f", fixture_f, "fixture for f")->required();
    density->add_option("g", fixture_g, "fixture for g")->required();
    density->add_option("--prime", prime, "prime ideal spec, p or p.i")->required();
    density->add_option("--x", x, "largest exponent m");

    auto* kill = app.add_subcommand("kill", "remove the coefficients on multiples of q");
    add_common(kill, common);
    kill->add_option("f", fixture_f, "fixture")->required();
    kill->add_option("--q", q_spec, "ideal spec")->required();
    kill->add_option("--max-norm", max_norm, "largest norm");

    auto* rk = app.add_subcommand("rankin", "Rankin-Selberg partial sums");
    add_common(rk, common);
    rk->add_option("f", fixture_f, "fixture for f")->required();
    rk->add_option("g", fixture_g, "fixture for g")->required();
    rk->add_option("--s", rankin.s, "real point s")->required();
    rk->add_option("--terms", rankin.terms, "truncation M");
    rk->add_flag("--completed", rankin.completed, "include the Gamma-completed value");
    rk->add_option("--restrict", rankin.restrict_to, "only ideals coprime to this ideal");

    auto* orc = app.add_subcommand("oracle", "write an eigenvalue fixture");
    add_common(orc, common);
    orc->add_option("--form", oracle.form, "delta, e4delta or synthetic");
    orc->add_option("--primes", oracle.primes, "largest prime norm");
    orc->add_option("--seed", oracle.seed, "seed for synthetic fixtures");
    orc->add_option("--disc", oracle.disc, "field discriminant for synthetic fixtures");
    orc->add_option("--weights", oracle.weights, "weight vector for synthetic fixtures")->delimiter(',');
    orc->add_option("--level", oracle.level, "level ideal for synthetic fixtures");

    auto* val = app.add_subcommand("validate", "check a fixture against the Ramanujan bound");
    add_common(val, common);
    val->add_option("fixture", fixture_path, "fixture")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hml::kExitUsage;
    }

    try {
        if (zeta->parsed()) {
            return emit(common, [&](std::ostream& os, const hml::OutputOptions& o) {
                hml::run_zeta(disc, max_norm, coprime_to, os, o);
                return hml::kExitOk;
            });
        }
        if (signs->parsed()) {
            return emit(common, [&](std::ostream& os, const hml::OutputOptions& o) {
                const auto s = hml::run_signs(hml::read_fixture_file(fixture_f), hml::read_fixture_file(fixture_g),
                                              max_norm, os, o);
                for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
                return hml::kExitOk;
            });
        }
        if (density->parsed()) {
            return emit(common, [&](std::ostream& os, const hml::OutputOptions& o) {
                const auto r = hml::run_density(hml::read_fixture_file(fixture_f), hml::read_fixture_file(fixture_g),
                                                prime, x, os, o);
                for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
                return hml::kExitOk;
            });
        }
        if (kill->parsed()) {
            return emit(common, [&](std::ostream& os, const hml::OutputOptions& o) {
                hml::run_kill(hml::read_fixture_file(fixture_f), q_spec, max_norm, os, o);
                return hml::kExitOk;
            });
        }
        if (rk->parsed()) {
            return emit(common, [&](std::ostream& os, const hml::OutputOptions& o) {
                hml::run_rankin(hml::read_fixture_file(fixture_f), hml::read_fixture_file(fixture_g), rankin, os, o);
                return hml::kExitOk;
            });
        }
        if (orc->parsed()) {
            return emit(common, [&](std::ostream& os, const hml::OutputOptions&) {
                hml::run_oracle(oracle, os);
                return hml::kExitOk;
            });
        }
        if (val->parsed()) {
            return emit(common, [&](std::ostream& os, const hml::OutputOptions& o) {
                const auto report = hml::run_validate(hml::read_fixture_file(fixture_path), os, o);
                if (!report.pass) {
                    for (const auto& p : report.failures()) {
                        std::cerr << "error: Ramanujan bound violated at prime " << p.label() << "\n";
                    }
                    return hml::kExitValidation;
                }
                return hml::kExitOk;
            });
        }
    } catch (const hml::HypothesisViolation& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return hml::kExitHypothesis;
    } catch (const hml::RamanujanViolation& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return hml::kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return hml::kExitError;
    }
    return hml::kExitUsage;
}
