#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hml/hml.hpp"

using namespace hml;

namespace {

Fixture oracle_fixture(const std::string& form, std::int64_t primes) {
    OracleOptions o;
    o.form = form;
    o.primes = primes;
    return make_oracle_fixture(o);
}

Fixture round_trip(const Fixture& fx) {
    std::stringstream ss;
    write_fixture(ss, fx);
    return read_fixture(ss);
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("hml_test_" + name)).string();
}

int run_cli(const std::string& args, std::string* out = nullptr) {
    const std::string out_path = temp_path("stdout.txt");
    const std::string cmd = std::string(HML_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(out_path);
        *out = std::string(std::istreambuf_iterator<char>(in), {});
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("ideal specs") {
    const Field f = make_field(5);
    CHECK(parse_ideal(f, "1").is_unit());
    CHECK(parse_ideal(f, "2").norm() == 4);
    CHECK(parse_ideal(f, "11.1").norm() == 11);
    CHECK(parse_ideal(f, "11.0*11.1^2").norm() == 1331);
    CHECK(parse_ideal(f, "5^3").norm() == 125);
    CHECK_THROWS_AS(parse_ideal(f, "11"), ParseError);
    CHECK_THROWS_AS(parse_ideal(f, "6"), ParseError);
    CHECK_THROWS_AS(parse_ideal(f, "2.1"), InvalidInput);
    CHECK_THROWS_AS(parse_ideal(f, "x"), ParseError);
    const auto i = parse_ideal(f, "2^2*11.0");
    CHECK(parse_ideal(f, i.label()) == i);
}

TEST_CASE("rationals") {
    CHECK(parse_rational("-24") == -24);
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(format_rational(Rational(-3, 6)) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-0.5303300858899106) == "-0.53033008589");
}

TEST_CASE("fixture round trip reconstructs the oracle series") {
    const auto fx = round_trip(oracle_fixture("delta", 300));
    CHECK(fx.label == "delta");
    CHECK(fx.weights == std::vector<int>{12});
    const auto sys = build_eigen_system(fx.to_table(), 300);
    const auto d = delta_series(300);
    for (const auto& [m, c] : sys.sorted_entries()) CHECK(c == Rational(d[m.norm()]));
}

TEST_CASE("synthetic fixture over a quadratic field round-trips") {
    OracleOptions o;
    o.form = "synthetic";
    o.disc = 13;
    o.weights = {2, 4};
    o.level = "3.0";
    o.primes = 150;
    o.seed = 42;
    const auto fx = make_oracle_fixture(o);
    const auto back = round_trip(fx);
    CHECK(back.level == fx.level);
    CHECK(back.to_table().entries == fx.to_table().entries);
}

TEST_CASE("fixture errors") {
    std::stringstream missing("# format: hml-fixture/1\n# field_disc: 1\n");
    CHECK_THROWS_AS(read_fixture(missing), ParseError);
    std::stringstream version("# format: hml-fixture/9\n# field_disc: 1\n# weights: 12\n");
    CHECK_THROWS_AS(read_fixture(version), ParseError);
    std::stringstream bad_norm("# format: hml-fixture/1\n# field_disc: 5\n# weights: 2,2\n2\t0\t2\t1\n");
    CHECK_THROWS_AS(read_fixture(bad_norm).to_table(), ParseError);
    std::stringstream too_big("# format: hml-fixture/1\n# field_disc: 1\n# weights: 12\n2\t0\t2\t1000\n");
    CHECK_THROWS_AS(read_fixture(too_big).to_table(), RamanujanViolation);
    std::stringstream again("# format: hml-fixture/1\n# field_disc: 1\n# weights: 12\n2\t0\t2\t1000\n");
    CHECK_NOTHROW(read_fixture(again).to_table(true));
}

TEST_CASE("zeta report") {
    std::ostringstream os;
    run_zeta(5, 10, std::nullopt, os);
    CHECK(os.str() == "n,a_n\n1,1\n2,0\n3,0\n4,1\n5,1\n6,0\n7,0\n8,0\n9,1\n10,0\n");
    std::ostringstream tsv;
    run_zeta(5, 4, std::string("2"), tsv, OutputOptions{'\t'});
    CHECK(tsv.str() == "n\ta_n\ta_n_coprime\n1\t1\t1\n2\t0\t0\n3\t0\t0\n4\t1\t0\n");
}

TEST_CASE("signs report") {
    std::ostringstream os;
    const auto s = run_signs(oracle_fixture("delta", 1000), oracle_fixture("e4delta", 1000), 1000, os);
    CHECK(s.positive >= 100);
    CHECK(s.negative >= 100);
    CHECK(s.positive + s.negative + s.zero == 1000);
    CHECK(s.first_negative == "2");
    std::ostringstream again;
    run_signs(oracle_fixture("delta", 1000), oracle_fixture("e4delta", 1000), 1000, again);
    CHECK(os.str() == again.str());
    std::ostringstream sink;
    CHECK_THROWS_AS(run_signs(oracle_fixture("delta", 50), oracle_fixture("delta", 50), 50, sink),
                    HypothesisViolation);
}

TEST_CASE("density report") {
    std::ostringstream os;
    const auto r = run_density(oracle_fixture("delta", 20), oracle_fixture("e4delta", 20), "2", 1000, os);
    CHECK(r.report.case_id == 4);
    CHECK(r.report.nonzero_count == 1000);
    CHECK(r.report.consistent());
    std::ostringstream sink;
    CHECK_THROWS_AS(run_density(oracle_fixture("delta", 20), oracle_fixture("e4delta", 20), "2^2", 10, sink),
                    InvalidInput);
}

TEST_CASE("kill report") {
    std::ostringstream os;
    const auto g = run_kill(oracle_fixture("delta", 20), "2", 20, os);
    std::istringstream lines(os.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "norm,ideal,c_f,c_g,multiple_of_q");
    while (std::getline(lines, line)) {
        if (line[0] == '#') continue;
        const auto f = detail::split(line, ',');
        if (f[4] == "1") CHECK(f[3] == "0");
        else CHECK(f[3] == f[2]);
    }
    std::ostringstream unit;
    run_kill(oracle_fixture("delta", 20), "1", 10, unit);
    CHECK(unit.str().find("\n2,2,-24,0,1\n") != std::string::npos);
}

TEST_CASE("rankin report") {
    std::ostringstream one;
    run_rankin(oracle_fixture("delta", 10), oracle_fixture("e4delta", 10), RankinOptions{20.0, 1, false, {}}, one);
    CHECK(one.str().find("\n20,1,1,") != std::string::npos);
    std::ostringstream pole;
    run_rankin(oracle_fixture("delta", 100), oracle_fixture("e4delta", 100), RankinOptions{15.0, 100, true, {}},
               pole);
    CHECK(pole.str().find("factor 1 gamma 1") != std::string::npos);
}

TEST_CASE("validate report names the offending prime") {
    auto fx = oracle_fixture("delta", 50);
    std::ostringstream ok;
    CHECK(run_validate(fx, ok).pass);
    fx.rows[3].eigenvalue = Rational(100000);
    std::ostringstream bad;
    const auto r = run_validate(fx, bad);
    CHECK_FALSE(r.pass);
    CHECK(bad.str().find("result=fail primes=7") != std::string::npos);
}

TEST_CASE("executable exit codes and byte-identical output") {
    const auto d = temp_path("delta.fx");
    const auto e = temp_path("e4delta.fx");
    REQUIRE(run_cli("oracle --form delta --primes 100 --out " + d) == 0);
    REQUIRE(run_cli("oracle --form e4delta --primes 100 --out " + e) == 0);
    std::string first, second;
    CHECK(run_cli("signs " + d + " " + e + " --max-norm 100", &first) == 0);
    CHECK(run_cli("signs " + d + " " + e + " --max-norm 100", &second) == 0);
    CHECK(first == second);
    CHECK(run_cli("validate " + d) == 0);
    CHECK(run_cli("signs " + d + " " + d) == kExitHypothesis);
    CHECK(run_cli("bogus") == kExitUsage);
    CHECK(run_cli("validate /nonexistent/file") == kExitError);

    std::string text;
    {
        std::ifstream in(d);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    const auto pos = text.find("\n7\t0\t7\t");
    REQUIRE(pos != std::string::npos);
    const auto end = text.find('\n', pos + 1);
    text.replace(pos, end - pos, "\n7\t0\t7\t100000");
    const auto bad = temp_path("bad.fx");
    std::ofstream(bad) << text;
    std::string report;
    CHECK(run_cli("validate " + bad, &report) == kExitValidation);
    CHECK(report.find("primes=7") != std::string::npos);
    CHECK(run_cli("signs " + bad + " " + e) == kExitValidation);
    CHECK(run_cli("signs " + bad + " " + e + " --allow-unchecked") == 0);
}
