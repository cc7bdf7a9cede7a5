#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kummer/cli.hpp"

using namespace kummer;

namespace {
std::string data_dir() { return KUMMER_DATA_DIR; }

int run_cli(const std::vector<std::string>& args, std::string& out_text) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    out_text = out.str() + err.str();
    return code;
}

std::string shell(const std::string& cmd, int& code) {
    std::string full = cmd + " 2>&1";
    FILE* p = popen(full.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
    code = WEXITSTATUS(pclose(p));
    return out;
}
} // namespace

TEST_CASE("run-example: every catalog entry passes and reports match expectations") {
    auto catalog = load_catalog(data_dir() + "/catalog.json");
    REQUIRE(catalog.size() == 7);
    for (const auto& e : catalog) {
        RunReport rep = run_example(e);
        INFO(e.id, ": ", rep.text());
        CHECK(rep.overall());
    }
}

TEST_CASE("run-example CLI: json report, exit codes, reproducibility") {
    std::string out1, out2;
    int c1 = run_cli({"run-example", "reidegeld-dic3", "--catalog", data_dir() + "/catalog.json"},
                     out1);
    CHECK(c1 == cli::ExitPass);
    json j1 = json::parse(out1);
    CHECK(j1.at("overall") == "pass");
    CHECK(j1.at("schema_version") == "1");

    int c2 = run_cli({"run-example", "reidegeld-dic3", "--catalog", data_dir() + "/catalog.json"},
                     out2);
    CHECK(c2 == cli::ExitPass);
    json j2 = json::parse(out2);
    j1.erase("timings");
    j2.erase("timings");
    CHECK(j1.dump() == j2.dump()); // identical modulo the timings field

    std::string dummy;
    CHECK(run_cli({"run-example", "no-such-id", "--catalog", data_dir() + "/catalog.json"},
                  dummy) == cli::ExitConfigError);
    CHECK(run_cli({"bogus-subcommand"}, dummy) == cli::ExitConfigError);
}

TEST_CASE("run-example text format prints one line per check") {
    std::string out;
    int code = run_cli({"run-example", "joyce-c2-generic", "--catalog",
                        data_dir() + "/catalog.json", "--format", "text"},
                       out);
    CHECK(code == cli::ExitPass);
    CHECK(out.find("[pass] sphere-count") != std::string::npos);
    CHECK(out.find("overall: pass") != std::string::npos);
}

TEST_CASE("enumerate: stream contents and determinism") {
    std::string out1, out2;
    CHECK(run_cli({"enumerate", "--row", "R1", "--height", "1"}, out1) == cli::ExitPass);
    CHECK(out1.find("\"row\":\"R1\"") != std::string::npos);
    // the member [-i, i] appears
    bool found = false;
    std::istringstream lines(out1);
    std::string line;
    while (std::getline(lines, line)) {
        json j = json::parse(line);
        if (j.at("embedded_spheres") == 1) found = true;
        CHECK(j.contains("canonical_form"));
    }
    CHECK(found);

    // empty stream at height 0, still exit 0
    std::string empty;
    CHECK(run_cli({"enumerate", "--row", "R1", "--height", "0"}, empty) == cli::ExitPass);
    CHECK(empty.empty());

    // rerun is byte-identical
    CHECK(run_cli({"enumerate", "--row", "R1", "--height", "1"}, out2) == cli::ExitPass);
    CHECK(out1 == out2);

    std::string dummy;
    CHECK(run_cli({"enumerate", "--row", "R9", "--height", "1"}, dummy) == cli::ExitConfigError);
}

TEST_CASE("certificate command") {
    std::string out;
    int code = run_cli({"certificate", "--beta", "2.5", "--gamma", "1", "--c", "1", "--R", "1",
                        "--cE", "1"},
                       out);
    CHECK(code == cli::ExitPass);
    json j = json::parse(out);
    CHECK(j.at("overall") == "pass");
    double T = 0;
    for (const auto& c : j.at("checks"))
        if (c.at("name") == "positive-T") T = c.at("value").get<double>();
    CHECK(T > 0.05);
    CHECK(T < 0.07);

    // hypothesis violation is a check failure, not a crash
    std::string out2;
    int code2 =
        run_cli({"certificate", "--beta", "1.5", "--gamma", "1", "--c", "1", "--R", "1"}, out2);
    CHECK(code2 == cli::ExitCheckFailure);
}

TEST_CASE("verify-numerics: flat control config") {
    std::string out;
    int code =
        run_cli({"verify-numerics", "--config", data_dir() + "/gh_flat.toml"}, out);
    CHECK(code == cli::ExitPass);
    json j = json::parse(out);
    bool saw_flat = false;
    for (const auto& c : j.at("checks"))
        if (c.at("name") == "ale-decay-flat-model") {
            saw_flat = true;
            CHECK(c.at("pass") == true);
        }
    CHECK(saw_flat);

    std::string dummy;
    CHECK(run_cli({"verify-numerics", "--config", "/nonexistent.toml"}, dummy) ==
          cli::ExitConfigError);
}

TEST_CASE("toml reader round trips the shipped configs") {
    auto t = toml::parse_file(data_dir() + "/gh_verify.toml");
    CHECK(t.numbers("grid.h").size() == 3);
    CHECK(t.number("grid.extent") == 4.0);
    CHECK(t.at("zeta.points").array().size() == 2);
    CHECK(t.number("tolerances.area_rel") == 1e-4);
}

TEST_CASE("toml reader rejects malformed input") {
    CHECK_THROWS_AS(toml::parse_string("key = what\n"), toml::parse_error);
    CHECK_THROWS_AS(toml::parse_string("[unterminated\nkey = 1\n"), toml::parse_error);
    CHECK_THROWS_AS(toml::parse_string("key = [1, 2\n"), toml::parse_error);
}

TEST_CASE("classify command: TOML in, stable-schema JSON out") {
    std::string out;
    int code = run_cli({"classify", "--config", data_dir() + "/coassoc_c2.toml"}, out);
    CHECK(code == cli::ExitPass);
    json j = json::parse(out);
    CHECK(j.at("status") == "k-fold-cover-of-embedded");
    CHECK(j.at("cover_degree") == 2);
    CHECK(j.at("family_dimension") == 1);
    CHECK(j.at("volume_coefficient").get<double>() == doctest::Approx(4.0 * M_PI).epsilon(1e-8));
    CHECK(j.at("conditions").contains("sphere-valid"));
    CHECK(j.at("conditions").contains("xi-orthogonal-lattice"));
    // report invariant: embedded <=> cover_degree 1 and conditions pass
    CHECK((j.at("status") == "embedded") == (j.at("cover_degree") == 1));
}

TEST_CASE("classify command on the Dic3 root datum") {
    std::string out;
    int code = run_cli({"classify", "--config", data_dir() + "/coassoc_dic3.toml"}, out);
    CHECK(code == cli::ExitPass);
    json j = json::parse(out);
    // e1 - e2 is one of the two stabilizer-free sphere choices
    CHECK(j.at("status") == "embedded");
    CHECK(j.at("cover_degree") == 1);
    CHECK(j.at("area_source") == "supplied");
    CHECK(j.at("volume_coefficient").get<double>() ==
          doctest::Approx(2.0 * M_PI).epsilon(1e-12));
}

TEST_CASE("process-level smoke test of the installed binary") {
    int code = 0;
    std::string out = shell(std::string(KUMMER_CLI_PATH) + " certificate --beta 2.5 --gamma 1 "
                                                           "--c 1 --R 1 --format text",
                            code);
    CHECK(code == 0);
    CHECK(out.find("[pass] positive-T") != std::string::npos);

    shell(std::string(KUMMER_CLI_PATH) + " enumerate --row R1 --height 0", code);
    CHECK(code == 0);
}
