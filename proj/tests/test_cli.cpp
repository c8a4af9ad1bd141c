/*
   Copyright 2026 The ratext authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string prefix =
        env.empty() ? "env -u RATEXT_GRID_POINTS " : ("env " + env + " ");
    const std::string cmd =
        prefix + std::string(RATEXT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

std::vector<double> parse_csv_row(const std::string& row) {
    std::vector<double> vals;
    std::istringstream is(row);
    std::string cell;
    while (std::getline(is, cell, ','))
        vals.push_back(std::strtod(cell.c_str(), nullptr));
    return vals;
}

} // namespace

TEST_CASE("potential tabulation", "[cli]") {
    const CliResult r = run_cli(
        "extend --family ho --omega 2 --n 2 --grid-points 64");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 66);
    CHECK(lines[0] == "# ho omega=2 n=2 extra_level=-6");
    CHECK(lines[1] == "x,V,V_ext");
    for (std::size_t i = 2; i < lines.size(); i += 13) {
        const auto v = parse_csv_row(lines[i]);
        REQUIRE(v.size() == 3);
        const double x = v[0], s = 2.0 * x * x;
        CHECK(v[1] == Catch::Approx(x * x - 1.0).margin(1e-12));
        const double cprs =
            x * x - 3.0 + 8.0 * (s - 1.0) / ((s + 1.0) * (s + 1.0));
        CHECK(v[2] == Catch::Approx(cprs).margin(1e-10));
    }
}

TEST_CASE("output is bit stable", "[cli]") {
    const std::string cmd =
        "extend --family morse --a 5 --b 1 --n 2 --grid-points 96";
    const CliResult a = run_cli(cmd);
    const CliResult b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(lines_of(a.out)[0] ==
          "# morse a=5 b=1 alpha=1 n=2 extra_level=-39");
}

TEST_CASE("atomic file output", "[cli]") {
    namespace fs = std::filesystem;
    const std::string path =
        "/tmp/ratext_cli_test_" + std::to_string(getpid()) + ".csv";
    const CliResult r = run_cli(
        "extend --family ho --omega 1 --n 2 --grid-points 16 --out " + path);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    REQUIRE(fs::exists(path));
    CHECK_FALSE(fs::exists(path + ".tmp"));
    std::ifstream is(path);
    std::string first;
    std::getline(is, first);
    CHECK(first == "# ho omega=1 n=2 extra_level=-3");
    fs::remove(path);
}

TEST_CASE("documented exit codes", "[cli]") {
    CHECK(run_cli("extend --family erkc --a 2 --gamma 2 --n 1").exit_code ==
          2);
    CHECK(run_cli("extend --family erkc --a 1.5 --gamma 2 --n 2")
              .exit_code == 2);
    CHECK(run_cli("extend --family ho --omega 2 --n 1").exit_code == 3);
    CHECK(run_cli("extend --family ho --omega 2 --n 1 --non-conforming "
                  "--grid-points 16")
              .exit_code == 0);
    CHECK(run_cli("eigenstate --family erkc --a 1.6 --gamma 2 --n 1 "
                  "--level=- --grid-points 16")
              .exit_code == 4);
    CHECK(run_cli("extend --family ho --omega 2 --n 2 --bogus").exit_code ==
          2);
    CHECK(run_cli("extend --family ho --n 2").exit_code == 2);
    CHECK(run_cli("extend --family ho --omega -1 --n 2").exit_code == 2);
    CHECK(run_cli("extend --family morse --a 5 --b 1 --n 2 --format tree")
              .exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("verify --matrix bogus").exit_code == 2);
}

TEST_CASE("spectrum tabulation", "[cli]") {
    const CliResult r = run_cli(
        "spectrum --family ho --omega 2 --n 2 --kmax 2 --grid-points 2048");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[1] == "label,analytic_energy,numerov_energy,abs_diff");
    CHECK(lines[2].substr(0, 2) == "-,");
    const double expected[4] = {-6.0, 0.0, 2.0, 4.0};
    for (int i = 0; i < 4; ++i) {
        const auto v = parse_csv_row(lines[2 + i].substr(
            lines[2 + i].find(',') + 1));
        REQUIRE(v.size() == 3);
        CHECK(v[0] == Catch::Approx(expected[i]).margin(1e-12));
        CHECK(std::fabs(v[0] - v[1]) < 1e-4);
        CHECK(v[2] < 1e-4);
    }
}

TEST_CASE("spectrum respects the bound-state budget", "[cli]") {
    const CliResult r = run_cli(
        "spectrum --family morse --a 3.7 --b 1 --n 2 --kmax 9 "
        "--grid-points 2048");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 6); // comment + header + "-" + three levels
    CHECK(lines[2].substr(0, 2) == "-,");
    CHECK(lines[5].substr(0, 2) == "2,");

    const CliResult s = run_cli(
        "spectrum --family erkc --a 1.6 --gamma 2 --n 1 --kmax 1 "
        "--grid-points 2048");
    REQUIRE(s.exit_code == 0);
    const auto slines = lines_of(s.out);
    REQUIRE(slines.size() == 4);
    CHECK(slines[2].substr(0, 2) == "0,"); // strict: no "-" row
}

TEST_CASE("eigenstate tabulation", "[cli]") {
    const CliResult r = run_cli(
        "eigenstate --family morse --a 5 --b 1 --n 2 --level=- "
        "--grid-points 48");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 50);
    CHECK(lines[0].find("level=- energy=-39") != std::string::npos);
    CHECK(lines[1] == "x,psi_unnormalized,psi_normalized");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto v = parse_csv_row(lines[i]);
        REQUIRE(v.size() == 3);
        CHECK(v[1] > 0.0); // nodeless extra state
        CHECK(std::isfinite(v[2]));
    }
}

TEST_CASE("morse length scale rescales closed forms", "[cli]") {
    const CliResult r = run_cli(
        "eigenstate --family morse --a 2.5 --b 0.5 --alpha 0.5 --n 2 "
        "--level 1 --grid-points 32");
    REQUIRE(r.exit_code == 0);
    CHECK(lines_of(r.out)[0].find("energy=2.25") != std::string::npos);
}

TEST_CASE("grid point resolution order", "[cli]") {
    const CliResult env_only =
        run_cli("extend --family ho --omega 2 --n 2",
                "RATEXT_GRID_POINTS=128");
    REQUIRE(env_only.exit_code == 0);
    CHECK(lines_of(env_only.out).size() == 130);

    const CliResult flag_wins =
        run_cli("extend --family ho --omega 2 --n 2 --grid-points 64",
                "RATEXT_GRID_POINTS=128");
    REQUIRE(flag_wins.exit_code == 0);
    CHECK(lines_of(flag_wins.out).size() == 66);

    CHECK(run_cli("extend --family ho --omega 2 --n 2",
                  "RATEXT_GRID_POINTS=abc")
              .exit_code == 2);
    CHECK(run_cli("extend --family ho --omega 2 --n 2",
                  "RATEXT_GRID_POINTS=7")
              .exit_code == 2);
}

TEST_CASE("verification subcommand", "[cli]") {
    const CliResult ok = run_cli(
        "verify --family ho --omega 2 --n 2 --kmax 1 --grid-points 1024");
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.out.rfind("case_id,check,status,measured,tolerance\n", 0) == 0);
    CHECK(ok.out.find(",overall,pass,0,0\n") != std::string::npos);

    const CliResult neg = run_cli(
        "verify --family ho --omega 2 --n 1 --non-conforming --format tree");
    CHECK(neg.exit_code == 0); // negative test succeeds by failing
    CHECK(neg.out.find("check regularity") != std::string::npos);
    CHECK(neg.out.find("status fail") != std::string::npos);
    CHECK(neg.out.find("overall fail") != std::string::npos);

    CHECK(run_cli("verify --family ho --omega 2 --n 1").exit_code == 1);
}
