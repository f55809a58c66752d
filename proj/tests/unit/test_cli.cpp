// Copyright 2026 The esvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using esvqe::testing::fixture_path;

namespace {

const fs::path kWork = fs::temp_directory_path() / "esvqe_cli_test";

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Result run(const std::string &args, const std::string &env = "") {
    fs::create_directories(kWork);
    const fs::path out = kWork / "stdout.txt";
    const fs::path err = kWork / "stderr.txt";
    const std::string cmd = env + " \"" + std::string(ESVQE_CLI_PATH) + "\" " + args + " >\"" +
                            out.string() + "\" 2>\"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace

TEST_CASE("run writes artifacts and exits 0") {
    const fs::path dir = kWork / "run_h2";
    fs::remove_all(dir);
    const auto r = run("run -f \"" + fixture_path("h2_0.735") + "\" -o \"" + dir.string() + "\"");
    REQUIRE(r.code == 0);
    const auto s = nlohmann::json::parse(r.out);
    CHECK(std::abs(s["final_error"].get<double>()) < 1e-10);
    CHECK(slurp(dir / "summary.json") == r.out);
    CHECK(fs::exists(dir / "trace.jsonl"));
    CHECK(fs::exists(dir / "selection.csv"));
    CHECK(fs::exists(dir / "selection.jsonl"));
}

TEST_CASE("config files and thread count do not change the result") {
    fs::create_directories(kWork);
    const fs::path cfg = kWork / "h4.cfg";
    std::ofstream(cfg) << "# H4 with the QE pool\nfcidump = " << fixture_path("h4_0.900")
                       << "\npool = qe\n";
    const auto one = run("run -c \"" + cfg.string() + "\"", "ESVQE_THREADS=1");
    const auto four = run("run -c \"" + cfg.string() + "\"", "ESVQE_THREADS=4");
    REQUIRE(one.code == 0);
    REQUIRE(four.code == 0);
    CHECK(one.out == four.out);
    CHECK(nlohmann::json::parse(one.out)["pool"] == "qe");

    // Flags override the file.
    const auto adaptive = run("run -c \"" + cfg.string() + "\" -m adaptive --max-ops 2");
    CHECK(adaptive.code == 0);
    const auto s = nlohmann::json::parse(adaptive.out);
    CHECK(s["method"] == "adaptive");
    CHECK(s["ansatz_size"].get<int>() <= 2);
}

TEST_CASE("configuration errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("run").code == 2);
    CHECK(run("run -f \"" + fixture_path("h2_0.735") + "\" -m nonsense").code == 2);
    CHECK(run("run -f \"" + fixture_path("h2_0.735") + "\" -m ovp_ceo_paired -p qe").code == 2);
    CHECK(run("run -f \"" + fixture_path("h2_0.735") + "\" --eps-conv 0").code == 2);
    CHECK(run("run -f \"" + fixture_path("h2_0.735") + "\" --max-sweeps abc").code == 2);
    CHECK(run("scan -i a=" + fixture_path("h2_0.735")).code == 2);
    CHECK(run("scan -i nolabel").code == 2);
    const fs::path cfg = kWork / "bad.cfg";
    fs::create_directories(kWork);
    std::ofstream(cfg) << "colour = blue\n";
    CHECK(run("run -c \"" + cfg.string() + "\"").code == 2);
}

TEST_CASE("I/O and input-format errors exit 4") {
    CHECK(run("run -f /nonexistent/x.fcidump").code == 4);
    CHECK(run("fci -f /nonexistent/x.fcidump").code == 4);
    const fs::path bad = kWork / "broken.fcidump";
    fs::create_directories(kWork);
    std::ofstream(bad) << "this is not an FCIDUMP\n";
    CHECK(run("fci -f \"" + bad.string() + "\"").code == 4);
    CHECK(run("speedup-report \"" + bad.string() + "\"").code == 4);
    CHECK(run("speedup-report /nonexistent/summary.json").code == 4);
}

TEST_CASE("a sweep budget that is too small exits 3") {
    const auto r = run("run -f \"" + fixture_path("h4_0.900") + "\" --max-sweeps 1 --eps-conv 1e-14");
    CHECK(r.code == 3);
    CHECK_FALSE(r.out.empty());
}

TEST_CASE("fci, select and pool subcommands") {
    const auto f = run("fci -f \"" + fixture_path("lih_1.595") + "\"");
    REQUIRE(f.code == 0);
    const auto j = nlohmann::json::parse(f.out);
    CHECK(std::abs(j["fci_energy"].get<double>() -
                   esvqe::testing::load_reference("lih_1.595").fci_energy) < 1e-8);
    CHECK(j["n_qubits"] == 12);

    const auto s = run("select -f \"" + fixture_path("h2_0.735") + "\" --singles");
    REQUIRE(s.code == 0);
    std::istringstream lines(s.out);
    std::string line;
    int rows = -1;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 3);

    const auto p = run("pool -f \"" + fixture_path("lih_1.595") + "\" -p ovp_ceo");
    REQUIRE(p.code == 0);
    CHECK(nlohmann::json::parse(p.out)["size"] == 168);
    const auto plus =
        run("pool -f \"" + fixture_path("lih_1.595") + "\" -p ovp_ceo -m ovp_ceo_plus");
    REQUIRE(plus.code == 0);
    CHECK(nlohmann::json::parse(plus.out)["size"].get<int>() < 168);
}

TEST_CASE("scan and speedup-report") {
    const fs::path dir = kWork / "scan";
    fs::remove_all(dir);
    const auto s = run("scan -i a=\"" + fixture_path("h2_0.735") + "\" -i b=\"" +
                       fixture_path("h2_1.000") + "\" -o \"" + dir.string() + "\"");
    REQUIRE(s.code == 0);
    CHECK(fs::exists(dir / "selection_matrix.csv"));
    CHECK(nlohmann::json::parse(slurp(dir / "scan_summary.json"))["all_columns_identical"] ==
          true);

    std::string files;
    for (const char *name : {"h2_0.735", "h4_0.900", "h3plus_0.900"}) {
        const fs::path out = kWork / (std::string("sp_") + name);
        fs::remove_all(out);
        REQUIRE(run("run -f \"" + fixture_path(name) + "\" -o \"" + out.string() + "\"").code == 0);
        files += " \"" + (out / "summary.json").string() + "\"";
    }
    const auto r = run("speedup-report" + files);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("method,pool_size,evals_to_chemical_accuracy,slope\n", 0) == 0);
    CHECK(r.err.find("energy_sorting log-log slope") != std::string::npos);
}
