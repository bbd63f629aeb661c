#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using Json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

/* Runs the CLI with stdout captured; stderr_to_out folds stderr in (and
 * discards stdout) for diagnostics tests. */
RunResult run_cli(const std::string& args, bool stderr_to_out = false) {
    std::string cmd = std::string(CLI_BINARY) + " " + args;
    cmd += stderr_to_out ? " 2>&1 >/dev/null" : " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
    int rc = pclose(pipe);
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("rmatrix: ad-invariant decomposable twist") {
    auto res = run_cli("rmatrix --algebra su3 --twist \"Y23^(2Z1-Z2):0.5\"");
    CHECK(res.exit_code == 0);
    Json j = Json::parse(res.out);
    CHECK(j["is_r_matrix"] == true);
    CHECK(j["square_zero"] == true);
    CHECK(j["version"] == "1.0.0");
    CHECK(j["config"]["twist"] == "Y23^(2Z1-Z2):0.5");

    /* on su(2) every square lands in the invariant volume form */
    res = run_cli("rmatrix --algebra su2 --twist \"X12^Y12:1\"");
    CHECK(res.exit_code == 0);
    j = Json::parse(res.out);
    CHECK(j["is_r_matrix"] == true);
    CHECK(j["square_zero"] == false);

    /* X12 ^ X13 on su(3): nonvanishing, non-invariant square */
    res = run_cli("rmatrix --algebra su3 --twist \"X12^X13:1\"");
    CHECK(res.exit_code == 1);
    j = Json::parse(res.out);
    CHECK(j["is_r_matrix"] == false);
    CHECK(j["square_zero"] == false);
}

TEST_CASE("admissible: sphere verdict and plot CSV") {
    auto csv = temp_file("td_cli_adm.csv");
    std::filesystem::remove(csv);
    auto res = run_cli(
        "admissible --algebra su2 --twist l12=0.9 --image sphere:0.5 "
        "--samples 10000 --csv " +
        csv.string());
    CHECK(res.exit_code == 0);
    Json j = Json::parse(res.out);
    CHECK(j["report"]["verdict"] == true);
    CHECK(j["report"]["min_abs"].get<double>() == doctest::Approx(0.01));
    CHECK(j["report"]["n_samples"] == 10006);

    std::istringstream lines(slurp(csv));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "xi1,xi2,xi3,f");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 10006);
    std::filesystem::remove(csv);
}

TEST_CASE("volume: numeric quadrature matches the closed form") {
    auto res = run_cli("volume --lambda 0");
    CHECK(res.exit_code == 0);
    Json j = Json::parse(res.out);
    CHECK(j["numeric"].get<double>() ==
          doctest::Approx(3.141592653589793).epsilon(1e-12));
    CHECK(j["rel_error"].get<double>() < 1e-8);
    CHECK(j["label"] == "ok");

    res = run_cli("volume --lambda 1.2");
    CHECK(res.exit_code == 0);
    j = Json::parse(res.out);
    CHECK(j["label"] == "outside_admissible_range");
}

TEST_CASE("deform: single point and grid dump") {
    auto res = run_cli("deform --action su --chart-n 1 --twist l12=0.4 "
                       "--point 0.3,-0.7");
    CHECK(res.exit_code == 0);
    Json j = Json::parse(res.out);
    CHECK(j["n_points"] == 1);
    CHECK(j["n_singular"] == 0);
    CHECK(j["omega_upper"].size() == 1);

    auto csv = temp_file("td_cli_def.csv");
    std::filesystem::remove(csv);
    res = run_cli("deform --action torus --chart-n 2 --twist l12=-1 "
                  "--grid 1.0:3 --csv " +
                  csv.string());
    CHECK(res.exit_code == 0);
    j = Json::parse(res.out);
    CHECK(j["n_points"] == 81);
    CHECK(j["max_closedness_residual"].get<double>() < 1e-5);
    std::istringstream lines(slurp(csv));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "x1,y1,x2,y2,o_1_2,o_1_3,o_1_4,o_2_3,o_2_4,o_3_4");
    std::filesystem::remove(csv);
}

TEST_CASE("sweep volume: seven rows, all within tolerance") {
    auto csv = temp_file("td_cli_sweep_vol.csv");
    std::filesystem::remove(csv);
    auto res = run_cli("sweep volume --lambdas -0.9:0.9:0.3 --csv " +
                       csv.string());
    CHECK(res.exit_code == 0);
    Json j = Json::parse(res.out);
    REQUIRE(j["rows"].size() == 7);
    for (const auto& row : j["rows"]) {
        CHECK(row["rel_error"].get<double>() < 1e-6);
        CHECK(row["verdict"] == true);
    }
    CHECK(j["rows"][3]["lambda"].get<double>() == 0.0);

    std::istringstream lines(slurp(csv));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "lambda,numeric,closed,k_lambda,rel_error");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 7);
    std::filesystem::remove(csv);
}

TEST_CASE("sweep admissible: threshold pattern true,true,false") {
    auto res = run_cli("sweep admissible --magnitudes 0.5,0.9,1.1");
    CHECK(res.exit_code == 1); /* one verdict is false */
    Json j = Json::parse(res.out);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["verdict"] == true);
    CHECK(j["rows"][1]["verdict"] == true);
    CHECK(j["rows"][2]["verdict"] == false);
    CHECK(j["all_true"] == false);
}

TEST_CASE("sweep grassmann: every splitting up to n = 4 verifies") {
    auto res = run_cli("sweep grassmann --max-n 4");
    CHECK(res.exit_code == 0);
    Json j = Json::parse(res.out);
    REQUIRE(j["rows"].size() == 6);
    for (const auto& row : j["rows"]) {
        CHECK(row["is_r_matrix"] == true);
        CHECK(row["square_nonzero"] == true);
        CHECK(row["quotient_vanishes"] == true);
        CHECK(row["quotient_norm"] == "0");
    }
}

TEST_CASE("structured diagnostics name the offending field, exit 2") {
    auto res = run_cli("admissible --twist l99=1", true);
    CHECK(res.exit_code == 2);
    Json j = Json::parse(res.out);
    CHECK(j["error"]["field"] == "--twist");
    CHECK(j["error"]["status"] == "TD_EPARSE");

    res = run_cli("volume --lambda 2.0", true);
    CHECK(res.exit_code == 2);
    j = Json::parse(res.out);
    CHECK(j["error"]["field"] == "--lambda");
    CHECK(j["error"]["status"] == "TD_EDOMAIN");

    res = run_cli("rmatrix", true); /* missing required --twist */
    CHECK(res.exit_code == 2);
    j = Json::parse(res.out);
    CHECK(j["error"]["kind"] == "config");
}

TEST_CASE("reports are byte-identical across runs") {
    auto a = run_cli("volume --lambda 0.5");
    auto b = run_cli("volume --lambda 0.5");
    CHECK(a.out == b.out);
    a = run_cli("admissible --twist l12=0.9 --samples 500");
    b = run_cli("admissible --twist l12=0.9 --samples 500");
    CHECK(a.out == b.out);
}

TEST_CASE("TWISTDEFORM_OUTPUT_DIR prefixes relative outputs") {
    auto dir = temp_file("td_cli_outdir");
    std::filesystem::create_directories(dir);
    std::filesystem::remove(dir / "v.json");
    std::string cmd = "TWISTDEFORM_OUTPUT_DIR=" + dir.string() + " " +
                      std::string(CLI_BINARY) +
                      " volume --lambda 0.5 --out v.json 2>/dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    Json j = Json::parse(slurp(dir / "v.json"));
    CHECK(j["command"] == "volume");
    std::filesystem::remove_all(dir);
}
