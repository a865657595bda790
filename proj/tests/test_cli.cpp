#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path tmpdir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() / "cascade_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args, const std::string& input = "") {
    fs::path in = tmpdir() / "in.json", out = tmpdir() / "out.json",
             err = tmpdir() / "err.txt";
    std::ofstream(in, std::ios::binary) << input;
    std::string cmd = std::string(CASCADE_CLI_PATH) + " " + args + " --in " + in.string() +
                      " > " + out.string() + " 2> " + err.string();
    int rc = std::system(cmd.c_str());
    return {WEXITSTATUS(rc), slurp(out), slurp(err)};
}

const char* kBiquartic =
    R"({"degree":8,"coeffs":[[2,0],[0,0],[0,0],[0,0],[-3,0],[0,0],[0,0],[0,0]]})";

}  // namespace

TEST_CASE("detect accepts an in-family degree-8 polynomial") {
    auto r = run_cli("detect --degree 8", kBiquartic);
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["diagnosis"]["in_family"] == true);
    CHECK(j["diagnosis"]["recovered"]["gamma1"][0].get<double>() == -3.0);
    CHECK(j["diagnosis"]["recovered"]["gamma0"][0].get<double>() == 2.0);
}

TEST_CASE("detect rejects z^8 + z^5 with exit 1") {
    auto r = run_cli("detect --degree 8",
                     R"({"degree":8,"coeffs":[[0,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0]]})");
    CHECK(r.exit_code == 1);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["diagnosis"]["in_family"] == false);
    CHECK(j["diagnosis"]["residuals"][0].get<double>() == 1.0);
}

TEST_CASE("solve degree 9 from parameters") {
    auto r = run_cli("solve --degree 9",
                     R"({"degree":9,"params":{"alpha0":[0,0],"alpha1":[0,0],"alpha2":[0,0],)"
                     R"("beta0":[6,0],"beta1":[-7,0],"beta2":[0,0]}})");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["roots"].size() == 9);
    // nine roots: the cube roots of 1, 2 and -3
    int found = 0;
    for (const auto& root : j["roots"]) {
        std::complex<double> z(root[0].get<double>(), root[1].get<double>());
        std::complex<double> z3 = z * z * z;
        for (double y : {1.0, 2.0, -3.0})
            if (std::abs(z3 - std::complex<double>(y)) < 1e-12) ++found;
    }
    CHECK(found == 9);
    CHECK(j.contains("trace"));
}

TEST_CASE("solve refuses off-family coefficients without --oracle") {
    std::string in =
        R"({"degree":8,"coeffs":[[0,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0]]})";
    auto r = run_cli("solve --degree 8", in);
    CHECK(r.exit_code == 1);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());

    auto r2 = run_cli("solve --degree 8 --oracle", in);
    CHECK(r2.exit_code == 0);
    CHECK(nlohmann::json::parse(r2.out)["roots"].size() == 8);
}

TEST_CASE("verify reports the max scaled residual") {
    std::string in =
        R"({"degree":8,"coeffs":[[2,0],[0,0],[0,0],[0,0],[-3,0],[0,0],[0,0],[0,0]],)"
        R"("roots":[[1,0],[-1,0],[0,1],[0,-1],[1.189207115002721,0],)"
        R"([-1.189207115002721,0],[0,1.189207115002721],[0,-1.189207115002721]]})";
    auto r = run_cli("verify --degree 8", in);
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["max_residual"].get<double>() <= 1e-9);
}

TEST_CASE("malformed input and bad flags exit 2") {
    CHECK(run_cli("detect --degree 8", "not json").exit_code == 2);
    CHECK(run_cli("detect --degree 7", kBiquartic).exit_code == 2);
    CHECK(run_cli("detect --degree 8 --bogus-flag", kBiquartic).exit_code == 2);
    // degree mismatch between flag and payload
    CHECK(run_cli("detect --degree 9", kBiquartic).exit_code == 2);
}

TEST_CASE("golden stability: every subcommand is byte-identical across runs") {
    const std::string params8 =
        R"({"degree":8,"params":{"alpha0":[0.25,-0.5],"alpha1":[1,0.125],"beta0":[0,0.75],)"
        R"("beta1":[-1.5,0],"gamma0":[2,0],"gamma1":[-3,0.0625]}})";

    auto fwd1 = run_cli("forward --degree 8", params8);
    auto fwd2 = run_cli("forward --degree 8", params8);
    REQUIRE(fwd1.exit_code == 0);
    CHECK(fwd1.out == fwd2.out);

    auto slv1 = run_cli("solve --degree 8", params8);
    auto slv2 = run_cli("solve --degree 8", params8);
    REQUIRE(slv1.exit_code == 0);
    CHECK(slv1.out == slv2.out);

    auto det1 = run_cli("detect --degree 8", kBiquartic);
    auto det2 = run_cli("detect --degree 8", kBiquartic);
    CHECK(det1.out == det2.out);

    auto gen1 = run_cli("gen --degree 9 --count 5 --seed 11");
    auto gen2 = run_cli("gen --degree 9 --count 5 --seed 11");
    REQUIRE(gen1.exit_code == 0);
    CHECK(gen1.out == gen2.out);
    CHECK(std::count(gen1.out.begin(), gen1.out.end(), '\n') == 5);
}

TEST_CASE("gen with --perturb marks parameters invalid") {
    auto r = run_cli("gen --degree 8 --count 3 --seed 7 --perturb 5,0.01");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line))
        CHECK(nlohmann::json::parse(line)["params_valid"] == false);

    CHECK(run_cli("gen --degree 8 --count 1 --seed 7 --perturb 8,0.01").exit_code == 2);
    CHECK(run_cli("gen --degree 8 --count 1 --seed 7 --perturb nonsense").exit_code == 2);
}

TEST_CASE("bench emits a report with zero mismatches") {
    auto r = run_cli("bench --degree 8 --count 10 --seed 5");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["mismatches"].get<long>() == 0);
    CHECK(j["count"].get<long>() == 10);
    CHECK(j["speedup_ratio"].get<double>() > 0.0);
}
