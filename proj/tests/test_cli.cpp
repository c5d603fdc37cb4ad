#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scallop/json_io.hpp"

namespace fs = std::filesystem;
using scallop::Json;

namespace {

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("scallop-cli-test-" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int cli(const std::string& args, const fs::path& out) {
    std::string cmd = std::string(SCALLOP_CLI_PATH) + " --out " + out.string() + " " + args +
                      " > " + (out / "stdout.txt").string() + " 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status >= 0);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("exit code contract: pass, fail, usage") {
    auto dir = fresh_dir("codes");
    CHECK(cli("generate --s 3", dir) == 0);
    CHECK(cli("certify --grid " + (dir / "grid.json").string() + " --mode maximal", dir) == 0);
    CHECK(cli("exhaust --grid " + (dir / "grid.json").string(), dir) == 0);

    // corrupt the grid: collapse two points; certification must fail with 2
    Json j;
    {
        std::ifstream f(dir / "grid.json");
        f >> j;
    }
    j["points"][0][1] = j["points"][0][0];
    {
        std::ofstream f(dir / "bad.json");
        f << j.dump(2);
    }
    CHECK(cli("certify --grid " + (dir / "bad.json").string() + " --mode negative", dir) == 2);

    // usage errors
    CHECK(cli("generate", dir) == 1);                        // missing --s
    CHECK(cli("generate --s 3 --bogus-flag", dir) == 1);     // unknown flag
    CHECK(cli("exhaust --s 6", dir) == 1);                   // cap violation
    CHECK(cli("certify --grid /nonexistent.json", dir) == 1);
}

TEST_CASE("manifest records the run and replays byte-identically") {
    auto dir = fresh_dir("manifest");
    REQUIRE(cli("generate --s 4 --refined", dir) == 0);
    auto manifest = slurp(dir / "manifest.json");
    auto grid = slurp(dir / "grid.json");
    auto svg = slurp(dir / "grid.svg");

    Json m = Json::parse(manifest);
    CHECK(m.at("schema") == "v1");
    CHECK(m.at("subcommand") == "generate");
    CHECK(m.at("artifacts").size() == 2);

    // replay into a second directory via --from-manifest
    auto dir2 = fresh_dir("manifest-replay");
    fs::copy_file(dir / "manifest.json", dir2 / "m.json");
    REQUIRE(cli("--from-manifest " + (dir2 / "m.json").string(), dir) == 0);
    // the replay re-executes the recorded argv, writing to the original out dir
    CHECK(slurp(dir / "grid.json") == grid);
    CHECK(slurp(dir / "grid.svg") == svg);

    // independent rerun of the same arguments is byte-identical
    auto dir3 = fresh_dir("manifest-rerun");
    REQUIRE(cli("generate --s 4 --refined", dir3) == 0);
    CHECK(slurp(dir3 / "grid.json") == grid);
    CHECK(slurp(dir3 / "grid.svg") == svg);
}

TEST_CASE("certify --s drives generation with the declared counts") {
    auto dir = fresh_dir("counts");
    REQUIRE(cli("certify --s 2 --mode all", dir) == 0);
    Json neg = Json::parse(slurp(dir / "report-claim-negative.json"));
    Json mx = Json::parse(slurp(dir / "report-maximal-case.json"));
    CHECK(neg.at("checked_count") == 8);  // s(s-1) cols^2
    CHECK(mx.at("checked_count") == 8);   // 2 s^2
    CHECK(neg.at("status") == "pass");
    CHECK(mx.at("status") == "pass");
}

TEST_CASE("torus pipeline through the cli") {
    auto dir = fresh_dir("torus");
    REQUIRE(cli("generate --s 2 --r 3", dir) == 0);
    REQUIRE(cli("certify --torus " + (dir / "torus.json").string(), dir) == 0);
    Json rep = Json::parse(slurp(dir / "report-torus-structural.json"));
    CHECK(rep.at("status") == "pass");
    CHECK(cli("exhaust --torus " + (dir / "torus.json").string(), dir) == 0);
    Json ex = Json::parse(slurp(dir / "report-exhaustive-rpartition.json"));
    CHECK(ex.at("checked_count") == 6561 * 8);
}

TEST_CASE("separate and render pipelines") {
    auto dir = fresh_dir("separate");
    REQUIRE(cli("separate --a 4 --count 2 --seed 3 --svg", dir) == 0);
    Json summary = Json::parse(slurp(dir / "separate-summary.json"));
    CHECK(summary.at("all_valid_and_planar") == true);
    CHECK(summary.at("instances").size() == 2);
    REQUIRE(cli("render --system " + (dir / "system.json").string() + " --svg-out graph.svg", dir) ==
            0);
    CHECK(slurp(dir / "graph.svg").find("<svg") == 0);

    REQUIRE(cli("generate --s 2", dir) == 0);
    REQUIRE(cli("render --grid " + (dir / "grid.json").string() + " --partition 1122", dir) == 0);
    CHECK(slurp(dir / "render.svg").find("polygon") != std::string::npos);
}
