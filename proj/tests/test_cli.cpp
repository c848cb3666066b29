#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" SPECTRA_CLI_PATH "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("count prints the number of distinct sums")
{
    Run r = cli("count --poly \"x^2 - x - 1\" --n 2");
    CHECK(r.code == 0);
    CHECK(r.out == "7\n");
    Run s = cli("count --poly \"x^2 - x - 1\" --n 10 --series --format csv");
    CHECK(s.out.rfind("n,count\n0,2\n1,4\n2,7\n", 0) == 0);
}

TEST_CASE("json envelope")
{
    Run r = cli("--format json verdict --poly \"x^4 - x - 1\"");
    REQUIRE(r.code == 0);
    auto j = json_of(r);
    CHECK(j["schema_version"] == 1);
    CHECK(j["command"] == "verdict");
    CHECK(j["result"]["conclusion"] == "DenseL0AndL0");
    CHECK(j["result"]["rules"] == nlohmann::json::array({"R3", "R5"}));
    // Global options may also follow the subcommand.
    Run s = cli("verdict --poly \"x^4 - x - 1\" --format json");
    CHECK(s.out == r.out);
}

TEST_CASE("exit codes")
{
    CHECK(cli("verdict --poly \"x^2 - x - 1\"").code == 0);
    CHECK(cli("verdict --poly \"x^4 - x^3 - x^2 - x + 1\"").code == 2);
    CHECK(cli("verdict --poly \"x^4 - x - 1\" --root-index 0").code == 64);
    CHECK(cli("count --poly \"x^^2\" --n 3").code == 64);
    CHECK(cli("").code == 64);
    CHECK(cli("count --n 3").code == 64);
    CHECK(cli("--format xml count --poly x-2 --n 1").code == 64);
    CHECK(cli("--budget 64 lambda-min --poly \"x^4 - x - 1\" --n 24").code == 3);
    CHECK(cli("examples", "SPECTRA_BUDGET_BITS=abc").code == 64);
}

TEST_CASE("output is deterministic and schedule-independent")
{
    for (const char* args : {"--format json verdict --poly \"x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1\"",
                             "--format json lambda-min --poly \"x^4 - x - 1\" --n 14",
                             "--format json spectrum --poly \"x^2 - x - 1\" --n 12 --limit 20",
                             "--format json search --samples 300 --degree-max 9 --seed 5",
                             "--format json attractor --lambda 0.3,0.3 --depth 16"}) {
        Run a = cli(args), b = cli(args), c = cli(std::string("--serial ") + args);
        CHECK_MESSAGE(a.code == 0, args);
        CHECK(a.out == b.out);
        CHECK(a.out == c.out);
    }
}

TEST_CASE("examples table")
{
    Run r = cli("examples");
    CHECK(r.code == 0);
    CHECK(r.out.find("8/8 pass") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("output file and image")
{
    std::string json_path = "cli_test_out.json", pgm_path = "cli_test_out.pgm";
    Run r = cli("--format json --output " + json_path +
                " attractor --poly \"x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1\" --near 0.026,0.74 --image " + pgm_path +
                " --pixels 64 --raster-depth 12");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream jf(json_path);
    auto j = nlohmann::json::parse(jf);
    CHECK(j["result"]["connectivity"]["verdict"] == "Connected");
    CHECK(j["result"]["interior"] == true);
    CHECK(j["result"]["zn_lower_bound_exponent"] == 2);
    std::ifstream pf(pgm_path, std::ios::binary);
    std::string header;
    std::getline(pf, header);
    CHECK(header == "P5");
    std::remove(json_path.c_str());
    std::remove(pgm_path.c_str());
}

TEST_CASE("search subcommand")
{
    auto j = json_of(cli("--format json search --poly \"x^4 - x - 1\""));
    CHECK(j["result"]["search"]["status"] == "Found");
    auto k = json_of(cli("--format json search --poly \"2x^2 - 1\""));
    CHECK(k["result"]["search"]["status"] == "NoneUpTo");
    CHECK(k["result"]["search"]["proof"] == true);
    auto e = json_of(cli("--format json search --exhaustive --degree-max 5"));
    CHECK(e["result"]["sampler"]["respects_bound"] == true);
}

TEST_CASE("classify text output")
{
    Run r = cli("classify --poly \"x^2 - x - 1\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("classification.is_pisot: true") != std::string::npos);
}
