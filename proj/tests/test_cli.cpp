#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(CARTANLIM_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(CARTANLIM_FIXTURES_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kMatrixTTT2 =
    R"x('{"P": [["1","1","1"],["0","t","t"],["0","0","t^(2)"]]}')x";

}  // namespace

TEST_CASE("classify: output matches the stored fixture byte for byte") {
    const RunResult r = run("classify " + kMatrixTTT2);
    CHECK(r.exit_code == 0);
    CHECK(r.out == fixture("classify_ttt2.json"));
    // deterministic: identical on a second run
    CHECK(run("classify " + kMatrixTTT2).out == r.out);
}

TEST_CASE("classify: both pipelines agree and the report says so") {
    const RunResult r = run("classify " + kMatrixTTT2);
    CHECK(r.out.find("\"agree\":true") != std::string::npos);
    CHECK(r.out.find("\"triangle_class\":\"N2\"") != std::string::npos);
    CHECK(r.out.find("\"oracle_class\":\"N2\"") != std::string::npos);
}

TEST_CASE("classify: parse errors exit 1") {
    CHECK(run("classify '{\"P\": [[\"1\",\"1\"],[\"0\"]]}'").exit_code == 1);
    CHECK(run("classify '{\"P\": [[\"1\",\"1\",\"1\"],[\"0\",\"t\",\"t\"],[\"0\",\"0\",\"t +\"]]}'")
              .exit_code == 1);
    // singular matrix is a user error
    CHECK(run("classify '{\"P\": [[\"1\",\"1\",\"1\"],[\"1\",\"1\",\"1\"],[\"0\",\"0\",\"1\"]]}'")
              .exit_code == 1);
}

TEST_CASE("classify --batch: one report per line, in input order") {
    const std::string path = std::string(CARTANLIM_FIXTURES_DIR) + "/batch_input.jsonl";
    const RunResult r = run("classify --batch " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.out == fixture("batch_output.jsonl"));
}

TEST_CASE("digraph: documented examples") {
    const RunResult ok = run("digraph C N3");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out == fixture("digraph_c_n3.json"));
    CHECK(ok.out.find("[\"C\",\"F\",\"N1\",\"N3\"]") != std::string::npos);

    CHECK(run("digraph N2 N3").exit_code == 1);
    CHECK(run("digraph F C").exit_code == 1);

    const RunResult refl = run("digraph C C");
    CHECK(refl.exit_code == 0);
    CHECK(refl.out.find("[\"C\"]") != std::string::npos);
    CHECK(run("digraph C C --proper").exit_code == 1);
    CHECK(run("digraph C N2 --proper").exit_code == 0);
}

TEST_CASE("sl2 subcommand") {
    CHECK(run("sl2 1").out.find("hyperbolic") != std::string::npos);
    CHECK(run("sl2 t").out.find("parabolic") != std::string::npos);
    CHECK(run("'sl2' 't^(1/2)'").out.find("parabolic") != std::string::npos);
    CHECK(run("sl2 0").exit_code == 1);
    CHECK(run("sl2 1/t").exit_code == 1);
}

TEST_CASE("subalgebra subcommand") {
    const std::string n2 =
        R"('{"X": [["0","1","0"],["0","0","0"],["0","0","0"]], "Y": [["0","0","1"],["0","0","0"],["0","0","0"]]}')";
    const RunResult r = run("subalgebra " + n2);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"class\":\"N2\"") != std::string::npos);

    const std::string nonabelian =
        R"('{"X": [["1","0","0"],["0","-1","0"],["0","0","0"]], "Y": [["0","1","0"],["0","0","0"],["0","0","0"]]}')";
    CHECK(run("subalgebra " + nonabelian).exit_code == 1);
}

TEST_CASE("config subcommand") {
    const RunResult r = run("config N2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == fixture("config_n2.json"));
    CHECK(r.out.find("\"points\":1") != std::string::npos);
    CHECK(r.out.find("\"lines\":3") != std::string::npos);
    CHECK(run("config Z").exit_code == 1);
}

TEST_CASE("sequence subcommand cross-validates numerically") {
    // entries may be infinite elements: at t = 1/n this is the matrix
    // [[1, n, 0], [0, 1, 0], [0, 0, 1]]
    const std::string m = R"('{"P": [["1","1/t","0"],["0","1","0"],["0","0","1"]]}')";
    const RunResult r = run("sequence " + m + " --schedule 100,10000,1000000");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"numeric_class\":\"F\"") != std::string::npos);
    CHECK(r.out.find("\"exact_class\":\"F\"") != std::string::npos);
}

TEST_CASE("selftest sweeps agree") {
    const RunResult r = run("selftest --seed 7 --count 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"instances\":20") != std::string::npos);
    CHECK(r.out.find("\"pipelines_agree\":20") != std::string::npos);
    CHECK(r.out.find("\"row_matches\":20") != std::string::npos);
}
