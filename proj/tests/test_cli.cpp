#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using hyperlay::cli::run;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("hyperlay_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("same seed, same bytes") {
    TempDir dir;
    write(dir.file("net.json"), hyperlay::testing::to_json(hyperlay::testing::twin_dataset(1)));
    for (int i = 0; i < 2; ++i) {
        auto r = invoke({"-i", dir.file("net.json"), "-o", dir.file("out" + std::to_string(i) + ".svg"), "--seed", "7",
                         "--dump", dir.file("dump" + std::to_string(i) + ".json")});
        REQUIRE(r.code == 0);
    }
    CHECK(slurp(dir.file("out0.svg")) == slurp(dir.file("out1.svg")));
    CHECK(slurp(dir.file("dump0.json")) == slurp(dir.file("dump1.json")));
    CHECK_FALSE(fs::exists(dir.file("out0.svg.tmp")));
}

TEST_CASE("metrics report bundling arithmetic") {
    TempDir dir;
    write(dir.file("net.txt"), hyperlay::testing::to_edgelist(hyperlay::testing::twin_dataset(2)));
    auto r = invoke({"-i", dir.file("net.txt"), "--format", "edgelist", "-o", dir.file("out.svg"), "--metrics"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("authors: 33\n") != std::string::npos);
    CHECK(r.out.find("papers: 48 -> 30\n") != std::string::npos);
    CHECK(r.out.find("nodes: 81 -> 63\n") != std::string::npos);
    CHECK(r.out.find("crossings: ") != std::string::npos);
    CHECK(r.out.find("wall_time_s: ") != std::string::npos);
}

TEST_CASE("failures leave no output behind") {
    TempDir dir;
    SUBCASE("missing input") {
        auto r = invoke({"-i", dir.file("nope.json"), "-o", dir.file("out.svg")});
        CHECK(r.code == 1);
        CHECK_FALSE(r.err.empty());
    }
    SUBCASE("invalid input") {
        write(dir.file("bad.txt"), "a b\nc c\n");
        auto r = invoke({"-i", dir.file("bad.txt"), "--format", "edgelist", "-o", dir.file("out.svg"), "--dump",
                         dir.file("dump.json")});
        CHECK(r.code == 1);
        CHECK(r.err.find("duplicate author") != std::string::npos);
        CHECK_FALSE(fs::exists(dir.file("dump.json")));
    }
    SUBCASE("malformed json") {
        write(dir.file("bad.json"), "{\"authors\": [");
        CHECK(invoke({"-i", dir.file("bad.json"), "-o", dir.file("out.svg")}).code == 1);
    }
    SUBCASE("unwritable output directory") {
        write(dir.file("net.txt"), "a b\n");
        auto r = invoke({"-i", dir.file("net.txt"), "--format", "edgelist", "-o", dir.file("missing/dir/out.svg")});
        CHECK(r.code == 1);
    }
    SUBCASE("no hyperedges at all") {
        write(dir.file("empty.txt"), "# nothing here\n");
        CHECK(invoke({"-i", dir.file("empty.txt"), "--format", "edgelist", "-o", dir.file("out.svg")}).code == 1);
    }
    CHECK_FALSE(fs::exists(dir.file("out.svg")));
}

TEST_CASE("usage errors exit with 2") {
    TempDir dir;
    write(dir.file("net.txt"), "a b\n");
    CHECK(invoke({"--bogus"}).code == 2);
    CHECK(invoke({"-o", dir.file("out.svg")}).code == 2);
    CHECK(invoke({"-i", dir.file("net.txt"), "-o", dir.file("out.svg"), "--format", "xml"}).code == 2);
    CHECK(invoke({"-i", dir.file("net.txt"), "-o", dir.file("out.svg"), "--seed", "-3"}).code == 2);
    CHECK(invoke({"-i", dir.file("net.txt"), "-o", dir.file("out.svg"), "--iterations", "0"}).code == 2);
    // The oval would leave the 1000x700 canvas.
    CHECK(invoke({"-i", dir.file("net.txt"), "-o", dir.file("out.svg"), "--oval-aspect", "2"}).code == 2);
    CHECK_FALSE(fs::exists(dir.file("out.svg")));
}

TEST_CASE("help documents every flag") {
    auto r = invoke({"--help"});
    CHECK(r.code == 0);
    for (const char* flag : {"--input", "--format", "--output", "--dump", "--seed", "--width", "--height",
                             "--oval-aspect", "--iterations", "--mdc-rounds", "--swap-attempts", "--post-swap-iters",
                             "--threshold", "--labels", "--metrics"}) {
        CHECK_MESSAGE(r.out.find(flag) != std::string::npos, flag);
    }
}

TEST_CASE("seed falls back to HYPERLAY_SEED") {
    TempDir dir;
    write(dir.file("net.json"), hyperlay::testing::to_json(hyperlay::testing::twin_dataset(3)));
    auto base = std::vector<std::string>{"-i", dir.file("net.json"), "--mdc-rounds", "3"};
    auto with = [&](std::vector<std::string> extra, const std::string& out) {
        auto args = base;
        args.insert(args.end(), {"-o", dir.file(out)});
        args.insert(args.end(), extra.begin(), extra.end());
        return invoke(args).code;
    };
    REQUIRE(with({"--seed", "11"}, "explicit.svg") == 0);
    ::setenv("HYPERLAY_SEED", "11", 1);
    REQUIRE(with({}, "env.svg") == 0);
    ::setenv("HYPERLAY_SEED", "12", 1);
    REQUIRE(with({"--seed", "11"}, "flag_wins.svg") == 0);
    ::setenv("HYPERLAY_SEED", "eleven", 1);
    CHECK(with({}, "bad_env.svg") == 2);
    ::unsetenv("HYPERLAY_SEED");
    REQUIRE(with({}, "default.svg") == 0);
    REQUIRE(with({"--seed", "0"}, "zero.svg") == 0);

    CHECK(slurp(dir.file("explicit.svg")) == slurp(dir.file("env.svg")));
    CHECK(slurp(dir.file("explicit.svg")) == slurp(dir.file("flag_wins.svg")));
    CHECK(slurp(dir.file("default.svg")) == slurp(dir.file("zero.svg")));
}

TEST_CASE("overrides reach the engine") {
    TempDir dir;
    write(dir.file("net.json"), hyperlay::testing::to_json(hyperlay::testing::twin_dataset(4)));
    auto r = invoke({"-i", dir.file("net.json"), "-o", dir.file("out.svg"), "--dump", dir.file("d.json"), "--width",
                     "800", "--height", "800", "--oval-aspect", "0.5", "--iterations", "40", "--mdc-rounds", "2",
                     "--swap-attempts", "5", "--post-swap-iters", "7", "--threshold", "0.01", "--labels"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(slurp(dir.file("d.json")));
    CHECK(doc["canvas"]["width"] == 800.0);
    CHECK(doc["config"]["max_iteration"] == 40);
    CHECK(doc["config"]["mdc_rounds"] == 2);
    CHECK(doc["config"]["swap_attempts"] == 5);
    CHECK(doc["config"]["post_swap_iterations"] == 7);
    CHECK(doc["config"]["energy_threshold"] == 0.01);
    CHECK(doc["config"]["outer_oval"]["semi_axis_y"] == doctest::Approx(0.5 * 0.42 * 800));
    CHECK(doc["metrics"]["first_relax_iterations"] <= 40);
    CHECK(slurp(dir.file("out.svg")).find("<text") != std::string::npos);
}
