#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wpshms/json_io.hpp"
#include "wpshms/plot.hpp"
#include "wpshms/verify.hpp"

using namespace wpshms;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "wpshms_cli_out.txt";
    const std::string cmd = std::string(WPSHMS_CLI_BIN) + " " + args + " > " + out.string() +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WEXITSTATUS(status);
    r.out = slurp(out);
    return r;
}

} // namespace

TEST_CASE("category JSON is byte-deterministic across thread counts") {
    const Weights w = build_weights({1, 1, 2});
    setenv("WPSHMS_THREADS", "1", 1);
    const std::string serial = category_dump(build_category(w, 0));
    setenv("WPSHMS_THREADS", "4", 1);
    const std::string parallel = category_dump(build_category(w, 0));
    unsetenv("WPSHMS_THREADS");
    CHECK(serial == parallel);
    CHECK(serial == category_dump(build_category(w, 0)));
}

TEST_CASE("category JSON matches the golden files") {
    const std::string g32 = slurp(fs::path(WPSHMS_GOLDEN_DIR) / "category_3_2.json");
    CHECK(category_dump(build_category(build_weights({3, 2}), 0)) == g32);
    const std::string g112 = slurp(fs::path(WPSHMS_GOLDEN_DIR) / "category_1_1_2.json");
    CHECK(category_dump(build_category(build_weights({1, 1, 2}), 0)) == g112);
}

TEST_CASE("category JSON structure") {
    const json j = to_json(build_category(build_weights({3, 2}), 0));
    CHECK(j["weights"] == json::array({3, 2}));
    CHECK(j["objects"].size() == 5);
    CHECK(j["products"].size() == 1);
    CHECK(j["products"][0]["weight"] == json::array()); // weight 1 has no factors
    CHECK(j["products"][0]["approx"] == 1.0);
    // identity homs plus 6 generators
    CHECK(j["homs"].size() == 5 + 6);
}

TEST_CASE("PosExact serialization as sorted triples") {
    const PosExact v = PosExact::from_exponents(
        {{5, Rational(-5, 12)}, {2, Rational(1, 6)}, {3, Rational(1, 4)}});
    const json j = to_json(v);
    REQUIRE(j.size() == 3);
    CHECK(j[0] == json::array({2, 1, 6}));
    CHECK(j[1] == json::array({3, 1, 4}));
    CHECK(j[2] == json::array({5, -5, 12}));
}

TEST_CASE("cli: category golden bytes and determinism") {
    const fs::path out = fs::temp_directory_path() / "wpshms_cat.json";
    const CliResult r =
        run_cli("category --weights 3,2 --base 0 --out " + out.string());
    REQUIRE(r.code == 0);
    CHECK(slurp(out) == slurp(fs::path(WPSHMS_GOLDEN_DIR) / "category_3_2.json"));
}

TEST_CASE("cli: invalid weights exit with code 2") {
    const CliResult r = run_cli("category --weights 2,4");
    CHECK(r.code == 2);
    CHECK(r.out.find("gcd") != std::string::npos);
}

TEST_CASE("cli: verify suites pass on P(1,1)") {
    const CliResult r = run_cli("verify --weights 1,1 --suite all");
    CHECK(r.code == 0);
}

TEST_CASE("cli: all suites pass on P(3,2)") {
    const CliResult r = run_cli("verify --weights 3,2 --suite all --grid 100");
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.size() == 7);
    for (const auto& suite : j) {
        CHECK(suite["pass"] == true);
        CHECK(suite["failures"].empty());
    }
}

TEST_CASE("cli: verify functor on P(1,2,3)") {
    const CliResult r = run_cli("verify --weights 1,2,3 --suite functor --format text");
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("cli: info text and json") {
    const CliResult txt = run_cli("info --weights 3,2 --format text");
    REQUIRE(txt.code == 0);
    CHECK(txt.out.find("group order 3") != std::string::npos);
    const CliResult js = run_cli("info --weights 1,1,2");
    REQUIRE(js.code == 0);
    const json j = json::parse(js.out);
    CHECK(j["scale"] == 4);
    CHECK(j["charts"].size() == 3);
}

TEST_CASE("cli: plot emits SVG with the six distance-3 dots") {
    const fs::path out = fs::temp_directory_path() / "wpshms_plot.svg";
    const CliResult r = run_cli("plot --weights 1,1,2 --dist 3 --out " + out.string());
    REQUIRE(r.code == 0);
    const std::string svg = slurp(out);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
          std::string::npos);
    std::size_t dots = 0;
    for (std::size_t pos = svg.find("<circle"); pos != std::string::npos;
         pos = svg.find("<circle", pos + 1))
        ++dots;
    CHECK(dots == 6);
    CHECK(svg.find("(0,1,1)") != std::string::npos);
}

TEST_CASE("cli: section plot for P(3,2)") {
    const fs::path out = fs::temp_directory_path() / "wpshms_sections.svg";
    const CliResult r =
        run_cli("plot --weights 3,2 --sections 0..4 --out " + out.string());
    REQUIRE(r.code == 0);
    const std::string svg = slurp(out);
    CHECK(svg.find("s_1;(1,-1)") != std::string::npos);
    CHECK(svg.find("s_4;(4,-4)") != std::string::npos);
}

TEST_CASE("cli: plots reject high dimensions") {
    const CliResult r = run_cli("plot --weights 1,2,3,4 --dist 2");
    CHECK(r.code == 2);
    CHECK(r.out.find("n <= 2") != std::string::npos);
}

TEST_CASE("cli: flow emits summary JSON and a trajectory CSV") {
    const fs::path prefix = fs::temp_directory_path() / "wpshms_flow";
    const CliResult r = run_cli("flow --weights 1,1,2 --out " + prefix.string());
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(prefix.string() + ".json"));
    REQUIRE(j["trees"].size() == 24);
    for (const auto& t : j["trees"]) {
        CHECK(t["meet_residual"].get<double>() < 1e-8);
        CHECK(std::fabs(t["area_numeric"].get<double>() - t["area_exact"].get<double>()) < 1e-9);
    }
    const std::string csv = slurp(prefix.string() + ".csv");
    CHECK(csv.rfind("t,x1,x2", 0) == 0);
    CHECK(csv.find("\r\n") != std::string::npos);
}

TEST_CASE("verify runner rejects unknown suites") {
    CHECK_THROWS_AS(run_suites("bogus", build_weights({1, 1}), 0, 0, 0), std::invalid_argument);
}

TEST_CASE("plot data: sections wrap within one fiber period") {
    const Weights w = build_weights({3, 2});
    const PlotData data = sections_plot(w, 0, 0, 5);
    // period q_0 = 3 in units of 2pi
    for (const auto& s : data.segments) {
        CHECK(s.y1 >= -1e-9);
        CHECK(s.y1 <= 3.0 + 1e-9);
        CHECK(s.y2 >= -1e-9);
        CHECK(s.y2 <= 3.0 + 1e-9);
    }
    // s_5 starts at 2 with slope 5/12 and wraps at x = 12/5
    std::size_t wraps = 0;
    for (std::size_t i = 1; i < data.segments.size(); ++i)
        if (std::fabs(data.segments[i].x1 - data.segments[i - 1].x2) < 1e-12 &&
            std::fabs(data.segments[i].y1 - data.segments[i - 1].y2) > 1.0)
            ++wraps;
    CHECK(wraps == 1);
    bool found = false;
    for (const auto& s : data.segments)
        if (std::fabs(s.x2 - 2.4) < 1e-9 && std::fabs(s.y2 - 3.0) < 1e-9) found = true;
    CHECK(found);
}
