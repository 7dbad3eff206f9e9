#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "halfguard_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run(const std::string& args) {
    fs::path out = work_dir() / "stdout.txt";
    std::string cmd = std::string(HALFGUARD_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out)};
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = work_dir() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("classify prints flags and rejects broken files") {
    auto square = write_file("square.poly", "4\n0 0\n1 0\n1 1\n0 1\n");
    auto r = run("classify " + square.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "orthogonal"));
    CHECK(contains(r.out, "staircase"));
    CHECK(contains(r.out, "x-monotone"));

    auto broken = write_file("broken.poly", "3\n0 0\n1 0\n");
    CHECK(run("classify " + broken.string()).exit_code == 2);
    CHECK(run("classify " + (work_dir() / "missing.poly").string()).exit_code == 2);
}

TEST_CASE("generate writes a loadable instance of the right class") {
    auto p = (work_dir() / "stairs.poly").string();
    CHECK(run("generate --family random-staircase --n 4 --seed 7 -o " + p).exit_code == 0);
    auto r = run("classify " + p);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "staircase"));

    CHECK(run("generate --family no-such-family --n 3").exit_code == 2);
}

TEST_CASE("solve verifies coverage and reports the optimum on request") {
    auto p = (work_dir() / "stairs.poly").string();
    run("generate --family random-staircase --n 4 --seed 7 -o " + p);
    auto r = run("solve " + p + " --alg staircase");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "covered: yes"));
    CHECK(contains(r.out, "PASS"));

    auto sidecar = (work_dir() / "report.json").string();
    r = run("solve " + p + " --alg staircase --oracle --json " + sidecar);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "opt: "));
    CHECK(contains(r.out, "ratio: "));

    auto j = nlohmann::json::parse(slurp(sidecar));
    CHECK(j["covered"] == true);
    CHECK(j["algorithm"] == "staircase");
    CHECK(j["guard_count"].get<long>() >= 1);
    CHECK(j["opt"].get<long>() >= 1);
    CHECK(j["guard_positions"].size() == j["guard_count"].get<std::size_t>());
    double ratio = j["ratio"].get<double>();
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 2.0);
}

TEST_CASE("solve refuses an algorithm outside its class") {
    auto p = (work_dir() / "coil.poly").string();
    run("generate --family random-spiral --n 2 --seed 3 -o " + p);
    CHECK(run("solve " + p + " --alg lshape").exit_code == 3);
    CHECK(run("solve " + p + " --alg staircase").exit_code == 3);
    CHECK(run("solve " + p + " --alg spiral").exit_code == 0);
}

TEST_CASE("the spiral program table lands in the dump") {
    auto p = (work_dir() / "coil.poly").string();
    run("generate --family random-spiral --n 2 --seed 3 -o " + p);
    auto dump = (work_dir() / "dp.json").string();
    CHECK(run("solve " + p + " --alg spiral --dump-dp " + dump).exit_code == 0);
    auto j = nlohmann::json::parse(slurp(dump));
    CHECK(j["candidates"].get<long>() > 0);
    CHECK(j["states"].get<long>() > 0);
    REQUIRE(j["rows"].is_array());
    CHECK(j["rows"].size() == j["states"].get<std::size_t>());
    for (auto& row : j["rows"]) {
        CHECK(row["edge"].get<long>() >= 1);
        CHECK(row["p"].size() == 2);
        CHECK(row["q"].size() == 2);
    }
}

TEST_CASE("oracle certifies a two guard instance") {
    auto p = (work_dir() / "coil.poly").string();
    run("generate --family random-spiral --n 2 --seed 3 -o " + p);
    auto r = run("oracle " + p + " --kmax 4 --witness-bound");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "opt: 2"));
    CHECK(contains(r.out, "witness lower bound: 2"));
    CHECK(contains(r.out, "PASS"));
}

TEST_CASE("a starved oracle budget exits with the timeout code") {
    auto p = (work_dir() / "deep.poly").string();
    run("generate --family random-spiral --n 3 --seed 1 -o " + p);
    CHECK(run("oracle " + p + " --timeout 0.000001").exit_code == 4);
    auto env = "HALFGUARD_TIMEOUT_SECS=0.000001 " + std::string(HALFGUARD_CLI_PATH);
    fs::path out = work_dir() / "stdout.txt";
    int status = std::system((env + " oracle " + p + " > " + out.string() + " 2>&1").c_str());
    CHECK(WEXITSTATUS(status) == 4);
}

TEST_CASE("rendering is byte stable and shows both colors") {
    auto p = (work_dir() / "coil.poly").string();
    run("generate --family random-spiral --n 2 --seed 3 -o " + p);
    auto a = (work_dir() / "a.svg").string();
    auto b = (work_dir() / "b.svg").string();
    CHECK(run("render " + p + " -o " + a + " --alg spiral --regions").exit_code == 0);
    CHECK(run("render " + p + " -o " + b + " --alg spiral --regions").exit_code == 0);
    std::string svg = slurp(a);
    CHECK(svg == slurp(b));
    CHECK(contains(svg, "<svg"));
    CHECK(contains(svg, "</svg>"));
    CHECK(contains(svg, "viewBox"));

    auto g = (work_dir() / "guards.svg").string();
    auto square = write_file("unit.poly", "4\n0 0\n1 0\n1 1\n0 1\n");
    CHECK(run("render " + square.string() + " -o " + g +
              " --guard L,1/2,1/2 --guard R,1/4,1/4 --regions")
              .exit_code == 0);
    std::string two = slurp(g);
    CHECK(contains(two, "#2e5fb8"));
    CHECK(contains(two, "#b0392b"));

    auto st = (work_dir() / "stairs.poly").string();
    run("generate --family random-staircase --n 4 --seed 7 -o " + st);
    auto w = (work_dir() / "witness.svg").string();
    CHECK(run("render " + st + " -o " + w + " --alg staircase --witnesses").exit_code == 0);
    CHECK(contains(slurp(w), "circle"));
}

TEST_CASE("batch keeps spec order and records failures in row") {
    auto spec = write_file("sweep.txt",
                           "# comment line\n"
                           "random-staircase 3 1 staircase\n"
                           "random-spiral 2 5 spiral\n"
                           "random-spiral 2 5 lshape\n");
    auto csv = (work_dir() / "sweep.csv").string();
    CHECK(run("batch " + spec.string() + " --oracle -o " + csv).exit_code == 0);
    std::istringstream rows(slurp(csv));
    std::string line;
    REQUIRE(std::getline(rows, line));
    CHECK(line == "instance,class_flags,algorithm,guard_count,bound,opt,ratio,covered,"
                  "wall_time_secs,error");
    REQUIRE(std::getline(rows, line));
    CHECK(contains(line, "random-staircase-n3-s1"));
    CHECK(contains(line, "true"));
    REQUIRE(std::getline(rows, line));
    CHECK(contains(line, "random-spiral-n2-s5"));
    CHECK(contains(line, "true"));
    REQUIRE(std::getline(rows, line));
    CHECK(contains(line, "lshape"));
    CHECK(contains(line, "false"));
    CHECK(contains(line, "orthogonal polygon"));
    CHECK_FALSE(std::getline(rows, line));

    auto empty = write_file("empty.txt", "# nothing here\n");
    auto r = run("batch " + empty.string());
    CHECK(r.exit_code == 0);
    std::istringstream only(r.out);
    int count = 0;
    while (std::getline(only, line)) ++count;
    CHECK(count == 1);
}
