#include "doctest.h"

#include "grade3/cli.hpp"
#include "grade3/presentation.hpp"
#include "support.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;
using namespace grade3;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("grade3-cli-" + std::to_string(::getpid()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp_command(const std::string& cmd) {
    std::string text;
    std::array<char, 4096> buf{};
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (auto got = std::fread(buf.data(), 1, buf.size(), pipe)) text.append(buf.data(), got);
    ::pclose(pipe);
    return text;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("canonical then classify round trips") {
    TempDir dir;
    const auto path = dir.file("p.json");
    int cases = 0;
    for (const auto& c : testsupport::suite_labels()) {
        for (int m = 1; m <= 12; ++m) {
            for (int n = 1; n <= 10; ++n) {
                if (!canonical_fits(c, Format(m, n))) continue;
                const auto label = to_string(c);
                REQUIRE(run({"canonical", label, std::to_string(m), std::to_string(n), "-o", path}).code == 0);
                const auto res = run({"classify", path});
                CAPTURE(label);
                CHECK(res.code == 0);
                CHECK(contains(res.out, "class: " + label + "\n"));
                ++cases;
            }
        }
    }
    CHECK(cases > 1000);
}

TEST_CASE("link prints the linked class and format") {
    TempDir dir;
    const auto path = dir.file("ta.json");
    REQUIRE(run({"canonical", "T", "4", "3", "--arrangement", "T-A", "-o", path}).code == 0);
    const auto res = run({"link", path, "--t", "1"});
    CHECK(res.code == 0);
    CHECK(contains(res.out, "class: H(2,2)"));
    CHECK(contains(res.out, "format: (6,3)"));
    const auto linked = dir.file("linked.json");
    CHECK(run({"link", path, "--t", "2", "--phi2", "-o", linked}).code == 0);
    const auto again = run({"classify", linked});
    CHECK(contains(again.out, "class: B"));
}

TEST_CASE("exit codes") {
    const auto neg = run({"permissible", "T", "4", "4"});
    CHECK(neg.code == 1);
    CHECK(contains(neg.out, "T.m=4=>n-odd"));
    CHECK(run({"permissible", "T", "4", "5"}).code == 0);
    CHECK(run({"permissible", "H(0,3)", "8", "6"}).code == 2);
    CHECK(run({"permissible", "Q", "4", "4"}).code == 3);
    CHECK(run({"permissible", "T", "0", "4"}).code == 3);
    CHECK(run({"classify", "/nonexistent/file.json"}).code == 3);
    CHECK(run({"bogus"}).code == 3);
    CHECK(run({"realize", "T", "4", "4"}).code == 1);
    const auto bad = run({"canonical", "T", "2", "3"});
    CHECK(bad.code == 3);
    CHECK(bad.err.rfind("error: ", 0) == 0);
}

TEST_CASE("atlas marks exactly the boundary classes") {
    const auto res = run({"atlas", "8", "6"});
    CHECK(res.code == 0);
    std::istringstream lines(res.out);
    std::string line;
    std::vector<std::pair<int, int>> black;
    while (std::getline(lines, line)) {
        if (line.rfind("q=", 0) != 0) continue;
        const int q = std::stoi(line.substr(2));
        const auto bar = line.find('|');
        int p = 0;
        for (std::size_t i = bar + 1; i < line.size(); ++i) {
            if (line[i] == ' ') continue;
            if (line[i] == '#') black.emplace_back(p, q);
            ++p;
        }
    }
    std::sort(black.begin(), black.end());
    CHECK(black == std::vector<std::pair<int, int>>{{1, 4}, {3, 4}, {5, 0}, {5, 2}, {5, 4}});
    const auto csv = run({"atlas", "8", "6", "--csv"});
    CHECK(csv.code == 0);
    CHECK(contains(csv.out, "5,4,black,"));
}

TEST_CASE("realize and verify-cert") {
    TempDir dir;
    const auto path = dir.file("cert.json");
    const auto res = run({"realize", "B", "5", "2", "-o", path});
    CHECK(res.code == 0);
    CHECK(contains(res.out, "linkG-ii"));
    CHECK(contains(res.out, "linkT-iv"));
    const auto doc = Json::parse(std::ifstream(path));
    CHECK(doc["steps"].size() == 2);
    CHECK(run({"verify-cert", path}).code == 0);
    auto tampered = doc;
    tampered["target"]["format"] = "(5,3)";
    std::ofstream(dir.file("bad.json")) << tampered.dump();
    CHECK(run({"verify-cert", dir.file("bad.json")}).code == 1);
}

TEST_CASE("verify-theorems succeeds on a small window") {
    const auto res = run({"verify-theorems", "--max-m", "7", "--max-n", "5"});
    CHECK(res.code == 0);
}

TEST_CASE("binary output is byte-identical across runs") {
    const std::string bin = GRADE3_CLI_PATH;
    for (const std::string args : {"atlas 8 6", "atlas 9 7 --csv", "realize T 11 9", "permissible 'H(5,4)' 8 6",
                                   "verify-theorems --max-m 6 --max-n 4"}) {
        const auto cmd = bin + " " + args + " 2>&1";
        const auto first = slurp_command(cmd);
        CAPTURE(args);
        CHECK_FALSE(first.empty());
        CHECK(first == slurp_command(cmd));
        std::vector<std::string> argv;
        std::istringstream split(args);
        for (std::string w; split >> w;) {
            if (w.front() == '\'') w = w.substr(1, w.size() - 2);
            argv.push_back(w);
        }
        CHECK(run(argv).out == first);
    }
}

}
