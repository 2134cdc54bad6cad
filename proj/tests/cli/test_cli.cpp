// Runs the dik binary on the fixtures and compares against reviewed output.

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(DIK_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::map<std::string, std::string> files_in(const fs::path& dir) {
    std::map<std::string, std::string> out;
    if (!fs::exists(dir)) return out;
    for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
    return out;
}

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("dik_cli_" + std::to_string(::getpid()) + "_" + name);
    fs::remove_all(p);
    return p;
}

const std::string kNumbers =
    "--dataset fixtures/numbers.json --domain fixtures/numbers.domain.json "
    "--interpretation fixtures/numbers.interpretation.json --rules fixtures/numbers.rules";
const std::string kAdmin =
    "--dataset fixtures/admin.json --domain fixtures/admin.domain.json "
    "--interpretation fixtures/admin.interpretation.json --rules fixtures/admin.rules";

}  // namespace

TEST_CASE("golden reports") {
    for (auto [args, golden] : {std::pair{kNumbers, "numbers.txt"}, std::pair{kAdmin, "admin.txt"},
                                std::pair{std::string("--knowledge-base fixtures/knowledge_base.json"),
                                          "knowledge_base.txt"}}) {
        CAPTURE(golden);
        auto r = run(args);
        CHECK(r.code == 0);
        CHECK(r.out == slurp(fs::path("fixtures/golden") / golden));
    }
}

TEST_CASE("artifacts are deterministic and stage-prefixed") {
    const auto all = "--format text,structured,dot ";
    auto a = scratch("a"), b = scratch("b");
    REQUIRE(run(kNumbers + " --out " + a.string() + " " + all).code == 0);
    REQUIRE(run(kNumbers + " --out " + b.string() + " " + all).code == 0);
    auto full = files_in(a);
    CHECK(full.size() == 17);
    CHECK(full == files_in(b));

    for (int k = 1; k <= 6; ++k) {
        CAPTURE(k);
        auto d = scratch("s" + std::to_string(k));
        REQUIRE(run(kNumbers + " --stage " + std::to_string(k) + " --out " + d.string() + " " + all).code == 0);
        auto part = files_in(d);
        std::map<std::string, std::string> want;
        for (const auto& [name, body] : full)
            if (std::stoi(name.substr(0, 2)) <= k) want[name] = body;
        CHECK(part == want);
        fs::remove_all(d);
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("failures exit with the documented codes") {
    auto d = scratch("missing");
    auto r = run("--dataset fixtures/numbers.json --domain fixtures/no-such-domain.json "
                 "--interpretation fixtures/numbers.interpretation.json --out " + d.string());
    CHECK(r.code == 2);
    CHECK(files_in(d).empty());

    CHECK(run("--stage 9 --dataset fixtures/numbers.json").code == 2);
    CHECK(run("--stage 3 --dataset fixtures/numbers.json").code == 2);

    auto bad = scratch("bad.json");
    std::ofstream(bad) << R"({"elements": ["a", "b"], "topology": {"opens": [[], ["a"]]}})";
    auto t = run("--stage 1 --dataset " + bad.string());
    CHECK(t.code == 3);
    fs::remove(bad);
}

int main(int argc, char** argv) {
    fs::current_path(DIK_SOURCE_DIR);
    doctest::Context ctx(argc, argv);
    return ctx.run();
}
