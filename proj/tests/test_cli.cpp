// Drives the installed slopekit-cli binary end to end: exit codes, JSON
// output determinism and scan-mode resumability.  The binary path arrives
// as the last command-line argument (wired up by the build).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

using nlohmann::json;

namespace {

std::string g_cli;

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the CLI through the shell, capturing stdout (or stderr on demand).
RunResult run(const std::string& args, bool capture_stderr = false) {
    const std::string cmd = g_cli + " " + args +
                            (capture_stderr ? " 2>&1 1>/dev/null" : " 2>/dev/null");
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    RunResult res;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) res.out.append(buf, n);
    const int st = pclose(f);
    res.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return res;
}

size_t line_count(const std::string& path) {
    std::ifstream in(path);
    size_t n = 0;
    std::string line;
    while (std::getline(in, line)) ++n;
    return n;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::string all, line;
    while (std::getline(in, line)) all += line + "\n";
    return all;
}

struct TempPath {
    std::string path;
    TempPath() {
        char tmpl[] = "/tmp/slopekit_cli_XXXXXX";
        const int fd = mkstemp(tmpl);
        REQUIRE(fd >= 0);
        close(fd);
        path = tmpl;
    }
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("check runs the worked example through the pipeline") {
    const RunResult r = run("--json check p=2 u=1 s=1 f=x^3");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["supersingular"] == true);
    CHECK(j["first_slope"] == "1/2");
    CHECK(j["L"] == json::array({"1", "0", "2"}));
    CHECK(j["ok"] == true);

    // The quoted single-argument form parses identically.
    const RunResult q = run("--json check 'p=2 u=1 s=1 f=x^3'");
    CHECK(q.code == 0);
    CHECK(q.out == r.out);

    // Global flags placed after the subcommand fall through to the app.
    const RunResult t = run("check p=2 u=1 s=1 f=x^3 --json");
    CHECK(t.code == 0);
    CHECK(t.out == r.out);
}

TEST_CASE("identical invocations emit byte-identical JSON") {
    const std::string args = "--json lpoly p=3 u=1 s=1 f=x^8";
    const RunResult a = run(args);
    const RunResult b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    // Human mode differs only on stderr; stdout carries the same document.
    const RunResult human = run("lpoly p=3 u=1 s=1 f=x^8");
    CHECK(human.out == a.out);
    const RunResult err = run("lpoly p=3 u=1 s=1 f=x^8", true);
    CHECK(err.out.find("elapsed") != std::string::npos);
}

TEST_CASE("exit codes separate usage errors from verdicts") {
    CHECK(run("bounds 2 1 1 15 0").code == 2);          // n = 0 is a usage error
    CHECK(run("bounds 2 1 1 15 7").code == 0);
    CHECK(run("tiling 10 1,3 2 --d 3").code == 0);
    CHECK(run("tiling 10 0,3 2").code == 2);
    CHECK(run("nonsense").code == 2);
    CHECK(run("--help").code == 0);
    CHECK(run("--version").code == 0);
    CHECK(run("check").code == 2);                      // missing curve

    const RunResult bad = run("check p=2 u=1 s=1 f=x^^3", true);
    CHECK(bad.code == 2);
    CHECK(bad.out.find("position") != std::string::npos);

    // Budget failures are usage-class, whether from the flag or environment.
    CHECK(run("--budget 2 lpoly p=2 u=1 s=1 f=x^9+x^5+x^3").code == 2);
    const std::string env_cmd = "env SLOPEKIT_BUDGET=2 " + g_cli +
                                " lpoly p=2 u=1 s=1 f=x^9+x^5+x^3 2>/dev/null";
    FILE* f = popen(env_cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[256];
    while (fread(buf, 1, sizeof buf, f) > 0) {}
    const int st = pclose(f);
    CHECK((WIFEXITED(st) ? WEXITSTATUS(st) : -1) == 2);
    // An explicit flag overrides the environment fallback.
    const std::string env_flag_cmd = "env SLOPEKIT_BUDGET=2 " + g_cli +
                                     " --budget 0 lpoly p=2 u=1 s=1 f=x^9+x^5+x^3 "
                                     "2>/dev/null >/dev/null";
    const int st2 = std::system(env_flag_cmd.c_str());
    CHECK((WIFEXITED(st2) ? WEXITSTATUS(st2) : -1) == 0);
}

TEST_CASE("examples and series-verify subcommands") {
    const RunResult ex = run("--json examples");
    REQUIRE(ex.code == 0);
    const json j = json::parse(ex.out);
    CHECK(j["examples"][0]["status"] == "PASS");
    CHECK(j["examples"][2]["status"] == "FLAG");

    const RunResult sv = run("--json series-verify rel");
    REQUIRE(sv.code == 0);
    CHECK(json::parse(sv.out)["ok"] == true);

    CHECK(run("series-verify bogus").code == 2);
}

TEST_CASE("newton exposes the non-supersingular slope") {
    const RunResult r = run("--json newton p=2 u=1 s=1 f=x^7");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["first_slope"] == "1/3");
    CHECK(j["supersingular"] == false);
}

TEST_CASE("scan writes keyed JSON lines and resumes cleanly") {
    TempPath tmp;
    const std::string args = "--json scan --family 'p=2 u=1 s=1 dmax=5' --seed 3 "
                             "--count 12 --jobs 3 --out " + tmp.path;
    const RunResult first = run(args);
    REQUIRE(first.code == 0);
    const json sum1 = json::parse(first.out);
    CHECK(sum1["planned"] == 12);
    CHECK(sum1["run"] == 12);
    CHECK(sum1["failures"] == 0);
    REQUIRE(line_count(tmp.path) == 12);

    std::ifstream in(tmp.path);
    std::string line;
    while (std::getline(in, line)) {
        const json rec = json::parse(line);
        REQUIRE(rec.contains("curve"));
        REQUIRE(rec.contains("record"));
        CHECK(rec["record"]["ok"] == true);
        CHECK(rec["record"]["curve"] == rec["curve"]);
    }

    // Rerunning a completed scan adds zero lines.
    const std::string before = read_file(tmp.path);
    const RunResult second = run(args);
    REQUIRE(second.code == 0);
    const json sum2 = json::parse(second.out);
    CHECK(sum2["skipped"] == 12);
    CHECK(sum2["run"] == 0);
    CHECK(line_count(tmp.path) == 12);
    CHECK(read_file(tmp.path) == before);

    // The same plan lands byte-identically in a fresh file even with
    // concurrent jobs: the writer serializes in plan order.
    TempPath tmp2;
    const RunResult fresh = run("--json scan --family 'p=2 u=1 s=1 dmax=5' --seed 3 "
                                "--count 12 --jobs 2 --out " + tmp2.path);
    REQUIRE(fresh.code == 0);
    CHECK(read_file(tmp2.path) == before);
}

int main(int argc, char** argv) {
    if (argc >= 2 && argv[argc - 1][0] != '-') {
        g_cli = argv[argc - 1];
        --argc;
    }
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli [doctest flags] <path-to-slopekit-cli>\n");
        return 1;
    }
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}
