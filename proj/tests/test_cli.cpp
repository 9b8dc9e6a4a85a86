#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Drives the installed binary end to end through a shell; CLI_BIN is injected
// by the build so the test does not guess at paths.

#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& pipe_in = "") {
    std::string cmd;
    if (!pipe_in.empty()) cmd += "printf '" + pipe_in + "' | ";
    cmd += std::string(CLI_BIN) + " " + args + " 2>/dev/null";
    if (pipe_in.empty()) cmd += " </dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult res;
    char buf[4096];
    for (std::size_t got; (got = fread(buf, 1, sizeof buf, p)) > 0;) res.out.append(buf, got);
    int rc = pclose(p);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

long count_lines_with(const std::string& text, const std::string& needle) {
    long n = 0;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

}  // namespace

TEST_CASE("solve prints one row per rule set and knows the spider escapes the original game") {
    RunResult one = run("solve --graph t_star --channel binary --movement must-move");
    CHECK(one.status == 0);
    CHECK(one.out.rfind("instance=t_star channel=binary movement=must-move outcome=mouse", 0) ==
          0);
    RunResult all = run("solve --graph star:3");
    CHECK(all.status == 0);
    CHECK(count_lines_with(all.out, "instance=star:3") == 20);
    CHECK(count_lines_with(all.out, "outcome=error") == 0);
}

TEST_CASE("simulate streams a trace that ends in a capture class") {
    RunResult res = run("simulate --graph path:5 --cat transition --mouse phantom-greedy");
    CHECK(res.status == 0);
    CHECK(count_lines_with(res.out, "class=0") == 1);
    CHECK(count_lines_with(res.out, "witness=") == 1);
    CHECK(count_lines_with(res.out, "outcome=cat-wins") == 1);
}

TEST_CASE("gen streams every labeled tree") {
    RunResult res = run("gen --n 4");
    CHECK(res.status == 0);
    CHECK(count_lines_with(res.out, "# tree ") == 16);
}

TEST_CASE("verify reports suites deterministically and signals failures by exit status") {
    RunResult a = run("verify seager-demo");
    RunResult b = run("verify seager-demo");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);  // byte-identical reports
    CHECK(a.out.rfind("suite=seager-demo n=10 instances=2 failures=0", 0) == 0);
    CHECK(run("verify nope").status != 0);
}

TEST_CASE("bad flags exit nonzero with no report") {
    CHECK(run("solve --graph bogus:xyz").status == 2);
    CHECK(run("simulate --graph path:4 --mouse cycle").status == 2);  // no cycle to ride
    CHECK(run("play --graph path:3 --cat transition --mouse phantom-greedy").status == 2);
}

TEST_CASE("a human cat camping the right vertex wins on an edge") {
    RunResult res = run("play --graph path:2 --cat human --mouse phantom-greedy", "0\\n0\\n");
    CHECK(res.status == 0);
    CHECK(count_lines_with(res.out, "capture in round 2") == 1);
}

TEST_CASE("ending input closes an interactive session gracefully") {
    RunResult res = run("play --graph path:3 --mouse human", "");
    CHECK(res.status == 0);
    CHECK(count_lines_with(res.out, "session closed") == 1);
}

TEST_CASE("an illegal human move is rejected with the legal set") {
    // place at 2, then try the illegal 0 before the forced legal 1
    RunResult res = run("play --graph path:3 --mouse human --cat transition", "2\\n0\\n1\\n");
    CHECK(res.status == 0);
    CHECK(count_lines_with(res.out, "illegal; legal moves: 1") == 1);
    CHECK(count_lines_with(res.out, "capture in round 2") == 1);
}
