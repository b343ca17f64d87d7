// Drives the built CLI binary end to end through a shell; checks exit codes
// and the documented one-line outputs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = "./qhp " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (fgets(buf.data(), buf.size(), p)) out += buf.data();
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("catalog list counts 39 rows") {
    auto r = run("catalog list");
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 39);
}

TEST_CASE("catalog show") {
    auto r = run("catalog show F2_n1-cusp");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"index\": 17") != std::string::npos);
    auto r2 = run("catalog show 17");
    CHECK(r2.out == r.out);
    auto bad = run("catalog show nonsense");
    CHECK(bad.code == 1);
}

TEST_CASE("h1 on the worked example") {
    auto r = run("h1 --row F2_n1-cusp --centers C1,C2 --weights 1");
    CHECK(r.code == 0);
    CHECK(r.out == "h1=5\n");
    auto r6 = run("h1 --row F2_n1-cusp --centers C1,C2 --weights 6");
    CHECK(r6.code == 0);
    CHECK(r6.out.find("not a Q-homology plane") != std::string::npos);
}

TEST_CASE("aut orders on row 17 boundaries") {
    auto r = run("aut --row 17 --centers C1,C2 --weights 1");
    CHECK(r.code == 0);
    CHECK(r.out == "order 6\n");
    auto r2 = run("aut --row 17 --centers C1,E_q --weights 1");
    CHECK(r2.out == "order 2\n");
    auto r3 = run("aut --row 17 --centers C2,E_q --weights 4/3");
    CHECK(r3.out == "order 2\n");
    // sporadic small weights where an inserted chain tip mirrors an existing
    // (-2)-twig pick up an extra involution
    auto r4 = run("aut --row 17 --centers C2,E_q --weights 2");
    CHECK(r4.out == "order 4\n");
}

TEST_CASE("detm symbolic") {
    auto r = run("detm --row 17 --centers C1,C2 --symbolic");
    CHECK(r.code == 0);
    CHECK(r.out == "u1 - 6*w1\n");
}

TEST_CASE("zhp search") {
    auto r = run("zhp --row 17 --center C1,C2 --h1 1 --count 4");
    CHECK(r.code == 0);
    CHECK(r.out == "5/1\n7/1\n11/2\n13/2\n");
    auto imp = run("zhp --row 17 --center C2,E_q --h1 1 --count 4");
    CHECK(imp.code == 0);
    CHECK(imp.out.find("impossible") != std::string::npos);
}

TEST_CASE("pipeline: build, expand, check round trip") {
    REQUIRE(run("build --row 17 --out /tmp/qhp_cli_d.json").code == 0);
    REQUIRE(run("expand --state /tmp/qhp_cli_d.json --center C1,C2 --weight 1 "
                "--out /tmp/qhp_cli_e.json --records /tmp/qhp_cli_r.json")
                .code == 0);
    auto chk = run("check --state /tmp/qhp_cli_e.json --base /tmp/qhp_cli_d.json "
                   "--records /tmp/qhp_cli_r.json");
    CHECK(chk.code == 0);
    CHECK(chk.out.find("\"h1\": \"5\"") != std::string::npos);
    CHECK(chk.out.find("\"is_qhp\": true") != std::string::npos);
}

TEST_CASE("resolve and graph commands") {
    // write a tiny arrangement, resolve it, run diagram/bounds on the output
    {
        std::ofstream f("/tmp/qhp_cli_arr.json");
        f << R"({"components":[{"id":"L1","degree":1},{"id":"L2","degree":1},)"
          << R"({"id":"L3","degree":1}],)"
          << R"("points":[{"id":"p","branches":["L1","L2","L3"]}]})";
    }
    auto r = run("resolve --arrangement /tmp/qhp_cli_arr.json --out /tmp/qhp_cli_res.json "
                 "--dot /tmp/qhp_cli_res.dot");
    CHECK(r.code == 0);
    auto d = run("diagram --graph /tmp/qhp_cli_res.json --en");
    CHECK(d.code == 0);
    auto b = run("bounds --graph /tmp/qhp_cli_res.json");
    CHECK(b.code == 0);
    CHECK(b.out.find("\"all_ok\": true") != std::string::npos);
    // DOT deterministic across runs
    auto r2 = run("resolve --arrangement /tmp/qhp_cli_arr.json --dot /tmp/qhp_cli_res2.dot");
    CHECK(r2.code == 0);
    std::ifstream f1("/tmp/qhp_cli_res.dot"), f2("/tmp/qhp_cli_res2.dot");
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);

    // invalid arrangement: exit 1 with a one-line reason
    {
        std::ofstream f("/tmp/qhp_cli_bad.json");
        f << R"({"components":[{"id":"L1","degree":1},{"id":"L2","degree":1}],)"
          << R"("points":[{"id":"p","branches":["L1","L2"]},)"
          << R"({"id":"q","branches":["L1","L2"]}]})";
    }
    auto bad = run("resolve --arrangement /tmp/qhp_cli_bad.json");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("error:") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    auto r = run("frobnicate");
    CHECK(r.code == 2);
    auto r2 = run("h1 --weights 1"); // missing required --row
    CHECK(r2.code == 2);
}

TEST_CASE("malformed weight exits 1") {
    auto r = run("h1 --row 17 --centers C1,C2 --weights 0");
    CHECK(r.code == 1);
    auto r2 = run("h1 --row 17 --centers C1,C2 --weights x/y");
    CHECK(r2.code == 1);
}

TEST_CASE("enumerate with h1 filter") {
    auto r = run("enumerate --row 17 --max-height 8 --h1 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("(C1,C2)@5/1") != std::string::npos);
    CHECK(r.out.find("(C1,C2)@7/1") != std::string::npos);
    CHECK(r.out.find("h1=1") != std::string::npos);
}

TEST_CASE("h1 without centers runs the direct criterion") {
    auto r1 = run("h1 --row 1");
    CHECK(r1.code == 0);
    CHECK(r1.out == "h1=7\n");
    // rows with centers are not QHPs before expanding
    auto r17 = run("h1 --row 17");
    CHECK(r17.code == 0);
    CHECK(r17.out.find("not a Q-homology plane") != std::string::npos);
}

TEST_CASE("json mode") {
    auto r = run("--json h1 --row 17 --centers C2,E_q --weights 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"h1\": \"16\"") != std::string::npos);
}
