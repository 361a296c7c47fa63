#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "nclmp/cli.hpp"
#include "nclmp/io.hpp"

using namespace nclmp;
namespace fs = std::filesystem;

namespace {

const std::string kData = NCLMP_TEST_DATA;

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "nclmp");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int code = cli_main(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

struct TempDir {
    fs::path p;
    TempDir() {
        p = fs::temp_directory_path() / ("nclmp_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
    }
    ~TempDir() { fs::remove_all(p); }
    std::string operator/(const std::string& f) const { return (p / f).string(); }
};

}  // namespace

TEST_CASE("f2f with identical orientations is YES") {
    auto r = run({"solve-ncl", "--problem", "f2f", kData + "/k4.ncl", kData + "/k4_s.orient", kData + "/k4_s.orient"});
    CHECK(r.code == 0);
    CHECK(r.out == "YES\n");
}

TEST_CASE("usage errors exit 2") {
    auto r = run({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    r = run({"validate", kData + "/k4.ncl", "--bogus"});
    CHECK(r.code == 2);
    r = run({"solve-mp", "--variant", "m2x", "x.inst"});
    CHECK(r.code == 2);
    r = run({"validate", kData + "/does_not_exist.ncl"});
    CHECK(r.code == 2);
    r = run({"solve-ncl", "--problem", "f2f", kData + "/k4.ncl", kData + "/k4_s.orient"});
    CHECK(r.code == 2);
    CHECK(r.err.find("orientation file") != std::string::npos);
}

TEST_CASE("validate") {
    TempDir tmp;
    auto r = run({"validate", kData + "/k4.ncl"});
    CHECK(r.code == 0);
    CHECK(r.out == "VALID\n");
    write_file(tmp / "bad.ncl", "format graph v1\nvertex a OR\nvertex b OR\nedge e1 a b 2\n");
    r = run({"validate", tmp / "bad.ncl"});
    CHECK(r.code == 1);
    CHECK(first_line(r.out) == "INVALID");
    write_file(tmp / "broken.ncl", "format graph v1\nvertex a\n");
    r = run({"validate", tmp / "broken.ncl"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("e2e pipeline matches the NCL answer") {
    TempDir tmp;
    const std::string g = kData + "/k4.ncl";
    REQUIRE(run({"embed", g, "-o", tmp / "k4.layout"}).code == 0);
    CHECK(run({"validate", g, "--layout", tmp / "k4.layout"}).out == "VALID\n");
    int yes = 0;
    for (auto [from, to] : {std::pair{"e1:b", "e1:a"}, std::pair{"e1:b", "e3:c"}, std::pair{"e5:c", "e6:b"}}) {
        auto ncl = run({"solve-ncl", "--problem", "e2e", g, "--from", from, "--to", to});
        REQUIRE(ncl.code == 0);
        auto red = run({"reduce", "--problem", "e2e", g, "--from", from, "--to", to, "--layout", tmp / "k4.layout", "-o",
                        tmp / "q.inst"});
        REQUIRE(red.code == 0);
        auto mp = run({"solve-mp", "--variant", "s2s", tmp / "q.inst", "--plan", tmp / "q.plan"});
        REQUIRE(mp.code == 0);
        CHECK(first_line(mp.out) == first_line(ncl.out));
        if (first_line(mp.out) == "YES") {
            ++yes;
            auto pd = parse_plan(read_file(tmp / "q.plan"));
            auto doc = parse_instance(read_file(tmp / "q.inst"));
            CHECK(replay_plan(doc.instance, pd.start, path_plan(pd)).has_value());
            auto fr = run({"render", tmp / "q.inst", "--plan", tmp / "q.plan", "--frames-dir", tmp / "frames"});
            CHECK(fr.code == 0);
            CHECK(fr.out == std::to_string(pd.moves.size() + 1) + " frames\n");
        }
    }
    CHECK(yes > 0);
}

TEST_CASE("f2f pipeline, labeled on an m2m file") {
    TempDir tmp;
    const std::string g = kData + "/k4.ncl";
    const std::string s = kData + "/k4_s.orient";
    REQUIRE(run({"reduce", "--problem", "f2f", g, s, s, "-o", tmp / "q.inst"}).code == 0);
    CHECK(run({"solve-mp", "--variant", "m2m", tmp / "q.inst"}).out.rfind("YES\n", 0) == 0);
    CHECK(run({"solve-mp", "--variant", "labeled", tmp / "q.inst"}).out.rfind("YES\n", 0) == 0);
    CHECK(run({"solve-mp", "--variant", "s2s", tmp / "q.inst"}).code == 2);
    auto svg = run({"render", tmp / "q.inst", "--config", "start"});
    CHECK(svg.code == 0);
    CHECK(svg.out.find("#e08a2c") != std::string::npos);  // edge robots
    CHECK(svg.out.find("#3f9a5b") != std::string::npos);  // vertex robots
}

TEST_CASE("f2e pipeline") {
    TempDir tmp;
    const std::string g = kData + "/k4.ncl";
    const std::string s = kData + "/k4_s.orient";
    for (std::string e : {"e1", "e5"}) {
        auto ncl = run({"solve-ncl", "--problem", "f2e", g, s, "--edge", e, "--witness", tmp / "w"});
        REQUIRE(ncl.code == 0);
        REQUIRE(run({"reduce", "--problem", "f2e", g, s, "--edge", e, "--restricted", "-o", tmp / "q.inst"}).code == 0);
        auto r = run({"solve-mp", "--variant", "m2sr", tmp / "q.inst"});
        auto u = run({"solve-mp", "--variant", "m2s", tmp / "q.inst"});
        CHECK(first_line(r.out) == first_line(ncl.out));
        CHECK(first_line(u.out) == first_line(ncl.out));
    }
}

TEST_CASE("crosscheck is deterministic for a fixed seed") {
    auto a = run({"crosscheck", "--trials", "6", "--seed", "7", kData + "/k4.ncl", "-v"});
    auto b = run({"crosscheck", "--trials", "6", "--seed", "7", kData + "/k4.ncl", "-v"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("cases 6 agree 6 disagree 0") != std::string::npos);
}

TEST_CASE("verify-gadgets") {
    auto r = run({"verify-gadgets"});
    CHECK(r.code == 0);
    CHECK(r.out.find("OR: ok") != std::string::npos);
}
