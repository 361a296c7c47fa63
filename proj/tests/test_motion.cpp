#include <doctest.h>

#include <random>

#include "nclmp/motion.hpp"
#include "oracles.hpp"

using namespace nclmp;

namespace {

Instance corridor(int len_units, int robots) {
    Instance inst;
    inst.bounds = {0, 0, 2 * len_units, 2};
    inst.robot_count = robots;
    return inst;
}

}  // namespace

TEST_CASE("corridor swap") {
    auto inst = corridor(3, 2);
    MultiConfig S{{1, 1}, {5, 1}}, T{{5, 1}, {1, 1}};
    CHECK(solve_multi_to_multi(inst, S, T).yes);  // same set
    CHECK_FALSE(solve_labeled(inst, S, T, {0, 1}).yes);
    CHECK(solve_labeled(inst, S, S, {0, 1}).yes);
    CHECK_THROWS_AS(solve_labeled(inst, S, T, {0, 0}), ArgumentError);
    auto r = solve_multi_to_multi(inst, S, S);
    CHECK(r.yes);
    REQUIRE(r.plan);
    CHECK(r.plan->empty());
}

TEST_CASE("restricted differs from unlabeled when the tracked robot is boxed in") {
    // two robots in a 1-wide corridor; t is the far end, reachable only by
    // the robot nearer to it
    auto inst = corridor(4, 2);
    MultiConfig S{{1, 1}, {5, 1}};
    Pt t{7, 1};
    CHECK(solve_multi_to_single(inst, S, t).yes);
    CHECK(solve_multi_to_single_restricted(inst, S, {5, 1}, t).yes);
    CHECK_FALSE(solve_multi_to_single_restricted(inst, S, {1, 1}, t).yes);
    CHECK(solve_multi_to_single_restricted(inst, S, {1, 1}, {1, 1}).yes);
    CHECK_THROWS_AS(solve_multi_to_single_restricted(inst, S, {3, 1}, t), ArgumentError);
    CHECK_THROWS_AS(solve_multi_to_single(inst, S, {0, 0}), PreconditionError);
}

TEST_CASE("single robot: s2s is plain reachability") {
    Instance inst;
    inst.bounds = {0, 0, 8, 8};
    inst.robot_count = 1;
    inst.obstacles.push_back(rect_polygon({3, 0, 5, 8}));  // wall splitting the room
    CHECK(solve_single_to_single(inst, {1, 1}, {1, 7}).yes);
    CHECK_FALSE(solve_single_to_single(inst, {1, 1}, {7, 7}).yes);
    auto r = solve_single_to_single(inst, {2, 4}, {2, 4});
    CHECK(r.yes);
}

TEST_CASE("solvers match the brute-force oracle on random rooms") {
    std::mt19937_64 rng(5);
    int checked = 0, yes = 0, no = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto w = oracle::random_world(rng, 3);
        Instance inst = w.instance();
        oracle::MotionOracle orc(w);
        const auto& states = orc.unl.states;
        if (states.empty()) continue;
        auto cfg = [&](int k) {
            MultiConfig c;
            for (int i : states[k]) c.push_back(orc.unl.pos[i]);
            return c;
        };
        std::uniform_int_distribution<int> pick(0, int(states.size()) - 1);
        MultiConfig S = cfg(pick(rng)), T = cfg(pick(rng));
        std::shuffle(T.begin(), T.end(), rng);
        Pt t = orc.unl.pos[rng() % orc.unl.pos.size()];
        Pt s = S[rng() % S.size()];

        auto mm = solve_multi_to_multi(inst, S, T);
        CHECK(mm.yes == orc.m2m(S, T));
        if (mm.yes) CHECK(oracle::replays(w, S, *mm.plan));
        auto ms = solve_multi_to_single(inst, S, t);
        CHECK(ms.yes == orc.m2s(S, t));
        if (ms.yes) {
            auto end = replay_plan(inst, S, *ms.plan);
            REQUIRE(end);
            CHECK(std::count(end->begin(), end->end(), t) == 1);
        }
        auto mr = solve_multi_to_single_restricted(inst, S, s, t);
        CHECK(mr.yes == orc.m2sr(S, s, t));
        auto ss = solve_single_to_single(inst, s, t);
        CHECK(ss.yes == orc.s2s(s, t));
        std::vector<int> a(S.size());
        std::iota(a.begin(), a.end(), 0);
        std::shuffle(a.begin(), a.end(), rng);
        auto lb = solve_labeled(inst, S, T, a);
        CHECK(lb.yes == orc.labeled(S, T, a));
        if (lb.yes) {
            auto end = replay_plan(inst, S, *lb.plan);
            REQUIRE(end);
            for (std::size_t i = 0; i < S.size(); ++i) CHECK((*end)[i] == T[a[i]]);
        }
        ++checked;
        for (bool b : {mm.yes, ms.yes, mr.yes, ss.yes, lb.yes}) (b ? yes : no)++;
    }
    CHECK(checked >= 30);
    CHECK(yes > 0);
    CHECK(no > 0);
}

TEST_CASE("state cap turns into CapExceeded") {
    Instance inst;
    inst.bounds = {0, 0, 12, 12};
    inst.robot_count = 3;
    MultiConfig S{{1, 1}, {5, 1}, {9, 1}}, T{{11, 11}, {7, 11}, {3, 11}};
    MotionLimits lim;
    lim.max_states = 10;
    CHECK_THROWS_AS(solve_multi_to_multi(inst, S, T, lim), CapExceeded);
}

TEST_CASE("free_configs_containing lists every free configuration through p") {
    Instance inst;
    inst.bounds = {0, 0, 6, 4};
    inst.robot_count = 2;
    FreeSpace fs(inst);
    auto all = free_configs_containing(fs, {1, 1}, 1000);
    // the other robot: any fitting centre not overlapping (1,1)
    int expect = 0;
    for (int x = 1; x <= 5; ++x)
        for (int y = 1; y <= 3; ++y)
            if (!robots_conflict({x, y}, {1, 1})) ++expect;
    CHECK(int(all.size()) == expect);
    for (const auto& c : all) CHECK(std::count(c.begin(), c.end(), Pt{1, 1}) == 1);
    CHECK_THROWS_AS(free_configs_containing(fs, {1, 1}, 2), CapExceeded);
}
