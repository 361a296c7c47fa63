#include <doctest.h>

#include <random>

#include "nclmp/geometry.hpp"
#include "nclmp/motion.hpp"

using namespace nclmp;

TEST_CASE("robot conflict is open-interior overlap") {
    CHECK_FALSE(robots_conflict({0, 0}, {2, 0}));  // shared edge
    CHECK_FALSE(robots_conflict({0, 0}, {2, 2}));  // shared corner
    CHECK(robots_conflict({0, 0}, {1, 0}));        // half a unit apart
    CHECK(robots_conflict({0, 0}, {1, 1}));
    CHECK(robots_conflict({0, 0}, {0, 0}));
    CHECK_FALSE(robots_conflict({0, 0}, {-1, 2}));
}

TEST_CASE("swept rectangle is one by one and a half units") {
    for (Dir d : {Dir::N, Dir::E, Dir::S, Dir::W}) {
        Rect r = swept_rect({5, 5}, d);
        int w = r.x1 - r.x0, h = r.y1 - r.y0;
        CHECK(std::min(w, h) == 2);
        CHECK(std::max(w, h) == 3);
    }
    CHECK(swept_rect({5, 5}, Dir::E) == Rect{4, 4, 7, 6});
    CHECK(swept_rect({5, 5}, Dir::S) == Rect{4, 3, 6, 6});
}

TEST_CASE("directions") {
    for (Dir d : {Dir::N, Dir::E, Dir::S, Dir::W}) {
        CHECK(step(d) + step(opposite(d)) == Pt{0, 0});
        CHECK(parse_dir(dir_char(d)) == d);
    }
    CHECK_THROWS(parse_dir('x'));
}

TEST_CASE("polygon block coverage") {
    Polygon L{{{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 4}, {0, 4}}};
    CHECK(polygon_problem(L).empty());
    CHECK(polygon_covers_block(L, {0, 0}));
    CHECK(polygon_covers_block(L, {3, 1}));
    CHECK(polygon_covers_block(L, {1, 3}));
    CHECK_FALSE(polygon_covers_block(L, {3, 3}));
    CHECK_FALSE(polygon_covers_block(L, {4, 0}));
    CHECK_FALSE(polygon_covers_block(L, {-1, 0}));
    CHECK(polygon_problem({{{0, 0}, {1, 1}, {0, 1}, {1, 0}}}) == "edge not axis-parallel");
    CHECK(polygon_problem({{{0, 0}, {1, 0}, {1, 1}}}) == "fewer than 4 vertices");
}

TEST_CASE("blocks_to_rects covers exactly the blocked set") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        const int w = 1 + int(rng() % 9), h = 1 + int(rng() % 9);
        std::vector<std::uint8_t> bm(std::size_t(w) * h);
        for (auto& b : bm) b = rng() % 3 == 0;
        auto rects = blocks_to_rects(bm, -2, 5, w, h);
        std::vector<int> cover(bm.size(), 0);
        for (auto r : rects)
            for (int y = r.y0; y < r.y1; ++y)
                for (int x = r.x0; x < r.x1; ++x) {
                    REQUIRE(x + 2 >= 0);
                    REQUIRE(x + 2 < w);
                    REQUIRE(y - 5 >= 0);
                    REQUIRE(y - 5 < h);
                    cover[std::size_t(y - 5) * w + (x + 2)]++;
                }
        for (std::size_t i = 0; i < bm.size(); ++i) CHECK(cover[i] == bm[i]);
    }
}

TEST_CASE("free space and the penetration rule") {
    Instance inst;
    inst.bounds = {0, 0, 6, 6};
    inst.robot_count = 2;
    CHECK(is_free(inst, {{1, 1}, {3, 1}}));
    CHECK_FALSE(is_free(inst, {{1, 1}, {2, 1}}));
    CHECK_FALSE(is_free(inst, {{0, 1}, {3, 3}}));  // sticks out of the bounds

    inst.point_obstacles = {{3, 3}};
    inst.robot_count = 1;
    CHECK_FALSE(is_free(inst, {{3, 3}}));
    CHECK(is_free(inst, {{2, 2}}));  // the point sits on the corner
    CHECK(is_free(inst, {{4, 3}}));  // and here on the left edge
    CHECK(is_free(inst, {{4, 4}}));
}

TEST_CASE("lone robot in a 3x3 room") {
    Instance inst;
    inst.bounds = {0, 0, 6, 6};
    inst.robot_count = 1;
    // centre of the room: a half step is possible in every direction
    CHECK(legal_single_moves(inst, {{3, 3}}).size() == 4);
    // flush against the south-west corner
    auto m = legal_single_moves(inst, {{1, 1}});
    CHECK(m.size() == 2);
    for (auto mv : m) CHECK((mv.dir == Dir::N || mv.dir == Dir::E));
    CHECK_THROWS_AS(legal_single_moves(inst, {{0, 0}}), PreconditionError);
}

TEST_CASE("point obstacle on the swept boundary does not block") {
    Instance inst;
    inst.bounds = {0, 0, 10, 4};
    inst.robot_count = 1;
    inst.point_obstacles = {{5, 3}};  // the robot's top edge passes through it
    FreeSpace fs(inst);
    CHECK(sweep_clear(fs, {4, 2}, Dir::E));
    inst.point_obstacles = {{5, 2}};  // inside the swept area
    FreeSpace fs2(inst);
    CHECK_FALSE(sweep_clear(fs2, {4, 2}, Dir::E));
}
