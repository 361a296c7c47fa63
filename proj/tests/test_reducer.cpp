#include <doctest.h>

#include <random>
#include <set>

#include "nclmp/generate.hpp"
#include "nclmp/reducer.hpp"

using namespace nclmp;

namespace {

// Random graphs often admit no valid orientation at all; skip those.
ConstraintGraph orientable(Rng& rng, int n) {
    for (;;) {
        auto g = random_constraint_graph(rng, n);
        if (!enumerate_valid_orientations(g).empty()) return g;
    }
}

}  // namespace

TEST_CASE("orientation to configuration and back") {
    Rng rng(31);
    for (int t = 0; t < 6; ++t) {
        auto g = orientable(rng, t % 2 ? 6 : 4);
        auto emb = embed(g);
        auto ws = build_workspace(emb);
        const auto& H = ws.host;
        int seen = 0;
        for (const auto& o : enumerate_valid_orientations(g)) {
            auto oH = lift_orientation(emb, g, o);
            auto c = orientation_to_multiconfig(ws, oH);
            CHECK(int(c.size()) == ws.instance.robot_count);
            CHECK(is_free(ws.instance, c));
            CHECK(multiconfig_to_orientation(ws, c) == oH);
            // positions only: order does not matter
            std::shuffle(c.begin(), c.end(), rng);
            CHECK(multiconfig_to_orientation(ws, c) == oH);
            // each edge robot sits in the doorway of its tail gadget
            for (int e = 0; e < int(H.num_edges()); ++e)
                CHECK(std::count(c.begin(), c.end(), edge_slot(ws, e, oH.tail(H, e))) == 1);
            if (++seen == 6) break;
        }
    }
}

TEST_CASE("non-terminal configurations are rejected") {
    Rng rng(1);
    auto g = orientable(rng, 4);
    auto emb = embed(g);
    auto ws = build_workspace(emb);
    auto valid = enumerate_valid_orientations(g);
    REQUIRE_FALSE(valid.empty());
    auto c = orientation_to_multiconfig(ws, lift_orientation(emb, g, valid[0]));
    auto moved = c;
    moved[0] = moved[0] + Pt{0, 100};
    CHECK_THROWS_AS(multiconfig_to_orientation(ws, moved), ArgumentError);
    auto dup = c;
    dup[1] = dup[0];
    CHECK_THROWS_AS(multiconfig_to_orientation(ws, dup), ArgumentError);
}

TEST_CASE("workspace layout and provenance") {
    Rng rng(8);
    auto g = orientable(rng, 6);
    auto emb = embed(g);
    auto ws = build_workspace(emb);
    const auto& H = ws.host;
    CHECK(ws.instance.bounds == Rect{0, 0, kPitch * ws.cols + kWall, kPitch * ws.rows + kWall});
    std::set<Pt> cells(ws.cell.begin(), ws.cell.end());
    CHECK(cells.size() == H.num_vertices());
    for (int v = 0; v < int(H.num_vertices()); ++v) {
        CHECK(ws.origin(v) == Pt{kPitch * ws.cell[v].x + 1, kPitch * ws.cell[v].y + 1});
        CHECK(ws.gadgets[v].kind == H.vertex(v).kind);
        CHECK(ws.gadgets[v].ports.size() == H.incident(v).size());
    }
    auto prov = provenance_of(ws);
    CHECK(int(prov.robots.size()) == ws.instance.robot_count);
    auto lines = prov.lines(H);
    REQUIRE(lines.size() == prov.robots.size());
    CHECK(lines[0] == "robot 0 = edge " + H.edge(0).id);
    CHECK(lines.back().find(" slot ") != std::string::npos);
    int edges = 0;
    for (const auto& r : prov.robots) edges += r.edge;
    CHECK(edges == int(H.num_edges()));
}

TEST_CASE("question shapes") {
    Rng rng(17);
    auto g = orientable(rng, 6);
    auto emb = embed(g);
    auto valid = enumerate_valid_orientations(g);
    REQUIRE(valid.size() >= 1);
    const auto& o = valid.back();

    auto f = reduce(g, emb, F2FParams{o, valid.front()});
    CHECK(f.question.variant == Variant::M2M);
    CHECK(f.question.start.size() == f.question.target.size());
    auto fl = reduce(g, emb, F2FParams{o, valid.front()}, false, true);
    CHECK(fl.question.variant == Variant::Labeled);
    CHECK(fl.question.assignment.size() == fl.question.start.size());
    CHECK(fl.question.start == f.question.start);

    auto fe = reduce(g, emb, F2EParams{o, 0});
    CHECK(fe.question.variant == Variant::M2S);
    CHECK(std::count(fe.question.start.begin(), fe.question.start.end(), fe.question.s) == 1);
    CHECK(std::count(fe.question.start.begin(), fe.question.start.end(), fe.question.t) == 0);
    auto fr = reduce(g, emb, F2EParams{o, 0}, true);
    CHECK(fr.question.variant == Variant::M2SR);
    CHECK(fr.question.s == fe.question.s);

    const auto& e0 = g.edge(0);
    auto ee = reduce(g, emb, E2EParams{{0, e0.v}, {0, e0.u}});
    CHECK(ee.question.variant == Variant::S2S);
    // same designated robot, opposite doorway slots
    const int he = designated_h_edge(emb, 0);
    auto ends = std::set<Pt>{edge_slot(ee.workspace, he, ee.workspace.host.edge(he).u),
                             edge_slot(ee.workspace, he, ee.workspace.host.edge(he).v)};
    CHECK(ends == std::set<Pt>{ee.question.s, ee.question.t});
    CHECK_THROWS_AS(reduce(g, emb, E2EParams{{0, e0.v}, {0, -5}}), ArgumentError);
    CHECK_THROWS_AS(reduce(g, emb, F2EParams{o, 99}), ArgumentError);
}

TEST_CASE("problem and variant names") {
    for (auto p : {NclProblem::F2F, NclProblem::F2E, NclProblem::E2E}) CHECK(parse_problem(problem_name(p)) == p);
    for (auto v : {Variant::M2M, Variant::M2S, Variant::M2SR, Variant::S2S, Variant::Labeled})
        CHECK(parse_variant(variant_tag(v)) == v);
    CHECK_THROWS(parse_variant("m2x"));
    CHECK_THROWS(parse_problem("e2f"));
}
