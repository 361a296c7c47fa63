#include <doctest.h>

#include "nclmp/embed.hpp"
#include "nclmp/generate.hpp"
#include "nclmp/io.hpp"

using namespace nclmp;

namespace {

ConstraintGraph k33() {
    std::vector<Vertex> vs;
    for (const char* id : {"a", "b", "c", "x", "y", "z"}) vs.push_back({id, VertexKind::OR, -1});
    std::vector<EdgeSpec> es;
    int k = 0;
    for (const char* u : {"a", "b", "c"})
        for (const char* v : {"x", "y", "z"}) es.push_back({"e" + std::to_string(++k), u, v, 2});
    return ConstraintGraph(vs, es);
}

}  // namespace

TEST_CASE("seeded graphs embed cleanly") {
    Rng rng(21);
    for (int t = 0; t < 25; ++t) {
        const int n = 4 + 2 * (t % 8);
        auto g = random_constraint_graph(rng, n);
        auto emb = embed(g);
        auto rep = check_embedding(g, emb);
        for (const auto& v : rep.violations) INFO(v);
        CHECK(rep.ok());
        // G's vertices come first in H
        for (int v = 0; v < int(g.num_vertices()); ++v) CHECK(emb.host.vertex(v).id == g.vertex(v).id);
        CHECK(emb.host.num_vertices() == g.num_vertices() + emb.connectors.size());
    }
}

TEST_CASE("project after lift is the identity") {
    Rng rng(4);
    for (int t = 0; t < 8; ++t) {
        auto g = random_constraint_graph(rng, t % 2 ? 6 : 4);
        auto emb = embed(g);
        for (const auto& o : enumerate_valid_orientations(g)) {
            auto oH = lift_orientation(emb, g, o);
            CHECK(orientation_is_valid(emb.host, oH));
            auto p = project_orientation(emb, g, oH);
            CHECK_FALSE(p.any_mixed());
            CHECK(p.orientation == o);
        }
    }
}

TEST_CASE("a half-flipped path projects as mixed") {
    Rng rng(9);
    auto g = random_constraint_graph(rng, 6);
    auto emb = embed(g);
    auto valid = enumerate_valid_orientations(g);
    REQUIRE_FALSE(valid.empty());
    auto oH = lift_orientation(emb, g, valid[0]);
    int ge = -1;
    for (int e = 0; e < int(g.num_edges()); ++e)
        if (emb.path_edges[e].size() > 1) ge = e;
    REQUIRE(ge >= 0);
    oH.flip(emb.path_edges[ge].front());
    auto p = project_orientation(emb, g, oH);
    CHECK(p.any_mixed());
    CHECK(p.mixed[ge]);
}

TEST_CASE("embedding preconditions") {
    CHECK_THROWS_AS(embed(k33()), PlanarityError);
    ConstraintGraph conn({{"a", VertexKind::CONNECTOR, -1}, {"b", VertexKind::CONNECTOR, -1}},
                         {{"e1", "a", "b", 2}, {"e2", "b", "a", 2}});
    CHECK_THROWS_AS(embed(conn), ArgumentError);
    ConstraintGraph bad({{"a", VertexKind::OR, -1}, {"b", VertexKind::OR, -1}}, {{"e1", "a", "b", 2}});
    CHECK_THROWS_AS(embed(bad), PreconditionError);
}

TEST_CASE("layout round trip rebuilds the same embedding") {
    Rng rng(13);
    auto g = random_constraint_graph(rng, 8);
    auto emb = embed(g);
    auto doc = parse_layout(serialize_layout(layout_of(g, emb)));
    auto back = embedding_from_layout(g, doc);
    CHECK(check_embedding(g, back).ok());
    CHECK(back.layout == emb.layout);
    CHECK(back.path == emb.path);
}

TEST_CASE("check_embedding notices a moved vertex") {
    Rng rng(2);
    auto g = random_constraint_graph(rng, 6);
    auto emb = embed(g);
    emb.layout[0] = emb.layout[1];
    CHECK_FALSE(check_embedding(g, emb).ok());
}
