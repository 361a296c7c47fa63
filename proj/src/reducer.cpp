#include "nclmp/reducer.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace nclmp {

Pt Workspace::origin(int v) const { return {kPitch * cell[v].x + kWall, kPitch * cell[v].y + kWall}; }

namespace {

Dir dir_between(Pt a, Pt b) {
    Pt d = b - a;
    if (d == Pt{1, 0}) return Dir::E;
    if (d == Pt{-1, 0}) return Dir::W;
    if (d == Pt{0, 1}) return Dir::N;
    if (d == Pt{0, -1}) return Dir::S;
    throw std::logic_error("build_workspace: H-edge endpoints are not adjacent cells");
}

}  // namespace

Workspace build_workspace(const GridEmbedding& emb) {
    const auto& H = emb.host;
    Workspace ws;
    ws.host = H;
    const int n = int(H.num_vertices());
    if (int(emb.layout.size()) != n) throw PreconditionError("build_workspace: layout size mismatch");
    int x0 = 0, y0 = 0, x1 = -1, y1 = -1;
    for (int v = 0; v < n; ++v) {
        Pt p = emb.layout[v];
        if (v == 0 || p.x < x0) x0 = p.x;
        if (v == 0 || p.y < y0) y0 = p.y;
        if (v == 0 || p.x > x1) x1 = p.x;
        if (v == 0 || p.y > y1) y1 = p.y;
    }
    ws.cols = n ? x1 - x0 + 1 : 0;
    ws.rows = n ? y1 - y0 + 1 : 0;
    for (int v = 0; v < n; ++v) ws.cell.push_back(emb.layout[v] - Pt{x0, y0});
    {
        std::set<Pt> seen(ws.cell.begin(), ws.cell.end());
        if (int(seen.size()) != n) throw PreconditionError("build_workspace: two H-vertices share a cell");
    }
    ws.edge_of_port.resize(n);
    for (int v = 0; v < n; ++v) {
        std::vector<PortSpec> spec;
        std::vector<std::pair<Dir, int>> side_edge;
        for (int e : H.incident(v)) {
            Dir d = dir_between(ws.cell[v], ws.cell[H.other_end(e, v)]);
            spec.push_back({d, H.edge(e).weight});
            side_edge.push_back({d, e});
        }
        Gadget g = make_gadget(H.vertex(v).kind, spec, 0);
        for (const auto& p : g.ports)
            for (auto [d, e] : side_edge)
                if (d == p.side) ws.edge_of_port[v].push_back(e);
        ws.gadgets.push_back(std::move(g));
    }

    const int W = kPitch * ws.cols + kWall, Ht = kPitch * ws.rows + kWall;
    Instance& inst = ws.instance;
    inst.bounds = {0, 0, W, Ht};
    std::vector<std::uint8_t> bm(std::size_t(W) * Ht, 1);
    for (int v = 0; v < n; ++v) {
        for (Pt b : ws.gadgets[v].free_blocks) {
            Pt gb = ws.to_global(v, b);
            if (gb.x < 0 || gb.y < 0 || gb.x >= W || gb.y >= Ht)
                throw std::logic_error("build_workspace: gadget leaves the workspace");
            bm[std::size_t(gb.y) * W + gb.x] = 0;
        }
        for (Pt p : ws.gadgets[v].points) inst.point_obstacles.push_back(ws.to_global(v, p));
    }
    std::sort(inst.point_obstacles.begin(), inst.point_obstacles.end());
    for (const auto& r : blocks_to_rects(bm, 0, 0, W, Ht)) inst.obstacles.push_back(rect_polygon(r));
    int robots = int(H.num_edges());
    for (const auto& g : ws.gadgets) robots += int(g.vertex_tracks.size());
    inst.robot_count = robots;
    return ws;
}

Provenance provenance_of(const Workspace& ws) {
    Provenance p;
    std::size_t m = 0;
    for (const auto& e : ws.edge_of_port)
        for (int x : e) m = std::max<std::size_t>(m, std::size_t(x) + 1);
    for (std::size_t e = 0; e < m; ++e) p.robots.push_back({true, int(e), -1, -1});
    for (int v = 0; v < int(ws.gadgets.size()); ++v)
        for (int k = 0; k < int(ws.gadgets[v].vertex_tracks.size()); ++k) p.robots.push_back({false, -1, v, k});
    return p;
}

std::vector<std::string> Provenance::lines(const ConstraintGraph& host) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < robots.size(); ++i) {
        const auto& r = robots[i];
        if (r.edge) out.push_back("robot " + std::to_string(i) + " = edge " + host.edge(r.h_edge).id);
        else
            out.push_back("robot " + std::to_string(i) + " = vertex " + host.vertex(r.h_vertex).id + " slot " +
                          std::to_string(r.slot));
    }
    return out;
}

Pt edge_slot(const Workspace& ws, int h_edge, int tail) {
    const auto& ports = ws.edge_of_port[tail];
    for (std::size_t k = 0; k < ports.size(); ++k)
        if (ports[k] == h_edge) return ws.to_global(tail, ws.gadgets[tail].ports[k].inside);
    throw ArgumentError("edge_slot: vertex is not an endpoint of the edge");
}

namespace {

std::vector<int> inside_bits(const Workspace& ws, const Orientation& o, int v) {
    const auto& H = ws.host;
    std::vector<int> bits;
    for (int e : ws.edge_of_port[v]) bits.push_back(o.tail(H, e) == v ? 1 : 0);
    return bits;
}

}  // namespace

MultiConfig orientation_to_multiconfig(const Workspace& ws, const Orientation& oH) {
    const auto& H = ws.host;
    if (oH.size() != H.num_edges()) throw ArgumentError("orientation_to_multiconfig: orientation size mismatch");
    if (!orientation_is_valid(H, oH)) throw PreconditionError("orientation_to_multiconfig: orientation is not valid on H");
    MultiConfig c;
    for (int e = 0; e < int(H.num_edges()); ++e) c.push_back(edge_slot(ws, e, oH.tail(H, e)));
    for (int v = 0; v < int(H.num_vertices()); ++v)
        for (Pt p : canonical_vertex_positions(ws.gadgets[v], inside_bits(ws, oH, v))) c.push_back(ws.to_global(v, p));
    return c;
}

Orientation multiconfig_to_orientation(const Workspace& ws, const MultiConfig& c) {
    const auto& H = ws.host;
    std::set<Pt> occ(c.begin(), c.end());
    if (occ.size() != c.size()) throw ArgumentError("multiconfig_to_orientation: two robots share a position");
    std::set<Pt> known;
    for (int v = 0; v < int(H.num_vertices()); ++v) {
        for (const auto& t : ws.gadgets[v].vertex_tracks)
            for (Pt p : t) known.insert(ws.to_global(v, p));
        for (const auto& p : ws.gadgets[v].ports) known.insert(ws.to_global(v, p.inside));
    }
    for (Pt p : c)
        if (!known.count(p))
            throw ArgumentError("multiconfig_to_orientation: robot at (" + std::to_string(p.x) + "," +
                                std::to_string(p.y) + ") is not at a terminal configuration");
    Orientation o(H.num_edges());
    for (int e = 0; e < int(H.num_edges()); ++e) {
        const auto& ed = H.edge(e);
        bool at_u = occ.count(edge_slot(ws, e, ed.u)) > 0;  // robot penetrates u: u is the tail
        bool at_v = occ.count(edge_slot(ws, e, ed.v)) > 0;
        if (at_u == at_v)
            throw ArgumentError("multiconfig_to_orientation: edge " + ed.id + " has " + (at_u ? "two robots" : "no robot") +
                                " in its doorway");
        o.set_head(H, e, at_u ? ed.v : ed.u);
    }
    return o;
}

NclProblem parse_problem(const std::string& s) {
    if (s == "f2f") return NclProblem::F2F;
    if (s == "f2e") return NclProblem::F2E;
    if (s == "e2e") return NclProblem::E2E;
    throw ArgumentError("unknown problem '" + s + "' (f2f|f2e|e2e)");
}

std::string problem_name(NclProblem p) {
    switch (p) {
        case NclProblem::F2F: return "f2f";
        case NclProblem::F2E: return "f2e";
        case NclProblem::E2E: return "e2e";
    }
    return "?";
}

std::string variant_tag(Variant v) {
    switch (v) {
        case Variant::M2M: return "m2m";
        case Variant::M2S: return "m2s";
        case Variant::M2SR: return "m2sr";
        case Variant::S2S: return "s2s";
        case Variant::Labeled: return "labeled";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    if (s == "m2m") return Variant::M2M;
    if (s == "m2s") return Variant::M2S;
    if (s == "m2sr") return Variant::M2SR;
    if (s == "s2s") return Variant::S2S;
    if (s == "labeled") return Variant::Labeled;
    throw FormatError("unknown question variant '" + s + "'");
}

int designated_h_edge(const GridEmbedding& emb, int g_edge) { return emb.path_edges.at(g_edge).front(); }

namespace {

// Tail of the designated H-edge when the G-edge points at `head`.
int designated_tail(const ConstraintGraph& g, const GridEmbedding& emb, int g_edge, int head) {
    const auto& ed = g.edge(g_edge);
    const auto& p = emb.path.at(g_edge);
    if (head == ed.v) return p[0];
    if (head == ed.u) return p[1];
    throw ArgumentError("reduce: direction vertex is not an endpoint of the edge");
}

int other_tail(const ConstraintGraph& H, int h_edge, int tail) { return H.other_end(h_edge, tail); }

}  // namespace

ReductionOutput reduce(const ConstraintGraph& g, const GridEmbedding& emb, const ReduceParams& params, bool restricted,
                       bool labeled) {
    ReductionOutput out;
    out.workspace = build_workspace(emb);
    out.provenance = provenance_of(out.workspace);
    const auto& ws = out.workspace;
    const auto& H = ws.host;
    auto& q = out.question;
    if (const auto* f = std::get_if<F2FParams>(&params)) {
        q.variant = labeled ? Variant::Labeled : Variant::M2M;
        q.start = orientation_to_multiconfig(ws, lift_orientation(emb, g, f->start));
        q.target = orientation_to_multiconfig(ws, lift_orientation(emb, g, f->target));
        if (labeled)
            for (int i = 0; i < int(q.start.size()); ++i) q.assignment.push_back(i);
    } else if (const auto* f = std::get_if<F2EParams>(&params)) {
        if (f->edge < 0 || f->edge >= int(g.num_edges())) throw ArgumentError("reduce: edge index out of range");
        q.variant = restricted ? Variant::M2SR : Variant::M2S;
        Orientation oH = lift_orientation(emb, g, f->start);
        q.start = orientation_to_multiconfig(ws, oH);
        int he = designated_h_edge(emb, f->edge);
        int tail = oH.tail(H, he);
        q.s = edge_slot(ws, he, tail);
        q.t = edge_slot(ws, he, other_tail(H, he, tail));
    } else {
        const auto& ep = std::get<E2EParams>(params);
        q.variant = Variant::S2S;
        for (const EdgeDir* ed : {&ep.from, &ep.to})
            if (ed->edge < 0 || ed->edge >= int(g.num_edges())) throw ArgumentError("reduce: edge index out of range");
        int h1 = designated_h_edge(emb, ep.from.edge), h2 = designated_h_edge(emb, ep.to.edge);
        q.s = edge_slot(ws, h1, designated_tail(g, emb, ep.from.edge, ep.from.head));
        q.t = edge_slot(ws, h2, designated_tail(g, emb, ep.to.edge, ep.to.head));
    }
    return out;
}

}  // namespace nclmp
