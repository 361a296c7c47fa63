#include "nclmp/embed.hpp"

#include <algorithm>
#include <list>
#include <map>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/property_map/property_map.hpp>

namespace nclmp {

namespace {

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                     boost::property<boost::vertex_index_t, int>,
                                     boost::property<boost::edge_index_t, int>>;

// Cyclic order of incident G-edges around each vertex.
std::vector<std::vector<int>> planar_rotation(const ConstraintGraph& g) {
    BGraph bg(g.num_vertices());
    for (int e = 0; e < int(g.num_edges()); ++e) boost::add_edge(g.edge(e).u, g.edge(e).v, e, bg);
    using EDesc = boost::graph_traits<BGraph>::edge_descriptor;
    std::vector<std::vector<EDesc>> storage(g.num_vertices());
    auto emb = boost::make_iterator_property_map(storage.begin(), boost::get(boost::vertex_index, bg));
    if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                             boost::boyer_myrvold_params::embedding = emb))
        throw PlanarityError("graph is not planar");
    std::vector<std::vector<int>> rot(g.num_vertices());
    for (std::size_t v = 0; v < storage.size(); ++v)
        for (auto ed : storage[v]) rot[v].push_back(boost::get(boost::edge_index, bg, ed));
    return rot;
}

// st-numbering by Tarjan's DFS list construction; also rejects graphs with
// a cut vertex. Returns vertices in st order.
std::vector<int> st_order(const ConstraintGraph& g, int s, int t_edge) {
    const int n = int(g.num_vertices());
    const int t = g.other_end(t_edge, s);
    std::vector<int> pre(n, -1), parent(n, -1), low(n), order;
    order.reserve(n);
    int counter = 0;
    // iterative DFS; s's first child is t
    struct Frame {
        int v;
        std::size_t next;
        std::vector<int> edges;
    };
    auto edges_of = [&](int v) {
        std::vector<int> es = g.incident(v);
        if (v == s) {
            std::stable_partition(es.begin(), es.end(), [&](int e) { return e == t_edge; });
        }
        return es;
    };
    std::vector<Frame> st;
    pre[s] = counter++;
    low[s] = s;
    order.push_back(s);
    st.push_back({s, 0, edges_of(s)});
    int root_children = 0;
    bool cut = false;
    while (!st.empty()) {
        auto& f = st.back();
        if (f.next < f.edges.size()) {
            int e = f.edges[f.next++];
            int w = g.other_end(e, f.v);
            if (pre[w] < 0) {
                parent[w] = f.v;
                pre[w] = counter++;
                low[w] = w;
                order.push_back(w);
                if (f.v == s) ++root_children;
                st.push_back({w, 0, edges_of(w)});
            } else if (w != parent[f.v] && pre[w] < pre[low[f.v]]) {
                low[f.v] = w;
            }
        } else {
            int v = f.v;
            st.pop_back();
            if (!st.empty()) {
                int p = st.back().v;
                if (pre[low[v]] < pre[low[p]]) low[p] = low[v];
                if (p != s && pre[low[v]] >= pre[p]) cut = true;
            }
        }
    }
    if (counter != n) throw PreconditionError("embed: graph is not connected");
    if (cut || root_children > 1) throw PreconditionError("embed: graph is not biconnected");

    std::list<int> L{s, t};
    std::vector<std::list<int>::iterator> where(n);
    where[s] = L.begin();
    where[t] = std::next(L.begin());
    std::vector<int> sign(n, 0);  // -1 / +1
    sign[s] = -1;
    for (int v : order) {
        if (v == s || v == t) continue;
        int p = parent[v];
        if (sign[low[v]] == -1) {
            where[v] = L.insert(where[p], v);
            sign[p] = +1;
        } else {
            where[v] = L.insert(std::next(where[p]), v);
            sign[p] = -1;
        }
    }
    return {L.begin(), L.end()};
}

struct Drawing {
    std::vector<Pt> vpos;                       // per G-vertex
    std::vector<std::vector<Pt>> polyline;      // per G-edge, from lower to higher st vertex
    std::vector<bool> forward;                  // polyline runs from edge.u to edge.v
    bool ok = true;
};

// Incremental orthogonal drawing, one row per vertex in st order. Open
// edges keep their own column; new columns are inserted next to the
// current vertex's column.
Drawing draw(const ConstraintGraph& g, const std::vector<int>& ord, const std::vector<std::vector<int>>& rot,
             int st_edge) {
    const int n = int(g.num_vertices()), m = int(g.num_edges());
    std::vector<int> num(n);
    for (int i = 0; i < n; ++i) num[ord[i]] = i;
    std::list<int> cols;  // column ids, left to right
    std::vector<std::list<int>::iterator> col_it;
    auto new_col = [&](std::list<int>::iterator before) {
        int id = int(col_it.size());
        col_it.push_back(cols.insert(before, id));
        return id;
    };
    std::list<int> open;  // open G-edges, left to right
    std::vector<std::list<int>::iterator> open_it(m);
    std::vector<int> ecol(m, -1);
    std::vector<int> vcol(n, -1);
    struct Raw {
        int c0, r0, c1, r1, c2, r2, c3, r3;
    };
    std::vector<Raw> raw(m);
    Drawing d;

    // position of e in v's cyclic rotation
    auto rpos = [&](int v, int e) {
        const auto& r = rot[v];
        return int(std::find(r.begin(), r.end(), e) - r.begin());
    };
    for (int i = 0; i < n; ++i) {
        const int v = ord[i];
        const auto& r = rot[v];
        const int deg = int(r.size());
        std::vector<int> ins;
        for (int e : g.incident(v))
            if (num[g.other_end(e, v)] < i) ins.push_back(e);
        // left-to-right order of in-edges as they sit in the open list
        std::sort(ins.begin(), ins.end(), [&](int a, int b) {
            for (auto it = open.begin(); it != open.end(); ++it) {
                if (*it == a) return true;
                if (*it == b) return false;
            }
            return false;
        });
        // contiguity of the in-edge block
        if (!ins.empty()) {
            auto it = open_it[ins[0]];
            for (std::size_t k = 1; k < ins.size(); ++k) {
                ++it;
                if (it == open.end() || *it != ins[k]) {
                    d.ok = false;
                    return d;
                }
            }
        }
        // outs in left-to-right order, read from the rotation: in ccw order
        // the in-edges run left to right, then the outs right to left
        std::vector<int> outs;
        int startpos;
        if (ins.empty()) startpos = (rpos(v, st_edge) + 1) % deg;
        else {
            for (std::size_t k = 0; k + 1 < ins.size(); ++k)
                if ((rpos(v, ins[k]) + 1) % deg != rpos(v, ins[k + 1])) {
                    d.ok = false;
                    return d;
                }
            startpos = (rpos(v, ins.back()) + 1) % deg;
        }
        for (int k = 0; k < deg - int(ins.size()); ++k) outs.push_back(r[(startpos + k) % deg]);
        std::reverse(outs.begin(), outs.end());
        for (int e : outs)
            if (num[g.other_end(e, v)] < i) {
                d.ok = false;
                return d;
            }
        if (v == ord.back() && (ins.empty() || ins.front() != st_edge)) {
            d.ok = false;
            return d;
        }

        // place v
        int c;
        std::list<int>::iterator pos;  // insertion point in the open list
        if (ins.empty()) {
            c = new_col(cols.end());
            pos = open.end();
        } else {
            c = ecol[ins.size() == 3 ? ins[1] : ins[0]];
            pos = std::next(open_it[ins.back()]);
        }
        vcol[v] = c;
        for (int e : ins) {
            raw[e].c2 = ecol[e];
            raw[e].r2 = i;
            raw[e].c3 = c;
            raw[e].r3 = i;
            open.erase(open_it[e]);
        }
        // out columns
        std::vector<int> oc(outs.size());
        if (outs.size() == 3) {
            oc[0] = new_col(col_it[c]);
            oc[1] = c;
            oc[2] = new_col(std::next(col_it[c]));
        } else if (outs.size() == 2) {
            oc[0] = new_col(col_it[c]);
            oc[1] = c;
        } else if (outs.size() == 1) {
            oc[0] = c;
        }
        for (std::size_t k = 0; k < outs.size(); ++k) {
            int e = outs[k];
            ecol[e] = oc[k];
            raw[e].c0 = c;
            raw[e].r0 = i;
            raw[e].c1 = oc[k];
            raw[e].r1 = i;
            open_it[e] = open.insert(pos, e);
        }
    }
    std::vector<int> x(col_it.size());
    {
        int k = 0;
        for (int id : cols) x[id] = k++;
    }
    d.vpos.resize(n);
    for (int v = 0; v < n; ++v) d.vpos[v] = {x[vcol[v]], num[v]};
    d.polyline.resize(m);
    d.forward.resize(m);
    for (int e = 0; e < m; ++e) {
        const auto& q = raw[e];
        std::vector<Pt> pts{{x[q.c0], q.r0}, {x[q.c1], q.r1}, {x[q.c2], q.r2}, {x[q.c3], q.r3}};
        std::vector<Pt> unit{pts[0]};
        for (std::size_t k = 1; k < pts.size(); ++k) {
            Pt a = unit.back(), b = pts[k];
            while (a != b) {
                a = {a.x + (b.x > a.x) - (b.x < a.x), a.y + (b.y > a.y) - (b.y < a.y)};
                unit.push_back(a);
            }
        }
        d.polyline[e] = unit;
        d.forward[e] = num[g.edge(e).u] < num[g.edge(e).v];
    }
    return d;
}

void check_input(const ConstraintGraph& g) {
    for (const auto& v : g.vertices())
        if (v.kind == VertexKind::CONNECTOR) throw ArgumentError("embed: input has connector vertex " + v.id);
    auto rep = validate_graph(g);
    if (!rep.ok()) throw PreconditionError("embed: invalid graph: " + rep.violations.front());
}

std::string connector_id(const std::string& e, int k) { return "c." + e + "." + std::to_string(k); }

// Builds H from per-edge point paths (u .. v) and connector names.
GridEmbedding build_host(const ConstraintGraph& g, const std::vector<std::vector<Pt>>& pts,
                         const std::vector<std::vector<std::string>>& names, const std::vector<Pt>& vpos) {
    GridEmbedding emb;
    std::vector<Vertex> hv = g.vertices();
    emb.layout = vpos;
    std::vector<EdgeSpec> he;
    std::vector<std::vector<std::string>> pe(g.num_edges());
    emb.path.resize(g.num_edges());
    for (int e = 0; e < int(g.num_edges()); ++e) {
        const auto& ed = g.edge(e);
        std::vector<std::string> ids{g.vertex(ed.u).id};
        for (std::size_t k = 1; k + 1 < pts[e].size(); ++k) {
            hv.push_back({names[e][k], VertexKind::CONNECTOR, ed.weight});
            emb.layout.push_back(pts[e][k]);
            ids.push_back(names[e][k]);
        }
        ids.push_back(g.vertex(ed.v).id);
        for (std::size_t k = 0; k + 1 < ids.size(); ++k) he.push_back({ed.id + "." + std::to_string(k), ids[k], ids[k + 1], ed.weight});
        pe[e] = ids;
        pe[e].push_back("|");
        for (std::size_t k = 0; k + 1 < ids.size(); ++k) pe[e].push_back(ed.id + "." + std::to_string(k));
    }
    emb.path_edges.resize(g.num_edges());
    emb.host = ConstraintGraph(std::move(hv), he);
    for (int e = 0; e < int(g.num_edges()); ++e) {
        auto bar = std::find(pe[e].begin(), pe[e].end(), "|");
        emb.path[e].clear();
        for (auto it = pe[e].begin(); it != bar; ++it) emb.path[e].push_back(emb.host.vertex_index(*it));
        emb.path_edges[e].clear();
        for (auto it = std::next(bar); it != pe[e].end(); ++it) emb.path_edges[e].push_back(emb.host.edge_index(*it));
    }
    for (int v = int(g.num_vertices()); v < int(emb.host.num_vertices()); ++v) emb.connectors.push_back(v);
    return emb;
}

}  // namespace

GridEmbedding embed(const ConstraintGraph& g) {
    check_input(g);
    auto rot = planar_rotation(g);
    const int s = 0;
    const int st_edge = g.incident(s).front();
    auto ord = st_order(g, s, st_edge);
    Drawing d = draw(g, ord, rot, st_edge);
    if (!d.ok) {
        for (auto& r : rot) std::reverse(r.begin(), r.end());
        d = draw(g, ord, rot, st_edge);
    }
    if (!d.ok) throw std::logic_error("embed: rotation system inconsistent with the st-order");
    std::vector<std::vector<Pt>> pts(g.num_edges());
    std::vector<std::vector<std::string>> names(g.num_edges());
    std::set<std::string> taken;
    for (const auto& v : g.vertices()) taken.insert(v.id);
    for (int e = 0; e < int(g.num_edges()); ++e) {
        pts[e] = d.polyline[e];
        if (!d.forward[e]) std::reverse(pts[e].begin(), pts[e].end());
        names[e].assign(pts[e].size(), "");
        for (std::size_t k = 1; k + 1 < pts[e].size(); ++k) {
            std::string id = connector_id(g.edge(e).id, int(k));
            while (taken.count(id)) id += "'";
            taken.insert(id);
            names[e][k] = id;
        }
    }
    return build_host(g, pts, names, d.vpos);
}

ValidationReport check_embedding(const ConstraintGraph& g, const GridEmbedding& emb) {
    ValidationReport r;
    auto add = [&](std::string s) { r.violations.push_back(std::move(s)); };
    const auto& H = emb.host;
    if (H.num_vertices() != emb.layout.size()) {
        add("layout: size differs from vertex count");
        return r;
    }
    if (emb.path.size() != g.num_edges() || emb.path_edges.size() != g.num_edges()) {
        add("paths: one path per G-edge expected");
        return r;
    }
    for (const auto& v : validate_graph(H).violations) add("host: " + v);
    for (int v = 0; v < int(g.num_vertices()); ++v) {
        if (v >= int(H.num_vertices()) || H.vertex(v).id != g.vertex(v).id || H.vertex(v).kind != g.vertex(v).kind ||
            H.vertex(v).min_flow != g.vertex(v).min_flow)
            add("vertex " + g.vertex(v).id + ": kind or capacity changed in H");
    }
    // distinct grid points
    std::map<Pt, int> at;
    for (int v = 0; v < int(H.num_vertices()); ++v) {
        auto [it, fresh] = at.emplace(emb.layout[v], v);
        if (!fresh) add("noncrossing: vertices " + H.vertex(it->second).id + " and " + H.vertex(v).id + " share a grid point");
    }
    std::set<std::pair<Pt, Pt>> segs;
    for (const auto& e : H.edges()) {
        Pt a = emb.layout[e.u], b = emb.layout[e.v];
        int dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
        if (dx + dy != 1) add("edge " + e.id + ": endpoints are not unit grid neighbours");
        if (!segs.insert(std::minmax(a, b)).second) add("edge " + e.id + ": overlaps another edge");
    }
    // paths
    std::vector<int> owner_v(H.num_vertices(), -1), owner_e(H.num_edges(), -1);
    for (int e = 0; e < int(g.num_edges()); ++e) {
        const auto& ge = g.edge(e);
        const auto& p = emb.path[e];
        const auto& pe = emb.path_edges[e];
        const std::string who = "path " + ge.id;
        if (p.size() < 2 || pe.size() + 1 != p.size()) {
            add(who + ": malformed");
            continue;
        }
        if (p.front() != ge.u || p.back() != ge.v) add(who + ": does not join the endpoints of its edge");
        for (std::size_t k = 0; k < pe.size(); ++k) {
            if (pe[k] < 0 || pe[k] >= int(H.num_edges())) {
                add(who + ": unknown H-edge");
                continue;
            }
            const auto& he = H.edge(pe[k]);
            if (!((he.u == p[k] && he.v == p[k + 1]) || (he.v == p[k] && he.u == p[k + 1])))
                add(who + ": H-edge " + he.id + " does not join consecutive path vertices");
            if (he.weight != ge.weight) add("capacity: H-edge " + he.id + " weight differs from its path weight");
            if (owner_e[pe[k]] >= 0) add(who + ": H-edge " + he.id + " shared with another path");
            owner_e[pe[k]] = e;
        }
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            int u = p[k];
            if (u < int(g.num_vertices())) {
                add(who + ": passes through original vertex " + H.vertex(u).id);
                continue;
            }
            if (owner_v[u] >= 0) add("noncrossing: paths " + g.edge(owner_v[u]).id + " and " + ge.id + " share vertex " + H.vertex(u).id);
            owner_v[u] = e;
            if (H.vertex(u).kind != VertexKind::CONNECTOR) add(who + ": interior vertex is not a connector");
            if (H.vertex(u).min_flow != ge.weight) add("capacity: connector " + H.vertex(u).id + " min_flow differs from path weight");
        }
    }
    for (int v = int(g.num_vertices()); v < int(H.num_vertices()); ++v)
        if (owner_v[v] < 0) add("connector " + H.vertex(v).id + " lies on no path");
    for (int e = 0; e < int(H.num_edges()); ++e)
        if (owner_e[e] < 0) add("H-edge " + H.edge(e).id + " lies on no path");
    // contraction gives G back (up to edge ids)
    {
        std::multiset<std::tuple<int, int, int>> a, b;
        for (const auto& e : g.edges()) a.insert({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
        for (int e = 0; e < int(g.num_edges()); ++e) {
            const auto& p = emb.path[e];
            if (p.size() >= 2) b.insert({std::min(p.front(), p.back()), std::max(p.front(), p.back()), g.edge(e).weight});
        }
        if (a != b) add("contraction: paths do not reproduce the graph");
    }
    // area
    if (!emb.layout.empty()) {
        int x0 = emb.layout[0].x, x1 = x0, y0 = emb.layout[0].y, y1 = y0;
        for (Pt p : emb.layout) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
        long area = long(x1 - x0 + 1) * (y1 - y0 + 1);
        long n = long(g.num_vertices());
        if (area > kAreaFactor * n * n) add("area: " + std::to_string(area) + " exceeds " + std::to_string(kAreaFactor) + "|V|^2");
    }
    return r;
}

Orientation lift_orientation(const GridEmbedding& emb, const ConstraintGraph& g, const Orientation& oG) {
    if (!orientation_is_valid(g, oG)) throw PreconditionError("lift_orientation: orientation is not valid on G");
    Orientation oH(emb.host.num_edges());
    for (int e = 0; e < int(g.num_edges()); ++e) {
        // path edges are stored from u towards v; follow the path so each
        // H-edge points the same way as the G-edge
        const auto& p = emb.path[e];
        for (std::size_t k = 0; k < emb.path_edges[e].size(); ++k) {
            int he = emb.path_edges[e][k];
            int head = oG.reversed(e) ? p[k] : p[k + 1];
            oH.set_head(emb.host, he, head);
        }
    }
    return oH;
}

bool Projection::any_mixed() const { return std::find(mixed.begin(), mixed.end(), true) != mixed.end(); }

Projection project_orientation(const GridEmbedding& emb, const ConstraintGraph& g, const Orientation& oH) {
    if (oH.size() != emb.host.num_edges()) throw ArgumentError("project_orientation: orientation size mismatch");
    Projection pr{Orientation(g.num_edges()), std::vector<bool>(g.num_edges(), false)};
    for (int e = 0; e < int(g.num_edges()); ++e) {
        const auto& p = emb.path[e];
        const auto& pe = emb.path_edges[e];
        auto toward_v = [&](std::size_t k) { return oH.head(emb.host, pe[k]) == p[k + 1]; };
        const bool first = toward_v(0);
        pr.orientation.set_reversed(e, !first);
        for (std::size_t k = 1; k < pe.size(); ++k)
            if (toward_v(k) != first) pr.mixed[e] = true;
    }
    return pr;
}

GridEmbedding embedding_from_layout(const ConstraintGraph& g, const LayoutDoc& doc) {
    std::map<std::string, Pt> place;
    for (const auto& [id, p] : doc.places)
        if (!place.emplace(id, p).second) throw FormatError("layout: vertex " + id + " placed twice");
    std::vector<std::vector<Pt>> pts(g.num_edges());
    std::vector<std::vector<std::string>> names(g.num_edges());
    std::vector<bool> have(g.num_edges(), false);
    for (const auto& [eid, ids] : doc.paths) {
        int e = g.edge_index(eid);
        if (e < 0) throw FormatError("layout: path for unknown edge " + eid);
        if (have[e]) throw FormatError("layout: edge " + eid + " has two paths");
        have[e] = true;
        std::vector<std::string> v = ids;
        if (v.size() < 2) throw FormatError("layout: path " + eid + " is too short");
        const auto& ed = g.edge(e);
        if (v.front() == g.vertex(ed.v).id && v.back() == g.vertex(ed.u).id) std::reverse(v.begin(), v.end());
        if (v.front() != g.vertex(ed.u).id || v.back() != g.vertex(ed.v).id)
            throw FormatError("layout: path " + eid + " does not join its endpoints");
        for (const auto& id : v) {
            auto it = place.find(id);
            if (it == place.end()) throw FormatError("layout: vertex " + id + " has no place");
            pts[e].push_back(it->second);
        }
        names[e] = v;
    }
    for (int e = 0; e < int(g.num_edges()); ++e)
        if (!have[e]) throw FormatError("layout: no path for edge " + g.edge(e).id);
    std::vector<Pt> vpos;
    for (const auto& v : g.vertices()) {
        auto it = place.find(v.id);
        if (it == place.end()) throw FormatError("layout: vertex " + v.id + " has no place");
        vpos.push_back(it->second);
    }
    return build_host(g, pts, names, vpos);
}

LayoutDoc layout_of(const ConstraintGraph& g, const GridEmbedding& emb) {
    LayoutDoc doc;
    for (int v = 0; v < int(emb.host.num_vertices()); ++v) doc.places.push_back({emb.host.vertex(v).id, emb.layout[v]});
    for (int e = 0; e < int(g.num_edges()); ++e) {
        std::vector<std::string> ids;
        for (int v : emb.path[e]) ids.push_back(emb.host.vertex(v).id);
        doc.paths.push_back({g.edge(e).id, ids});
    }
    return doc;
}

}  // namespace nclmp
