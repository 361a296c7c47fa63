#include "nclmp/ncl.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nclmp/state_store.hpp"

namespace nclmp {

const char* kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::AND: return "AND";
        case VertexKind::OR: return "OR";
        case VertexKind::CONNECTOR: return "CONNECTOR";
    }
    return "?";
}

VertexKind parse_kind(const std::string& s) {
    if (s == "AND") return VertexKind::AND;
    if (s == "OR") return VertexKind::OR;
    if (s == "CONNECTOR") return VertexKind::CONNECTOR;
    throw FormatError("unknown vertex kind '" + s + "'");
}

int default_min_flow(VertexKind k, int connector_weight) {
    return k == VertexKind::CONNECTOR ? connector_weight : 2;
}

ConstraintGraph::ConstraintGraph(std::vector<Vertex> vertices, const std::vector<EdgeSpec>& edges)
    : vertices_(std::move(vertices)) {
    for (int i = 0; i < int(vertices_.size()); ++i) {
        if (!vindex_.emplace(vertices_[i].id, i).second)
            throw FormatError("duplicate vertex id '" + vertices_[i].id + "'");
    }
    std::vector<EdgeSpec> sorted = edges;
    std::sort(sorted.begin(), sorted.end(),
              [](const EdgeSpec& a, const EdgeSpec& b) { return natural_less(a.id, b.id); });
    incident_.assign(vertices_.size(), {});
    for (const auto& es : sorted) {
        if (!eindex_.emplace(es.id, int(edges_.size())).second)
            throw FormatError("duplicate edge id '" + es.id + "'");
        int u = vertex_index(es.u), v = vertex_index(es.v);
        if (u < 0 || v < 0)
            throw ArgumentError("edge '" + es.id + "' names unknown vertex '" + (u < 0 ? es.u : es.v) + "'");
        edges_.push_back({es.id, u, v, es.weight});
        incident_[u].push_back(int(edges_.size()) - 1);
        if (v != u) incident_[v].push_back(int(edges_.size()) - 1);
    }
    // connector default capacity follows its path weight
    for (int i = 0; i < int(vertices_.size()); ++i) {
        auto& vx = vertices_[i];
        if (vx.min_flow >= 0) continue;
        int w = incident_[i].empty() ? 2 : edges_[incident_[i].front()].weight;
        vx.min_flow = default_min_flow(vx.kind, w);
    }
}

int ConstraintGraph::vertex_index(const std::string& id) const {
    auto it = vindex_.find(id);
    return it == vindex_.end() ? -1 : it->second;
}

int ConstraintGraph::edge_index(const std::string& id) const {
    auto it = eindex_.find(id);
    return it == eindex_.end() ? -1 : it->second;
}

ValidationReport validate_graph(const ConstraintGraph& g) {
    ValidationReport r;
    auto add = [&](std::string s) { r.violations.push_back(std::move(s)); };
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.edges()) {
        if (e.u == e.v) add("edge " + e.id + ": self-loop");
        if (e.weight != 1 && e.weight != 2) add("edge " + e.id + ": weight " + std::to_string(e.weight) + " not in {1,2}");
        auto key = std::minmax(e.u, e.v);
        if (e.u != e.v && !seen.insert({key.first, key.second}).second) add("edge " + e.id + ": parallel edge");
    }
    for (int i = 0; i < int(g.num_vertices()); ++i) {
        const auto& v = g.vertex(i);
        const auto& inc = g.incident(i);
        std::multiset<int> ws;
        for (int e : inc) ws.insert(g.edge(e).weight);
        const std::string who = std::string(kind_name(v.kind)) + " vertex " + v.id;
        switch (v.kind) {
            case VertexKind::AND:
                if (inc.size() != 3) add(who + ": degree " + std::to_string(inc.size()) + " != 3");
                else if (ws != std::multiset<int>{1, 1, 2}) add(who + ": weight multiset is not {2,1,1}");
                if (v.min_flow != 2) add(who + ": min_flow " + std::to_string(v.min_flow) + " != 2");
                break;
            case VertexKind::OR:
                if (inc.size() != 3) add(who + ": degree " + std::to_string(inc.size()) + " != 3");
                else if (ws != std::multiset<int>{2, 2, 2}) add(who + ": weight multiset is not {2,2,2}");
                if (v.min_flow != 2) add(who + ": min_flow " + std::to_string(v.min_flow) + " != 2");
                break;
            case VertexKind::CONNECTOR:
                if (inc.size() != 2) {
                    add(who + ": degree " + std::to_string(inc.size()) + " != 2");
                } else {
                    int w0 = g.edge(inc[0]).weight, w1 = g.edge(inc[1]).weight;
                    if (w0 != w1) add(who + ": incident weights differ");
                    else if (v.min_flow != w0) add(who + ": min_flow " + std::to_string(v.min_flow) + " != path weight");
                }
                break;
        }
    }
    return r;
}

void Orientation::set_head(const ConstraintGraph& g, int e, int vertex) {
    const auto& ed = g.edge(e);
    if (vertex == ed.v) set_reversed(e, false);
    else if (vertex == ed.u) set_reversed(e, true);
    else throw ArgumentError("vertex is not an endpoint of edge " + ed.id);
}

std::vector<std::uint64_t> Orientation::pack() const {
    std::vector<std::uint64_t> w((rev_.size() + 63) / 64 + (rev_.empty() ? 1 : 0), 0);
    for (std::size_t i = 0; i < rev_.size(); ++i)
        if (rev_[i]) w[i / 64] |= std::uint64_t(1) << (i % 64);
    return w;
}

Orientation Orientation::unpack(const std::uint64_t* words, std::size_t n) {
    Orientation o(n);
    for (std::size_t i = 0; i < n; ++i) o.rev_[i] = (words[i / 64] >> (i % 64)) & 1;
    return o;
}

int inflow(const ConstraintGraph& g, const Orientation& o, int v) {
    int s = 0;
    for (int e : g.incident(v))
        if (o.head(g, e) == v) s += g.edge(e).weight;
    return s;
}

static void check_size(const ConstraintGraph& g, const Orientation& o) {
    if (o.size() != g.num_edges())
        throw ArgumentError("orientation covers " + std::to_string(o.size()) + " edges, graph has " +
                            std::to_string(g.num_edges()));
}

bool orientation_is_valid(const ConstraintGraph& g, const Orientation& o) {
    check_size(g, o);
    for (int v = 0; v < int(g.num_vertices()); ++v)
        if (inflow(g, o, v) < g.vertex(v).min_flow) return false;
    return true;
}

namespace {

// Move test on a valid orientation: reversing e only lowers the inflow of
// its current head.
bool can_reverse(const ConstraintGraph& g, const Orientation& o, int e) {
    int h = o.head(g, e);
    return inflow(g, o, h) - g.edge(e).weight >= g.vertex(h).min_flow;
}

struct Bfs {
    const ConstraintGraph& g;
    StateStore store;
    std::size_t n;
    std::size_t cap;

    Bfs(const ConstraintGraph& gr, std::size_t c)
        : g(gr), store((gr.num_edges() + 63) / 64 + (gr.num_edges() == 0 ? 1 : 0)), n(gr.num_edges()), cap(c) {}

    std::uint32_t add_root(const Orientation& o) {
        auto w = o.pack();
        return store.insert(w.data(), StateStore::kNone, 0).first;
    }

    // Runs BFS from the stored roots; returns the index of the first state
    // meeting goal, or kNone.
    template <class Goal>
    std::uint32_t run(Goal goal) {
        for (std::uint32_t i = 0; i < store.size(); ++i)
            if (goal(i)) return i;
        std::vector<std::uint64_t> buf(store.words());
        for (std::uint32_t i = 0; i < store.size(); ++i) {
            auto span = store.get(i);
            Orientation o = Orientation::unpack(span.data(), n);
            for (int e = 0; e < int(n); ++e) {
                if (!can_reverse(g, o, e)) continue;
                std::copy(span.begin(), span.end(), buf.begin());
                buf[e / 64] ^= std::uint64_t(1) << (e % 64);
                auto [j, fresh] = store.insert(buf.data(), i, std::uint32_t(e));
                if (!fresh) continue;
                if (store.size() > cap) throw CapExceeded("NCL state cap exceeded", cap);
                if (goal(j)) return j;
                span = store.get(i);  // arena may have moved
            }
        }
        return StateStore::kNone;
    }

    bool bit(std::uint32_t i, int e) const { return (store.get(i)[e / 64] >> (e % 64)) & 1; }
};

}  // namespace

std::vector<int> legal_moves(const ConstraintGraph& g, const Orientation& o) {
    if (!orientation_is_valid(g, o)) throw PreconditionError("legal_moves: orientation is not valid");
    std::vector<int> out;
    for (int e = 0; e < int(g.num_edges()); ++e)
        if (can_reverse(g, o, e)) out.push_back(e);
    return out;
}

NclResult solve_full_to_full(const ConstraintGraph& g, const Orientation& oS, const Orientation& oT,
                             const NclLimits& lim) {
    if (!orientation_is_valid(g, oS) || !orientation_is_valid(g, oT))
        throw PreconditionError("solve_full_to_full: input orientation is not valid");
    Bfs bfs(g, lim.max_states);
    bfs.add_root(oS);
    auto target = oT.pack();
    auto hit = bfs.run([&](std::uint32_t i) {
        auto s = bfs.store.get(i);
        return std::equal(s.begin(), s.end(), target.begin());
    });
    if (hit == StateStore::kNone) return {false, std::nullopt};
    auto tr = bfs.store.trace(hit);
    return {true, MoveWitness(tr.begin(), tr.end())};
}

NclResult solve_full_to_edge(const ConstraintGraph& g, const Orientation& oS, int edge, const NclLimits& lim) {
    if (edge < 0 || edge >= int(g.num_edges())) throw ArgumentError("solve_full_to_edge: unknown edge");
    if (!orientation_is_valid(g, oS)) throw PreconditionError("solve_full_to_edge: oS is not valid");
    Bfs bfs(g, lim.max_states);
    bfs.add_root(oS);
    const bool start = oS.reversed(edge);
    auto hit = bfs.run([&](std::uint32_t i) { return bfs.bit(i, edge) != start; });
    if (hit == StateStore::kNone) return {false, std::nullopt};
    auto tr = bfs.store.trace(hit);
    return {true, MoveWitness(tr.begin(), tr.end())};
}

EdgeToEdgeResult solve_edge_to_edge(const ConstraintGraph& g, int e1, int head1, int e2, int head2,
                                    const NclLimits& lim) {
    const int m = int(g.num_edges());
    if (e1 < 0 || e1 >= m || e2 < 0 || e2 >= m) throw ArgumentError("solve_edge_to_edge: unknown edge");
    auto endpoint = [&](int e, int h) {
        if (h != g.edge(e).u && h != g.edge(e).v) throw ArgumentError("solve_edge_to_edge: head is not an endpoint");
    };
    endpoint(e1, head1);
    endpoint(e2, head2);
    const bool want1 = head1 != g.edge(e1).v, want2 = head2 != g.edge(e2).v;
    Bfs bfs(g, lim.max_states);
    for_each_valid_orientation(
        g, [&](const Orientation& o) {
            if (o.reversed(e1) == want1) bfs.add_root(o);
        },
        lim.enum_cap);
    EdgeToEdgeResult r;
    if (bfs.store.size() == 0) return r;
    auto hit = bfs.run([&](std::uint32_t i) { return bfs.bit(i, e2) == want2; });
    if (hit == StateStore::kNone) return r;
    std::uint32_t root = 0;
    auto tr = bfs.store.trace(hit, &root);
    r.yes = true;
    r.start = Orientation::unpack(bfs.store.get(root).data(), m);
    r.witness.assign(tr.begin(), tr.end());
    return r;
}

void for_each_valid_orientation(const ConstraintGraph& g, const std::function<void(const Orientation&)>& f,
                                std::size_t cap) {
    const int m = int(g.num_edges());
    if (std::size_t(m) > cap)
        throw CapExceeded("enumeration cap exceeded: graph has " + std::to_string(m) + " edges, cap is " +
                              std::to_string(cap),
                          cap);
    const int n = int(g.num_vertices());
    // remaining[v]: weight of still-unassigned incident edges
    std::vector<int> in(n, 0), remaining(n, 0);
    for (const auto& e : g.edges()) {
        remaining[e.u] += e.weight;
        if (e.v != e.u) remaining[e.v] += e.weight;
    }
    for (int v = 0; v < n; ++v)
        if (remaining[v] < g.vertex(v).min_flow) return;
    Orientation o(m);
    auto ok = [&](int v) { return in[v] + remaining[v] >= g.vertex(v).min_flow; };
    std::function<void(int)> rec = [&](int i) {
        if (i == m) {
            f(o);
            return;
        }
        const auto& e = g.edge(i);
        remaining[e.u] -= e.weight;
        if (e.v != e.u) remaining[e.v] -= e.weight;
        for (int r = 0; r < 2; ++r) {
            int h = r ? e.u : e.v;
            o.set_reversed(i, r);
            in[h] += e.weight;
            if (ok(e.u) && ok(e.v)) rec(i + 1);
            in[h] -= e.weight;
        }
        remaining[e.u] += e.weight;
        if (e.v != e.u) remaining[e.v] += e.weight;
        o.set_reversed(i, false);
    };
    rec(0);
}

std::vector<Orientation> enumerate_valid_orientations(const ConstraintGraph& g, std::size_t cap) {
    std::vector<Orientation> out;
    for_each_valid_orientation(g, [&](const Orientation& o) { out.push_back(o); }, cap);
    return out;
}

std::optional<Orientation> replay(const ConstraintGraph& g, Orientation o, const MoveWitness& w) {
    if (!orientation_is_valid(g, o)) return std::nullopt;
    for (int e : w) {
        if (e < 0 || e >= int(g.num_edges())) return std::nullopt;
        o.flip(e);
        if (!orientation_is_valid(g, o)) return std::nullopt;
    }
    return o;
}

}  // namespace nclmp
