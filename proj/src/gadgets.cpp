#include "nclmp/gadgets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

#include "nclmp/state_store.hpp"

namespace nclmp {

Pt inside_slot(Dir side) {
    switch (side) {
        case Dir::W: return {0, 5};
        case Dir::E: return {10, 5};
        case Dir::S: return {5, 0};
        case Dir::N: return {5, 10};
    }
    return {};
}

Pt outside_slot(Dir side) { return inside_slot(side) + step(side); }

namespace {

struct Design {
    const char* name;
    VertexKind kind;
    std::vector<std::pair<Dir, int>> ports;  // side, weight (0 = any); role = index + 1
    std::vector<std::vector<Pt>> tracks;
    std::vector<Pt> points;
    int special = -1;
};

std::vector<std::vector<Pt>> movers(std::initializer_list<std::pair<Pt, Pt>> list) {
    std::vector<std::vector<Pt>> out;
    for (auto& [a, b] : list) out.push_back({a, b});
    return out;
}

// Base drawings. Each vertex robot is a two-position "mover" (rest, pushed)
// except the OR hub, which walks a 2x2 cycle of positions. Free space is
// exactly the union of the robots' footprints over their positions plus the
// doorway slots; everything else in the cell is obstacle.
std::vector<Design> base_designs() {
    std::vector<Design> d;
    d.push_back({"connector-straight",
                 VertexKind::CONNECTOR,
                 {{Dir::W, 0}, {Dir::E, 0}},
                 movers({{{1, 4}, {2, 4}}, {{3, 3}, {4, 3}}, {{5, 2}, {6, 2}}, {{7, 2}, {8, 2}}, {{9, 3}, {9, 4}}}),
                 {}});
    d.push_back({"connector-corner",
                 VertexKind::CONNECTOR,
                 {{Dir::W, 0}, {Dir::N, 0}},
                 movers({{{1, 5}, {2, 5}}, {{3, 6}, {3, 7}}, {{4, 8}, {4, 9}}}),
                 {}});
    // weight-2 port opposite the wall side; the point obstacle at (3,5)
    // stops the west mover from sliding past the junction
    d.push_back({"and-opposite",
                 VertexKind::AND,
                 {{Dir::S, 2}, {Dir::W, 1}, {Dir::E, 1}},
                 movers({{{1, 5}, {2, 5}},
                         {{5, 5}, {4, 5}},
                         {{3, 3}, {3, 4}},
                         {{9, 5}, {8, 5}},
                         {{7, 5}, {6, 5}},
                         {{4, 1}, {4, 2}}}),
                 {{3, 5}}});
    // weight-2 port next to the wall side
    d.push_back({"and-adjacent",
                 VertexKind::AND,
                 {{Dir::W, 2}, {Dir::E, 1}, {Dir::S, 1}},
                 movers({{{1, 5}, {2, 5}},
                         {{3, 7}, {3, 6}},
                         {{3, 3}, {3, 4}},
                         {{4, 1}, {4, 2}},
                         {{9, 6}, {8, 6}},
                         {{7, 7}, {6, 7}},
                         {{5, 8}, {4, 8}}}),
                 {{3, 5}}});
    {
        Design o{"or",
                 VertexKind::OR,
                 {{Dir::W, 2}, {Dir::E, 2}, {Dir::S, 2}},
                 movers({{{4, 1}, {4, 2}}, {{1, 4}, {2, 4}}, {{5, 6}, {5, 5}}, {{9, 6}, {8, 6}}, {{7, 7}, {6, 7}}}),
                 {}};
        o.tracks.push_back({{3, 3}, {4, 3}, {4, 4}, {3, 4}});
        o.special = int(o.tracks.size()) - 1;
        d.push_back(o);
    }
    return d;
}

Pt rot_center(Pt p) { return {kCell - p.y, p.x}; }
Pt rot_block(Pt b) { return {kCell - 1 - b.y, b.x}; }
Dir rot_dir(Dir d) {
    switch (d) {
        case Dir::W: return Dir::S;
        case Dir::S: return Dir::E;
        case Dir::E: return Dir::N;
        case Dir::N: return Dir::W;
    }
    return d;
}

void add_footprint(std::set<Pt>& blocks, Pt c) {
    for (int dx = -1; dx <= 0; ++dx)
        for (int dy = -1; dy <= 0; ++dy) blocks.insert({c.x + dx, c.y + dy});
}

Gadget from_design(const Design& d) {
    Gadget g;
    g.kind = d.kind;
    g.design = d.name;
    g.rotation = 0;
    int role = 1;
    for (auto [side, w] : d.ports)
        g.ports.push_back({side, w == 0 ? 2 : w, role++, inside_slot(side), outside_slot(side)});
    g.vertex_tracks = d.tracks;
    g.points = d.points;
    g.special_robot = d.special;
    std::set<Pt> blocks;
    for (const auto& t : d.tracks)
        for (Pt p : t) add_footprint(blocks, p);
    for (const auto& p : g.ports) {
        add_footprint(blocks, p.inside);
        add_footprint(blocks, p.outside);
    }
    g.free_blocks.assign(blocks.begin(), blocks.end());
    return g;
}

void sort_ports(Gadget& g) {
    std::sort(g.ports.begin(), g.ports.end(), [](const GadgetPort& a, const GadgetPort& b) { return a.role < b.role; });
}

std::vector<Design>& designs() {
    static std::vector<Design> d = base_designs();
    return d;
}

// The adjacent-port AND comes in both chiralities; the mirror image is
// stored as its own design so rotations cover all twelve placements.
std::vector<Gadget>& all_base_gadgets() {
    static std::vector<Gadget> v = [] {
        std::vector<Gadget> out;
        for (const auto& d : designs()) {
            out.push_back(from_design(d));
            if (std::string(d.name) == "and-adjacent") {
                Gadget m = mirror_x(out.back());
                m.design = "and-adjacent-mirrored";
                out.push_back(m);
            }
        }
        return out;
    }();
    return v;
}

bool same_ports(const Gadget& g, const std::vector<PortSpec>& spec, bool connector) {
    if (g.ports.size() != spec.size()) return false;
    for (const auto& s : spec) {
        int i = g.port_index(s.side);
        if (i < 0) return false;
        if (!connector && g.ports[i].weight != s.weight) return false;
    }
    if (connector && spec.size() == 2 && spec[0].weight != spec[1].weight) return false;
    return true;
}

}  // namespace

Gadget rotate(const Gadget& g, int quarter_turns) {
    Gadget r = g;
    int q = ((quarter_turns % 4) + 4) % 4;
    for (int k = 0; k < q; ++k) {
        for (auto& p : r.ports) {
            p.side = rot_dir(p.side);
            p.inside = rot_center(p.inside);
            p.outside = rot_center(p.outside);
        }
        for (auto& t : r.vertex_tracks)
            for (auto& p : t) p = rot_center(p);
        for (auto& p : r.points) p = rot_center(p);
        for (auto& b : r.free_blocks) b = rot_block(b);
    }
    r.rotation = (g.rotation + q) % 4;
    std::sort(r.free_blocks.begin(), r.free_blocks.end());
    sort_ports(r);
    return r;
}

Gadget mirror_x(const Gadget& g) {
    Gadget r = g;
    auto flip = [](Pt p) { return Pt{kCell - p.x, p.y}; };
    for (auto& p : r.ports) {
        if (p.side == Dir::E) p.side = Dir::W;
        else if (p.side == Dir::W) p.side = Dir::E;
        p.inside = flip(p.inside);
        p.outside = flip(p.outside);
    }
    for (auto& t : r.vertex_tracks)
        for (auto& p : t) p = flip(p);
    for (auto& p : r.points) p = flip(p);
    for (auto& b : r.free_blocks) b = {kCell - 1 - b.x, b.y};
    std::sort(r.free_blocks.begin(), r.free_blocks.end());
    return r;
}

std::vector<Pt> Gadget::vertex_starts() const {
    std::vector<Pt> out;
    for (const auto& t : vertex_tracks) out.push_back(t.front());
    return out;
}

int Gadget::port_index(Dir side) const {
    for (std::size_t i = 0; i < ports.size(); ++i)
        if (ports[i].side == side) return int(i);
    return -1;
}

std::vector<Polygon> Gadget::obstacles() const {
    std::vector<std::uint8_t> bm(std::size_t(kCell) * kCell, 1);
    for (Pt b : free_blocks)
        if (b.x >= 0 && b.x < kCell && b.y >= 0 && b.y < kCell) bm[std::size_t(b.y) * kCell + b.x] = 0;
    std::vector<Polygon> out;
    for (const auto& r : blocks_to_rects(bm, 0, 0, kCell, kCell)) out.push_back(rect_polygon(r));
    return out;
}

Instance gadget_instance(const Gadget& g) {
    Instance inst;
    inst.bounds = {-2, -2, kCell + 2, kCell + 2};
    const int w = kCell + 4;
    std::vector<std::uint8_t> bm(std::size_t(w) * w, 1);
    for (Pt b : g.free_blocks) bm[std::size_t(b.y + 2) * w + (b.x + 2)] = 0;
    for (const auto& r : blocks_to_rects(bm, -2, -2, w, w)) inst.obstacles.push_back(rect_polygon(r));
    inst.point_obstacles = g.points;
    inst.robot_count = int(g.ports.size() + g.vertex_tracks.size());
    return inst;
}

std::vector<Pt> Gadget::terminal_set() const {
    Instance inst = gadget_instance(*this);
    FreeSpace fs(inst);
    std::vector<Pt> out;
    for (std::size_t i = 0; i < fs.size(); ++i) out.push_back(fs.pos(int(i)));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Gadget> gadget_variants(VertexKind kind) {
    std::vector<Gadget> out;
    for (const auto& b : all_base_gadgets())
        if (b.kind == kind)
            for (int q = 0; q < 4; ++q) out.push_back(rotate(b, q));
    return out;
}

Gadget make_gadget(VertexKind kind, const std::vector<PortSpec>& port_assignment, int rotation) {
    if (rotation % 90 != 0) throw ArgumentError("make_gadget: rotation must be a multiple of 90");
    const std::size_t want = kind == VertexKind::CONNECTOR ? 2 : 3;
    if (port_assignment.size() != want) throw ArgumentError("make_gadget: wrong number of ports for kind");
    std::multiset<int> ws;
    std::set<Dir> sides;
    for (const auto& p : port_assignment) {
        ws.insert(p.weight);
        sides.insert(p.side);
        if (p.weight != 1 && p.weight != 2) throw ArgumentError("make_gadget: port weight must be 1 or 2");
    }
    if (sides.size() != want) throw ArgumentError("make_gadget: repeated port side");
    if (kind == VertexKind::AND && ws != std::multiset<int>{1, 1, 2})
        throw ArgumentError("make_gadget: AND ports must weigh {2,1,1}");
    if (kind == VertexKind::OR && ws != std::multiset<int>{2, 2, 2})
        throw ArgumentError("make_gadget: OR ports must weigh {2,2,2}");
    for (const auto& v : gadget_variants(kind)) {
        if (!same_ports(v, port_assignment, kind == VertexKind::CONNECTOR)) continue;
        Gadget g = v;
        for (auto& p : g.ports) {
            for (const auto& s : port_assignment)
                if (s.side == p.side) p.weight = s.weight;
        }
        return rotate(g, ((rotation / 90) % 4 + 4) % 4);
    }
    throw ArgumentError("make_gadget: no drawing for this port assignment");
}

std::vector<int> project_state(const Gadget& g, const std::vector<Pt>& state) {
    std::vector<int> k(g.ports.size());
    for (std::size_t i = 0; i < g.ports.size(); ++i) {
        if (state[i] == g.ports[i].inside) k[i] = 1;
        else if (state[i] == g.ports[i].outside) k[i] = 0;
        else return {-1};
    }
    return k;
}

bool vertex_allows(VertexKind kind, const std::vector<int>& in) {
    switch (kind) {
        case VertexKind::CONNECTOR: return !(in[0] && in[1]);
        case VertexKind::AND: return !(in[0] && (in[1] || in[2]));
        case VertexKind::OR: return !(in[0] && in[1] && in[2]);
    }
    return false;
}

namespace {

// Complete reachable graph of a gadget from its canonical start (all edge
// robots outside, vertex robots at rest), every port free.
struct FullGraph {
    Instance inst;
    std::vector<std::vector<Pt>> nodes;
    std::vector<GadgetArc> arcs;
    std::vector<std::vector<std::uint32_t>> out;  // arc indices per node
};

FullGraph explore(const Gadget& g, std::size_t cap) {
    FullGraph fg;
    fg.inst = gadget_instance(g);
    FreeSpace fs(fg.inst);
    const std::size_t m = std::size_t(fg.inst.robot_count);
    std::vector<Pt> start;
    for (const auto& p : g.ports) start.push_back(p.outside);
    for (Pt p : g.vertex_starts()) start.push_back(p);
    if (!is_free(fs, start)) throw PreconditionError("gadget " + g.design + ": start state is not free");
    StateStore store(m);
    auto pack = [&](const std::vector<Pt>& s) {
        std::vector<std::uint64_t> w(m);
        for (std::size_t i = 0; i < m; ++i) w[i] = std::uint64_t(fs.id(s[i]));
        return w;
    };
    auto w0 = pack(start);
    store.insert(w0.data(), StateStore::kNone, 0);
    fg.nodes.push_back(start);
    for (std::uint32_t i = 0; i < store.size(); ++i) {
        const std::vector<Pt> cur = fg.nodes[i];
        fg.out.emplace_back();
        for (std::size_t r = 0; r < m; ++r) {
            int p = fs.id(cur[r]);
            for (int d = 0; d < 4; ++d) {
                int q = fs.neighbor(p, Dir(d));
                if (q < 0) continue;
                Pt qp = fs.pos(q);
                bool ok = true;
                for (std::size_t o = 0; o < m && ok; ++o)
                    if (o != r && robots_conflict(qp, cur[o])) ok = false;
                if (!ok) continue;
                auto nxt = cur;
                nxt[r] = qp;
                auto w = pack(nxt);
                auto [j, fresh] = store.insert(w.data(), i, 0);
                if (fresh) {
                    if (store.size() > cap) throw CapExceeded("gadget state cap exceeded", cap);
                    fg.nodes.push_back(nxt);
                }
                fg.out.back().push_back(std::uint32_t(fg.arcs.size()));
                fg.arcs.push_back({i, j, int(r), Dir(d)});
            }
        }
    }
    return fg;
}

std::string geometry_key(const Gadget& g) {
    std::string k = g.design + "/" + std::to_string(g.rotation) + "/";
    for (const auto& p : g.ports) k += dir_char(p.side);
    for (Pt p : g.points) k += "p" + std::to_string(p.x) + "," + std::to_string(p.y);
    for (const auto& t : g.vertex_tracks)
        for (Pt p : t) k += "t" + std::to_string(p.x) + "," + std::to_string(p.y);
    for (Pt p : g.free_blocks) k += "b" + std::to_string(p.x) + "," + std::to_string(p.y);
    return k;
}

// Canonical vertex placements per projection, cached per drawing.
const std::map<std::vector<int>, std::vector<Pt>>& canonical_table(const Gadget& g) {
    static std::mutex mu;
    static std::map<std::string, std::map<std::vector<int>, std::vector<Pt>>> cache;
    const std::string key = geometry_key(g);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    FullGraph fg = explore(g, 1'000'000);
    std::map<std::vector<int>, std::vector<Pt>> table;
    for (const auto& s : fg.nodes) {
        auto k = project_state(g, s);
        if (k.size() != g.ports.size()) continue;
        if (!table.count(k)) table[k] = std::vector<Pt>(s.begin() + long(g.ports.size()), s.end());
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(table)).first->second;
}

std::string state_str(const std::vector<Pt>& s) {
    std::string out;
    for (Pt p : s) out += "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
    return out;
}

std::string bits_str(const std::vector<int>& k) {
    std::string s;
    for (int b : k) s += b < 0 ? '?' : char('0' + b);
    return s;
}

// Components of the states that respect `boundary`, using only moves of
// robots that are not held.
std::vector<int> components(const FullGraph& fg, const Gadget& g, const std::vector<PortMode>& boundary, int& count) {
    const std::size_t n = fg.nodes.size(), np = g.ports.size();
    std::vector<int> comp(n, -1);
    auto admissible = [&](std::uint32_t i) {
        for (std::size_t p = 0; p < np; ++p) {
            if (boundary[p] == PortMode::HeldInside && fg.nodes[i][p] != g.ports[p].inside) return false;
            if (boundary[p] == PortMode::HeldOutside && fg.nodes[i][p] != g.ports[p].outside) return false;
        }
        return true;
    };
    count = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (comp[s] >= 0 || !admissible(s)) continue;
        std::vector<std::uint32_t> st{s};
        comp[s] = count;
        while (!st.empty()) {
            auto x = st.back();
            st.pop_back();
            for (auto a : fg.out[x]) {
                const auto& arc = fg.arcs[a];
                if (arc.robot < int(np) && boundary[arc.robot] != PortMode::Free) continue;
                if (comp[arc.to] < 0 && admissible(arc.to)) {
                    comp[arc.to] = count;
                    st.push_back(arc.to);
                }
            }
        }
        ++count;
    }
    return comp;
}

}  // namespace

GadgetStateGraph enumerate_gadget_states(const Gadget& g, const std::vector<PortMode>& boundary, std::size_t cap) {
    if (boundary.size() != g.ports.size()) throw ArgumentError("enumerate_gadget_states: one mode per port expected");
    FullGraph fg = explore(g, cap);
    int count = 0;
    auto comp = components(fg, g, boundary, count);
    GadgetStateGraph out;
    out.boundary = boundary;
    // canonical start: first admissible state in BFS order
    int c0 = -1;
    for (std::size_t i = 0; i < comp.size(); ++i)
        if (comp[i] >= 0) {
            c0 = comp[i];
            break;
        }
    if (c0 < 0) return out;
    std::vector<std::uint32_t> remap(fg.nodes.size(), StateStore::kNone);
    for (std::size_t i = 0; i < fg.nodes.size(); ++i)
        if (comp[i] == c0) {
            remap[i] = std::uint32_t(out.nodes.size());
            out.nodes.push_back(fg.nodes[i]);
        }
    for (const auto& a : fg.arcs) {
        if (remap[a.from] == StateStore::kNone || remap[a.to] == StateStore::kNone) continue;
        if (a.robot < int(g.ports.size()) && boundary[a.robot] != PortMode::Free) continue;
        out.arcs.push_back({remap[a.from], remap[a.to], a.robot, a.dir});
    }
    return out;
}

GadgetReport verify_gadget(const Gadget& g, std::size_t cap) {
    GadgetReport rep;
    rep.variants = 1;
    const std::string who = g.design + "@" + std::to_string(g.rotation * 90);
    FullGraph fg = explore(g, cap);
    rep.states = fg.nodes.size();
    const std::size_t np = g.ports.size();
    for (const auto& s : fg.nodes) {
        auto k = project_state(g, s);
        if (k.size() != np || k[0] < 0) {
            rep.problems.push_back(who + ": edge robot off its slots in " + state_str(s));
            continue;
        }
        if (!vertex_allows(g.kind, k))
            rep.problems.push_back(who + ": forbidden projection " + bits_str(k) + " reached in " + state_str(s));
    }
    if (!rep.ok()) return rep;

    // every combination of port modes: the projection of each gadget
    // component must equal the matching component of the vertex's flip graph
    std::vector<PortMode> modes(np, PortMode::Free);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < np; ++i) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t x = c;
        for (std::size_t i = 0; i < np; ++i) {
            modes[i] = PortMode(x % 3);
            x /= 3;
        }
        int count = 0;
        auto comp = components(fg, g, modes, count);
        std::vector<std::set<std::vector<int>>> proj(count);
        std::vector<std::map<std::vector<int>, int>> classes(count);
        for (std::size_t s = 0; s < fg.nodes.size(); ++s) {
            if (comp[s] < 0) continue;
            auto k = project_state(g, fg.nodes[s]);
            proj[comp[s]].insert(k);
        }
        // which gadget components carry each projection
        std::map<std::vector<int>, std::set<int>> owners;
        for (int ci = 0; ci < count; ++ci)
            for (const auto& k : proj[ci]) owners[k].insert(ci);
        for (int ci = 0; ci < count; ++ci) {
            const auto& k0 = *proj[ci].begin();
            // closure in the vertex flip graph through free ports
            std::set<std::vector<int>> want{k0};
            std::vector<std::vector<int>> st{k0};
            while (!st.empty()) {
                auto k = st.back();
                st.pop_back();
                for (std::size_t p = 0; p < np; ++p) {
                    if (modes[p] != PortMode::Free) continue;
                    auto k2 = k;
                    k2[p] ^= 1;
                    if (vertex_allows(g.kind, k2) && want.insert(k2).second) st.push_back(k2);
                }
            }
            if (proj[ci] != want) {
                std::string a, b;
                for (const auto& k : proj[ci]) a += bits_str(k) + " ";
                for (const auto& k : want) b += bits_str(k) + " ";
                std::string m;
                for (auto md : modes) m += md == PortMode::Free ? 'f' : md == PortMode::HeldInside ? 'I' : 'O';
                rep.problems.push_back(who + ": boundary " + m + " component reaches {" + a + "} but the vertex allows {" +
                                       b + "}");
            }
        }
        // with every port held, the internal states of one projection must
        // form a single component
        bool all_held = true;
        for (auto md : modes) all_held = all_held && md != PortMode::Free;
        if (all_held)
            for (const auto& [k, cs] : owners)
                if (cs.size() > 1)
                    rep.problems.push_back(who + ": internal states of projection " + bits_str(k) +
                                           " split into " + std::to_string(cs.size()) + " components");
    }
    return rep;
}

GadgetReport verify_gadget_semantics(VertexKind kind) {
    GadgetReport rep;
    for (const auto& g : gadget_variants(kind)) {
        auto r = verify_gadget(g);
        rep.variants += 1;
        rep.states += r.states;
        rep.problems.insert(rep.problems.end(), r.problems.begin(), r.problems.end());
    }
    return rep;
}

std::vector<Pt> canonical_vertex_positions(const Gadget& g, const std::vector<int>& inside) {
    const auto& t = canonical_table(g);
    auto it = t.find(inside);
    if (it == t.end()) throw ArgumentError("projection " + bits_str(inside) + " is not realizable in " + g.design);
    return it->second;
}

PairReport verify_structural_lemmas(const Gadget& a, const Gadget& b, Dir dir, std::size_t cap) {
    PairReport rep;
    const int pa = a.port_index(dir), pb = b.port_index(opposite(dir));
    if (pa < 0 || pb < 0) throw ArgumentError("verify_structural_lemmas: gadgets do not share a doorway");
    const Pt off{step(dir).x * kPitch, step(dir).y * kPitch};

    // blocks of both cells in a's frame
    std::set<Pt> free;
    for (Pt p : a.free_blocks) free.insert(p);
    for (Pt p : b.free_blocks) free.insert(p + off);
    Instance inst;
    inst.bounds = {std::min(0, off.x) - 2, std::min(0, off.y) - 2, std::max(0, off.x) + kCell + 2,
                   std::max(0, off.y) + kCell + 2};
    const int w = inst.bounds.x1 - inst.bounds.x0, h = inst.bounds.y1 - inst.bounds.y0;
    std::vector<std::uint8_t> bm(std::size_t(w) * h, 1);
    for (Pt p : free) bm[std::size_t(p.y - inst.bounds.y0) * w + (p.x - inst.bounds.x0)] = 0;
    for (const auto& r : blocks_to_rects(bm, inst.bounds.x0, inst.bounds.y0, w, h))
        inst.obstacles.push_back(rect_polygon(r));
    inst.point_obstacles = a.points;
    for (Pt p : b.points) inst.point_obstacles.push_back(p + off);

    // robots: shared edge robot, a's other edge robots, b's other edge
    // robots, a's vertex robots, b's vertex robots
    std::vector<Pt> start;
    std::vector<std::string> names;
    std::vector<int> kind;  // 0 edge, 1 vertex, 2 special
    std::vector<int> ka(a.ports.size(), 0), kb(b.ports.size(), 0);
    kb[pb] = 1;  // shared robot starts inside b (outside a)
    auto va = canonical_vertex_positions(a, ka);
    auto vb = canonical_vertex_positions(b, kb);
    start.push_back(a.ports[pa].outside);
    names.push_back("shared");
    kind.push_back(0);
    for (std::size_t i = 0; i < a.ports.size(); ++i)
        if (int(i) != pa) {
            start.push_back(a.ports[i].outside);
            names.push_back("a.port" + std::to_string(a.ports[i].role));
            kind.push_back(0);
        }
    for (std::size_t i = 0; i < b.ports.size(); ++i)
        if (int(i) != pb) {
            start.push_back(b.ports[i].outside + off);
            names.push_back("b.port" + std::to_string(b.ports[i].role));
            kind.push_back(0);
        }
    for (std::size_t i = 0; i < va.size(); ++i) {
        start.push_back(va[i]);
        names.push_back("a.v" + std::to_string(i));
        kind.push_back(int(i) == a.special_robot ? 2 : 1);
    }
    for (std::size_t i = 0; i < vb.size(); ++i) {
        start.push_back(vb[i] + off);
        names.push_back("b.v" + std::to_string(i));
        kind.push_back(int(i) == b.special_robot ? 2 : 1);
    }
    inst.robot_count = int(start.size());
    FreeSpace fs(inst);
    if (!is_free(fs, start)) throw PreconditionError("pair start state is not free");
    const std::size_t m = start.size();
    StateStore store(m);
    std::vector<std::vector<Pt>> nodes{start};
    auto pack = [&](const std::vector<Pt>& s) {
        std::vector<std::uint64_t> wv(m);
        for (std::size_t i = 0; i < m; ++i) wv[i] = std::uint64_t(fs.id(s[i]));
        return wv;
    };
    auto w0 = pack(start);
    store.insert(w0.data(), StateStore::kNone, 0);
    std::vector<std::set<Pt>> seen(m);
    std::map<Pt, std::set<int>> who;
    for (std::uint32_t i = 0; i < store.size(); ++i) {
        const auto cur = nodes[i];
        for (std::size_t r = 0; r < m; ++r) {
            seen[r].insert(cur[r]);
            who[cur[r]].insert(int(r));
        }
        for (std::size_t r = 0; r < m; ++r) {
            int p = fs.id(cur[r]);
            for (int d = 0; d < 4; ++d) {
                int q = fs.neighbor(p, Dir(d));
                if (q < 0) continue;
                Pt qp = fs.pos(q);
                bool ok = true;
                for (std::size_t o = 0; o < m && ok; ++o)
                    if (o != r && robots_conflict(qp, cur[o])) ok = false;
                if (!ok) continue;
                auto nxt = cur;
                nxt[r] = qp;
                auto wv = pack(nxt);
                if (store.insert(wv.data(), i, 0).second) {
                    if (store.size() > cap) throw CapExceeded("pair state cap exceeded", cap);
                    nodes.push_back(std::move(nxt));
                }
            }
        }
    }
    rep.states = nodes.size();
    for (std::size_t r = 0; r < m; ++r) {
        int n = int(seen[r].size());
        if (kind[r] == 0) {
            rep.max_edge_positions = std::max(rep.max_edge_positions, n);
            if (n > 2) {
                rep.edge_ok = false;
                rep.problems.push_back("edge robot " + names[r] + " uses " + std::to_string(n) + " terminal configurations");
            }
        } else if (kind[r] == 1) {
            rep.max_vertex_positions = std::max(rep.max_vertex_positions, n);
            if (n > 2) {
                rep.vertex_ok = false;
                rep.problems.push_back("vertex robot " + names[r] + " uses " + std::to_string(n) + " terminal configurations");
            }
        } else {
            rep.special_positions = std::max(rep.special_positions, n);
            if (n > 3) {
                rep.special_ok = false;
                rep.problems.push_back("hub robot " + names[r] + " uses " + std::to_string(n) + " terminal configurations");
            }
        }
    }
    for (const auto& [p, rs] : who)
        if (rs.size() > 1) {
            rep.unique_ok = false;
            rep.problems.push_back("terminal configuration (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                                   ") is used by " + std::to_string(rs.size()) + " robots");
        }
    return rep;
}

PairSummary verify_all_pairs(std::size_t cap) {
    std::vector<Gadget> all;
    for (auto k : {VertexKind::CONNECTOR, VertexKind::AND, VertexKind::OR})
        for (auto& g : gadget_variants(k)) all.push_back(g);
    PairSummary sum;
    for (Dir d : {Dir::E, Dir::N})
        for (const auto& a : all)
            for (const auto& b : all) {
                if (a.port_index(d) < 0 || b.port_index(opposite(d)) < 0) continue;
                auto r = verify_structural_lemmas(a, b, d, cap);
                ++sum.pairs;
                sum.edge_bad += !r.edge_ok;
                sum.vertex_bad += !r.vertex_ok;
                sum.special_bad += !r.special_ok;
                sum.unique_bad += !r.unique_ok;
                sum.max_edge_positions = std::max(sum.max_edge_positions, r.max_edge_positions);
                sum.max_vertex_positions = std::max(sum.max_vertex_positions, r.max_vertex_positions);
                sum.max_special_positions = std::max(sum.max_special_positions, r.special_positions);
                sum.max_states = std::max(sum.max_states, r.states);
                for (const auto& p : r.problems)
                    if (sum.examples.size() < 5)
                        sum.examples.push_back(a.design + "@" + std::to_string(a.rotation) + " " + dir_char(d) + " " +
                                               b.design + "@" + std::to_string(b.rotation) + ": " + p);
            }
    return sum;
}

}  // namespace nclmp
