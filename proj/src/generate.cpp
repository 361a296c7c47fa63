#include "nclmp/generate.hpp"

#include <algorithm>
#include <set>

#include "nclmp/common.hpp"

namespace nclmp {

namespace {

int pick(Rng& rng, int n) { return int(std::uniform_int_distribution<int>(0, n - 1)(rng)); }

// Some cycle through the free vertices, found by a randomized DFS from v.
std::vector<int> random_cycle(Rng& rng, const std::vector<std::vector<int>>& adj, const std::vector<bool>& used, int v) {
    const int n = int(adj.size());
    std::vector<int> path{v}, depth(n, -1);
    depth[v] = 0;
    std::vector<std::vector<int>> order(n);
    std::vector<std::size_t> next(n, 0);
    order[v] = adj[v];
    std::shuffle(order[v].begin(), order[v].end(), rng);
    while (!path.empty()) {
        int u = path.back();
        if (next[u] == order[u].size()) {
            depth[u] = -2;
            path.pop_back();
            continue;
        }
        int w = order[u][next[u]++];
        if (used[w]) continue;
        if (w == v && path.size() >= 3) return path;
        if (depth[w] != -1) continue;
        depth[w] = int(path.size());
        path.push_back(w);
        order[w] = adj[w];
        std::shuffle(order[w].begin(), order[w].end(), rng);
    }
    return {};
}

}  // namespace

ConstraintGraph random_constraint_graph(Rng& rng, int n, double and_share) {
    if (n < 4 || n % 2) throw ArgumentError("random_constraint_graph: n must be even and at least 4");
    std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 2}, {1, 3}};
    std::vector<std::vector<int>> faces{{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
    int nv = 4;
    auto subdivide = [&](int a, int b, int x) {
        for (auto& e : edges)
            if ((e.first == a && e.second == b) || (e.first == b && e.second == a)) {
                e = {a, x};
                edges.push_back({x, b});
                break;
            }
        for (auto& f : faces)
            for (std::size_t k = 0; k < f.size(); ++k) {
                int p = f[k], q = f[(k + 1) % f.size()];
                if ((p == a && q == b) || (p == b && q == a)) {
                    f.insert(f.begin() + long(k) + 1, x);
                    break;
                }
            }
    };
    while (nv < n) {
        const int fi = pick(rng, int(faces.size()));
        std::vector<int> f = faces[fi];
        const int k = int(f.size());
        int i = pick(rng, k), j = pick(rng, k - 1);
        if (j >= i) ++j;
        if (j < i) std::swap(i, j);
        int ai = f[i], ai1 = f[(i + 1) % k], aj = f[j], aj1 = f[(j + 1) % k];
        int x = nv++, y = nv++;
        subdivide(ai, ai1, x);
        subdivide(aj, aj1, y);
        edges.push_back({x, y});
        // split the chosen face at x and y
        std::vector<int> rot = faces[fi];
        std::rotate(rot.begin(), std::find(rot.begin(), rot.end(), x), rot.end());
        auto iy = std::find(rot.begin(), rot.end(), y) - rot.begin();
        std::vector<int> f2(rot.begin() + iy, rot.end());
        f2.push_back(x);
        faces[fi].assign(rot.begin(), rot.begin() + iy + 1);
        faces.push_back(f2);
    }
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    // AND cycles
    std::vector<bool> used(n, false);
    std::set<std::pair<int, int>> light;
    std::vector<int> verts(n);
    for (int v = 0; v < n; ++v) verts[v] = v;
    std::shuffle(verts.begin(), verts.end(), rng);
    std::bernoulli_distribution want(and_share);
    for (int v : verts) {
        if (used[v] || !want(rng)) continue;
        auto cyc = random_cycle(rng, adj, used, v);
        if (cyc.empty()) continue;
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            used[cyc[k]] = true;
            int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
            light.insert(std::minmax(a, b));
        }
    }
    std::vector<Vertex> vs;
    for (int v = 0; v < n; ++v) vs.push_back({"v" + std::to_string(v), used[v] ? VertexKind::AND : VertexKind::OR, -1});
    std::vector<EdgeSpec> es;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        es.push_back({"e" + std::to_string(e), "v" + std::to_string(a), "v" + std::to_string(b),
                      light.count(std::minmax(a, b)) ? 1 : 2});
    }
    return ConstraintGraph(std::move(vs), es);
}

Orientation random_valid_orientation(Rng& rng, const ConstraintGraph& g, std::size_t cap) {
    auto all = enumerate_valid_orientations(g, cap);
    if (all.empty()) throw PreconditionError("random_valid_orientation: graph has no valid orientation");
    return all[std::size_t(pick(rng, int(all.size())))];
}

}  // namespace nclmp
