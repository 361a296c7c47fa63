// One line per acceptance criterion; exit status 1 if any line fails.
// Usage: acceptance [criterion numbers...]

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "nclmp/crosscheck.hpp"
#include "nclmp/gadgets.hpp"
#include "nclmp/generate.hpp"
#include "oracles.hpp"

using namespace nclmp;

namespace {

// Tolerances and sizes, pinned.
constexpr double kGadgetSeconds = 60.0;      // per gadget variant
constexpr double kCrossSeconds = 30 * 60.0;  // whole corpus
constexpr int kCrossCases = 240;
constexpr std::uint64_t kCrossSeed = 7;
constexpr int kCrossMaxVertices = 6;
constexpr int kEmbedGraphs = 120;
constexpr int kEmbedMaxVertices = 20;
constexpr int kSolverInstances = 60;
constexpr int kSolverMaxRobots = 4;
constexpr int kSolverGrid = 8;
constexpr int kSolverClutter = 5;  // up to this many blocks and point obstacles

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
    bool pass;
    std::string detail;
};

Line gadget_tables() {
    std::ostringstream os;
    bool ok = true;
    double worst = 0;
    for (auto k : {VertexKind::CONNECTOR, VertexKind::AND, VertexKind::OR}) {
        std::size_t bad = 0, states = 0, variants = 0;
        for (const auto& g : gadget_variants(k)) {
            auto t0 = Clock::now();
            auto r = verify_gadget(g);
            worst = std::max(worst, since(t0));
            bad += r.problems.size();
            states += r.states;
            ++variants;
        }
        ok = ok && bad == 0;
        os << kind_name(k) << " " << variants << " variants " << states << " states " << bad << " deviations; ";
    }
    ok = ok && worst < kGadgetSeconds;
    os << "slowest variant " << std::fixed;
    os.precision(2);
    os << worst << " s (limit " << kGadgetSeconds << " s)";
    return {ok, os.str()};
}

Line pair_lemmas() {
    auto s = verify_all_pairs();
    const bool counts = s.edge_bad + s.vertex_bad + s.unique_bad == 0;
    const bool special = s.max_special_positions <= 3 && s.special_bad == 0;
    std::ostringstream os;
    os << s.pairs << " pairs; edge robots max " << s.max_edge_positions << " positions (" << s.edge_bad
       << " bad), vertex robots max " << s.max_vertex_positions << " (" << s.vertex_bad << " bad), O* max "
       << s.max_special_positions << " (limit 3, " << s.special_bad << " pairs over), identity clashes " << s.unique_bad;
    return {counts && special, os.str()};
}

Line or_exclusion() {
    std::size_t states = 0, all_in = 0;
    int variants = 0;
    for (const auto& g : gadget_variants(VertexKind::OR)) {
        // the free boundary is the largest reachable set; held ports only remove arcs
        auto sg = enumerate_gadget_states(g, std::vector<PortMode>(g.ports.size(), PortMode::Free));
        for (const auto& s : sg.nodes) {
            ++states;
            if (project_state(g, s) == std::vector<int>{1, 1, 1}) ++all_in;
        }
        ++variants;
    }
    std::ostringstream os;
    os << variants << " OR variants, " << states << " reachable states, " << all_in << " with all three inside";
    return {all_in == 0 && states > 0, os.str()};
}

struct CrossTotals {
    int cases = 0, agree = 0, disagree = 0, inconclusive = 0, replay_bad = 0;
    int labeled_cases = 0, labeled_agree = 0;
    int per_problem[3] = {0, 0, 0};
    double seconds = 0;
    bool ran = false;
};

CrossTotals& cross_totals() {
    static CrossTotals t;
    if (t.ran) return t;
    t.ran = true;
    auto t0 = Clock::now();
    Rng rng(kCrossSeed);
    auto corpus = crosscheck_corpus(rng, kCrossCases, kCrossMaxVertices);
    for (const auto& cc : corpus) {
        auto emb = embed(cc.g);
        auto r = crosscheck(cc.g, emb, cc.c);
        ++t.cases;
        ++t.per_problem[int(cc.c.problem)];
        const bool decided = r.ncl != Answer::Inconclusive && r.motion != Answer::Inconclusive;
        if (!decided) ++t.inconclusive;
        else if (r.agree) ++t.agree;
        else ++t.disagree;
        if (!r.replay_ok) ++t.replay_bad;
        if (cc.c.problem == NclProblem::F2F) {
            ++t.labeled_cases;
            if (r.labeled_agree && r.labeled != Answer::Inconclusive) ++t.labeled_agree;
        }
        if (!decided || !r.agree || !r.replay_ok || !r.labeled_agree)
            std::cerr << "  case [" << cc.label << "] ncl=" << answer_name(r.ncl) << " motion=" << answer_name(r.motion)
                      << " labeled=" << answer_name(r.labeled) << " " << r.note << "\n";
    }
    t.seconds = since(t0);
    return t;
}

Line crosscheck_agreement() {
    const auto& t = cross_totals();
    std::ostringstream os;
    os << t.cases << " cases (f2f " << t.per_problem[0] << ", f2e " << t.per_problem[1] << ", e2e " << t.per_problem[2]
       << "), agree " << t.agree << ", disagree " << t.disagree << ", inconclusive " << t.inconclusive
       << ", witness replay failures " << t.replay_bad << ", " << std::fixed;
    os.precision(1);
    os << t.seconds << " s (limit " << kCrossSeconds << " s)";
    const bool ok = t.cases >= 200 && t.agree == t.cases && t.replay_bad == 0 && t.seconds < kCrossSeconds &&
                    t.per_problem[0] > 0 && t.per_problem[1] > 0 && t.per_problem[2] > 0;
    return {ok, os.str()};
}

Line labeled_agreement() {
    const auto& t = cross_totals();
    std::ostringstream os;
    os << t.labeled_agree << "/" << t.labeled_cases << " f2f cases: labeled answer equals unlabeled answer";
    return {t.labeled_cases > 0 && t.labeled_agree == t.labeled_cases, os.str()};
}

Line embedding_audit() {
    Rng rng(101);
    int graphs = 0, violations = 0, lifted = 0, lift_bad = 0, beyond_cap = 0;
    for (int k = 0; k < kEmbedGraphs; ++k) {
        const int n = 4 + 2 * (k % ((kEmbedMaxVertices - 4) / 2 + 1));
        auto g = random_constraint_graph(rng, n);
        auto emb = embed(g);
        ++graphs;
        violations += int(check_embedding(g, emb).violations.size());
        if (g.num_edges() > NclLimits{}.enum_cap) {
            ++beyond_cap;
            continue;
        }
        for_each_valid_orientation(g, [&](const Orientation& o) {
            ++lifted;
            auto p = project_orientation(emb, g, lift_orientation(emb, g, o));
            if (p.any_mixed() || !(p.orientation == o)) ++lift_bad;
        });
    }
    std::ostringstream os;
    os << graphs << " graphs (4.." << kEmbedMaxVertices << " vertices), " << violations << " violations; project(lift(o)) = o on "
       << lifted - lift_bad << "/" << lifted << " valid orientations (" << beyond_cap
       << " graphs above the enumeration cap of " << NclLimits{}.enum_cap << " edges)";
    return {violations == 0 && lift_bad == 0 && lifted > 0, os.str()};
}

Line geometry_constants() {
    int cells = 0, walls = 0, doors = 0, slots = 0, bad = 0;
    std::string first;
    auto fail = [&](const std::string& s) {
        if (!bad++) first = s;
    };
    if (kCell != 10 || kWall != 1 || kDoorHi - kDoorLo != 2) fail("constants");
    Rng rng(77);
    for (int k = 0; k < 6; ++k) {
        auto g = random_constraint_graph(rng, 4 + 2 * (k % 3));
        auto emb = embed(g);
        auto ws = build_workspace(emb);
        const auto& H = ws.host;
        FreeSpace fs(ws.instance);
        std::set<Pt> cell_blocks, door_blocks;
        for (int v = 0; v < int(H.num_vertices()); ++v) {
            ++cells;
            const Pt o = ws.origin(v);
            if (o.x != kPitch * ws.cell[v].x + kWall || o.y != kPitch * ws.cell[v].y + kWall) fail("origin");
            for (int x = 0; x < kCell; ++x)
                for (int y = 0; y < kCell; ++y) cell_blocks.insert(o + Pt{x, y});
            // the wall strip on each side: blocked except a centred one-unit doorway at ports
            for (Dir d : {Dir::N, Dir::E, Dir::S, Dir::W}) {
                ++walls;
                const bool port = ws.gadgets[v].port_index(d) >= 0;
                int open = 0;
                for (int t = 0; t < kCell; ++t) {
                    Pt b = d == Dir::E ? Pt{kCell, t} : d == Dir::W ? Pt{-kWall, t} : d == Dir::N ? Pt{t, kCell} : Pt{t, -kWall};
                    b = b + o;
                    const bool door = port && t >= kDoorLo && t < kDoorHi;
                    if (fs.block_free(b)) ++open;
                    if (fs.block_free(b) != door) fail("wall block at (" + std::to_string(b.x) + "," + std::to_string(b.y) + ")");
                    if (door) door_blocks.insert(b);
                }
                if (port) {
                    ++doors;
                    if (open != kDoorHi - kDoorLo) fail("doorway width");
                }
            }
        }
        // every free block belongs to a 5x5 interior or a doorway
        for (int x = ws.instance.bounds.x0; x < ws.instance.bounds.x1; ++x)
            for (int y = ws.instance.bounds.y0; y < ws.instance.bounds.y1; ++y)
                if (fs.block_free({x, y}) && !cell_blocks.count({x, y}) && !door_blocks.count({x, y}))
                    fail("free block outside cells");
        // edge-robot slots: inside penetrates the tail cell by half a unit,
        // outside (the same spot seen from the head) sticks half a unit past the head's wall
        for (int e = 0; e < int(H.num_edges()); ++e)
            for (int tail : {H.edge(e).u, H.edge(e).v}) {
                ++slots;
                const int head = H.other_end(e, tail);
                const Pt c = edge_slot(ws, e, tail);
                const Rect r = robot_rect(c);
                const Pt ot = ws.origin(tail), oh = ws.origin(head);
                const Rect it{ot.x, ot.y, ot.x + kCell, ot.y + kCell}, ih{oh.x, oh.y, oh.x + kCell, oh.y + kCell};
                auto depth = [](const Rect& a, const Rect& b) {
                    return std::min(a.x1, b.x1) - std::max(a.x0, b.x0) < std::min(a.y1, b.y1) - std::max(a.y0, b.y0)
                               ? std::min(a.x1, b.x1) - std::max(a.x0, b.x0)
                               : std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
                };
                if (depth(r, it) != 1) fail("inside slot depth");
                if (depth(r, ih) != 0) fail("outside slot touches head interior");
                // the robot spans the wall (kWall) plus half a unit on the far side
                const int span = std::max(r.x1 - r.x0, r.y1 - r.y0);
                if (span != 2 || span - kWall - depth(r, ih) != 1) fail("outside protrusion");
                const auto& gh = ws.gadgets[head];
                bool match = false;
                for (std::size_t p = 0; p < gh.ports.size(); ++p)
                    if (ws.edge_of_port[head][p] == e && ws.to_global(head, gh.ports[p].outside) == c) match = true;
                if (!match) fail("outside slot of head differs from inside slot of tail");
            }
    }
    std::ostringstream os;
    os << cells << " cells (5x5 = " << kCell << " half-units), " << walls << " wall strips (" << kWall
       << " half-unit thick), " << doors << " doorways (" << kDoorHi - kDoorLo << " half-units wide), " << slots
       << " edge-robot slots checked; " << bad << " violations" << (bad ? " first: " + first : "");
    return {bad == 0, os.str()};
}

Line solver_laws() {
    std::mt19937_64 rng(2024);
    int inst_count = 0, perm_bad = 0, lab_bad = 0, chain_bad = 0, replay_bad = 0, oracle_bad = 0, answers = 0;
    int yes = 0;
    while (inst_count < kSolverInstances) {
        auto w = oracle::random_world(rng, kSolverMaxRobots, kSolverGrid, kSolverClutter);
        oracle::MotionOracle orc(w, true);
        if (orc.unl.states.empty()) continue;
        ++inst_count;
        const Instance inst = w.instance();
        std::uniform_int_distribution<int> pick(0, int(orc.unl.states.size()) - 1);
        auto cfg = [&](int k) {
            MultiConfig c;
            for (int i : orc.unl.states[k]) c.push_back(orc.unl.pos[i]);
            return c;
        };
        for (int q = 0; q < 3; ++q) {
            const MultiConfig S = cfg(pick(rng)), T = cfg(pick(rng));
            const Pt s = S[rng() % S.size()];
            const Pt t = orc.unl.pos[rng() % orc.unl.pos.size()];
            auto mm = solve_multi_to_multi(inst, S, T);
            auto ms = solve_multi_to_single(inst, S, t);
            auto mr = solve_multi_to_single_restricted(inst, S, s, t);
            auto ss = solve_single_to_single(inst, s, t);
            std::vector<int> a(S.size());
            std::iota(a.begin(), a.end(), 0);
            std::shuffle(a.begin(), a.end(), rng);
            auto lb = solve_labeled(inst, S, T, a);
            answers += 5;
            yes += mm.yes + ms.yes + mr.yes + ss.yes + lb.yes;

            // (a) permutation invariance
            MultiConfig S2 = S, T2 = T;
            std::shuffle(S2.begin(), S2.end(), rng);
            std::shuffle(T2.begin(), T2.end(), rng);
            if (solve_multi_to_multi(inst, S2, T2).yes != mm.yes) ++perm_bad;
            if (solve_multi_to_single(inst, S2, t).yes != ms.yes) ++perm_bad;
            if (solve_multi_to_single_restricted(inst, S2, s, t).yes != mr.yes) ++perm_bad;
            // (b) labeled implies unlabeled
            if (lb.yes && !mm.yes) ++lab_bad;
            // (c) relaxation chain
            if ((mr.yes && !ms.yes) || (ms.yes && !ss.yes)) ++chain_bad;
            // (d) witnesses replay under the oracle's own geometry
            if (mm.yes && !oracle::replays(w, S, *mm.plan)) ++replay_bad;
            if (ms.yes && !oracle::replays(w, S, *ms.plan)) ++replay_bad;
            if (mr.yes && !oracle::replays(w, S, *mr.plan)) ++replay_bad;
            if (lb.yes && !oracle::replays(w, S, *lb.plan)) ++replay_bad;
            if (ss.yes && !oracle::replays(w, *ss.source, *ss.plan)) ++replay_bad;
            // (e) brute-force closure
            oracle_bad += (mm.yes != orc.m2m(S, T)) + (ms.yes != orc.m2s(S, t)) + (mr.yes != orc.m2sr(S, s, t)) +
                          (ss.yes != orc.s2s(s, t)) + (lb.yes != orc.labeled(S, T, a));
        }
    }
    std::ostringstream os;
    os << inst_count << " instances (<= " << kSolverMaxRobots << " robots, " << kSolverGrid << "x" << kSolverGrid
       << " half-grid), " << answers << " answers (" << yes << " yes); violations: permutation " << perm_bad << ", labeled "
       << lab_bad << ", chain " << chain_bad << ", replay " << replay_bad << ", oracle " << oracle_bad;
    return {perm_bad + lab_bad + chain_bad + replay_bad + oracle_bad == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Line()>>> criteria{
        {"gadget truth tables", gadget_tables},
        {"structural lemmas on gadget pairs", pair_lemmas},
        {"OR exclusion", or_exclusion},
        {"reduction cross-validation", crosscheck_agreement},
        {"labeled agreement", labeled_agreement},
        {"embedding audit", embedding_audit},
        {"geometry constants", geometry_constants},
        {"solver laws", solver_laws},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!only.empty() && !only.count(int(i + 1))) continue;
        Line l;
        try {
            l = criteria[i].second();
        } catch (const std::exception& e) {
            l = {false, std::string("exception: ") + e.what()};
        }
        all = all && l.pass;
        std::cout << (l.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << l.detail << std::endl;
    }
    return all ? 0 : 1;
}
