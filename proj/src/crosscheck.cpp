#include "nclmp/crosscheck.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

namespace nclmp {

std::string answer_name(Answer a) {
    switch (a) {
        case Answer::No: return "NO";
        case Answer::Yes: return "YES";
        case Answer::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

namespace {

std::optional<Orientation> terminal_orientation(const Workspace& ws, const MultiConfig& c) {
    try {
        return multiconfig_to_orientation(ws, c);
    } catch (const ArgumentError&) {
        return std::nullopt;
    }
}

// Order the flips of `diff` so that every intermediate orientation is valid.
bool order_flips(const ConstraintGraph& H, Orientation o, std::vector<int> diff, MoveWitness& out) {
    if (diff.empty()) return true;
    for (std::size_t k = 0; k < diff.size(); ++k) {
        int e = diff[k];
        o.flip(e);
        if (orientation_is_valid(H, o)) {
            std::vector<int> rest = diff;
            rest.erase(rest.begin() + long(k));
            out.push_back(e);
            if (order_flips(H, o, rest, out)) return true;
            out.pop_back();
        }
        o.flip(e);
    }
    return false;
}

}  // namespace

std::optional<ExtractedSequence> extract_ncl_sequence(const Workspace& ws, const MultiConfig& start,
                                                      const PathPlan& plan, std::string* why) {
    const auto& H = ws.host;
    auto fail = [&](std::string s) -> std::optional<ExtractedSequence> {
        if (why) *why = std::move(s);
        return std::nullopt;
    };
    MultiConfig c = start;
    std::optional<ExtractedSequence> seq;
    Orientation last;
    auto visit = [&](std::size_t step) -> bool {
        auto o = terminal_orientation(ws, c);
        if (!o) return true;
        if (!orientation_is_valid(H, *o)) {
            fail("terminal configuration after step " + std::to_string(step) + " reads as an invalid orientation");
            return false;
        }
        if (!seq) {
            seq = ExtractedSequence{*o, {}};
            last = *o;
            return true;
        }
        std::vector<int> diff;
        for (int e = 0; e < int(H.num_edges()); ++e)
            if (o->reversed(e) != last.reversed(e)) diff.push_back(e);
        if (diff.size() > 8 || !order_flips(H, last, diff, seq->moves)) {
            fail("no valid ordering of " + std::to_string(diff.size()) + " edge flips before step " + std::to_string(step));
            return false;
        }
        last = *o;
        return true;
    };
    if (!visit(0)) return std::nullopt;
    for (std::size_t k = 0; k < plan.size(); ++k) {
        auto it = std::find(c.begin(), c.end(), plan[k].from);
        if (it == c.end()) return fail("plan step " + std::to_string(k) + " moves no robot");
        *it = *it + step(plan[k].dir);
        if (!visit(k + 1)) return std::nullopt;
    }
    if (!seq) return fail("no terminal configuration along the plan");
    return seq;
}

CrossReport crosscheck(const ConstraintGraph& g, const GridEmbedding& emb, const CrossCase& c, const Budget& budget) {
    const auto t0 = std::chrono::steady_clock::now();
    CrossReport r;
    auto decided = [](bool yes) { return yes ? Answer::Yes : Answer::No; };

    // NCL side, on G
    try {
        if (const auto* p = std::get_if<F2FParams>(&c.params)) r.ncl = decided(solve_full_to_full(g, p->start, p->target, budget.ncl).yes);
        else if (const auto* p = std::get_if<F2EParams>(&c.params)) r.ncl = decided(solve_full_to_edge(g, p->start, p->edge, budget.ncl).yes);
        else {
            const auto& ep = std::get<E2EParams>(c.params);
            r.ncl = decided(solve_edge_to_edge(g, ep.from.edge, ep.from.head, ep.to.edge, ep.to.head, budget.ncl).yes);
        }
    } catch (const CapExceeded& e) {
        r.note = std::string("ncl: ") + e.what();
    }

    // motion side
    ReductionOutput red = reduce(g, emb, c.params, c.restricted, false);
    const auto& ws = red.workspace;
    const auto& inst = ws.instance;
    const auto& q = red.question;
    std::optional<PathPlan> plan;
    MultiConfig plan_start = q.start;
    try {
        switch (q.variant) {
            case Variant::M2M: {
                auto m = solve_multi_to_multi(inst, q.start, q.target, budget.motion);
                r.motion = decided(m.yes);
                r.motion_states = m.states;
                plan = m.plan;
                break;
            }
            case Variant::M2S:
            case Variant::M2SR: {
                auto m = q.variant == Variant::M2S ? solve_multi_to_single(inst, q.start, q.t, budget.motion)
                                                   : solve_multi_to_single_restricted(inst, q.start, q.s, q.t, budget.motion);
                r.motion = decided(m.yes);
                r.motion_states = m.states;
                plan = m.plan;
                break;
            }
            case Variant::S2S: {
                auto m = solve_single_to_single(inst, q.s, q.t, budget.motion);
                r.motion = decided(m.yes);
                r.motion_states = m.states;
                plan = m.plan;
                if (m.source) plan_start = *m.source;
                break;
            }
            case Variant::Labeled: break;
        }
    } catch (const CapExceeded& e) {
        r.note += (r.note.empty() ? "" : "; ") + std::string("motion: ") + e.what();
    }

    if (std::holds_alternative<F2FParams>(c.params)) {
        try {
            std::vector<int> id(q.start.size());
            for (std::size_t i = 0; i < id.size(); ++i) id[i] = int(i);
            auto m = solve_labeled(inst, q.start, q.target, id, budget.motion);
            r.labeled = decided(m.yes);
        } catch (const CapExceeded& e) {
            r.note += (r.note.empty() ? "" : "; ") + std::string("labeled: ") + e.what();
        }
        r.labeled_agree = r.labeled != Answer::Inconclusive && r.labeled == r.motion;
    }
    r.agree = r.ncl != Answer::Inconclusive && r.ncl == r.motion;

    // witness replay
    if (r.motion == Answer::Yes && plan) {
        std::string why;
        if (!replay_plan(inst, plan_start, *plan)) {
            r.replay_ok = false;
            why = "motion plan does not replay";
        } else if (auto seq = extract_ncl_sequence(ws, plan_start, *plan, &why)) {
            const auto& H = ws.host;
            r.ncl_moves = seq->moves.size();
            auto end = replay(H, seq->start, seq->moves);
            if (!end) {
                r.replay_ok = false;
                why = "extracted move sequence is not legal on H";
            } else if (const auto* p = std::get_if<F2FParams>(&c.params)) {
                if (!(seq->start == lift_orientation(emb, g, p->start)) || !(*end == lift_orientation(emb, g, p->target))) {
                    r.replay_ok = false;
                    why = "extracted sequence does not join the lifted orientations";
                }
            } else if (const auto* p = std::get_if<F2EParams>(&c.params)) {
                int he = designated_h_edge(emb, p->edge);
                if (!(seq->start == lift_orientation(emb, g, p->start)) || end->reversed(he) == seq->start.reversed(he)) {
                    r.replay_ok = false;
                    why = "extracted sequence does not flip the designated edge";
                }
            } else {
                const auto& ep = std::get<E2EParams>(c.params);
                auto points_at = [&](const Orientation& o, const EdgeDir& d) {
                    int he = designated_h_edge(emb, d.edge);
                    const auto& path = emb.path[d.edge];
                    int want_head = d.head == g.edge(d.edge).v ? path[1] : path[0];
                    return o.head(H, he) == want_head;
                };
                if (!points_at(seq->start, ep.from) || !points_at(*end, ep.to)) {
                    r.replay_ok = false;
                    why = "extracted sequence does not have the designated edge directions at its ends";
                }
            }
        } else {
            r.replay_ok = false;
        }
        if (!r.replay_ok) r.note += (r.note.empty() ? "" : "; ") + std::string("replay: ") + why;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CorpusCase> crosscheck_corpus(Rng& rng, int trials, int max_vertices, const std::optional<ConstraintGraph>& fixed) {
    if (max_vertices < 4 && !fixed) throw ArgumentError("crosscheck_corpus: need at least 4 vertices");
    std::vector<CorpusCase> out;
    auto pick = [&](std::size_t n) { return std::size_t(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)); };
    for (int k = 0; k < trials; ++k) {
        ConstraintGraph g;
        std::vector<Orientation> os;
        if (fixed) {
            g = *fixed;
            os = enumerate_valid_orientations(g);
            if (os.empty()) throw PreconditionError("crosscheck_corpus: graph has no valid orientation");
        } else {
            const int sizes = (max_vertices - 4) / 2 + 1;
            do {
                g = random_constraint_graph(rng, 4 + 2 * int(pick(std::size_t(sizes))));
                os = enumerate_valid_orientations(g);
            } while (os.empty());
        }
        CorpusCase cc{g, {}, ""};
        const int m = int(g.num_edges());
        auto head_of = [&](int e) { return pick(2) ? g.edge(e).u : g.edge(e).v; };
        std::string label = "n=" + std::to_string(g.num_vertices()) + " ";
        switch (k % 3) {
            case 0: {
                const auto& a = os[pick(os.size())];
                const auto& b = os[pick(os.size())];
                cc.c = {NclProblem::F2F, F2FParams{a, b}, false};
                label += "f2f";
                break;
            }
            case 1: {
                int e = int(pick(std::size_t(m)));
                cc.c = {NclProblem::F2E, F2EParams{os[pick(os.size())], e}, (k / 3) % 2 == 1};
                label += std::string(cc.c.restricted ? "f2e/m2sr " : "f2e/m2s ") + g.edge(e).id;
                break;
            }
            default: {
                int e1 = int(pick(std::size_t(m))), e2 = int(pick(std::size_t(m)));
                int h1 = head_of(e1), h2 = head_of(e2);
                cc.c = {NclProblem::E2E, E2EParams{{e1, h1}, {e2, h2}}, false};
                label += "e2e " + g.edge(e1).id + "->" + g.vertex(h1).id + " " + g.edge(e2).id + "->" + g.vertex(h2).id;
                break;
            }
        }
        cc.label = label;
        out.push_back(std::move(cc));
    }
    return out;
}

}  // namespace nclmp
