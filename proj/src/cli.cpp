#include "nclmp/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

#include "nclmp/crosscheck.hpp"
#include "nclmp/gadgets.hpp"
#include "nclmp/io.hpp"
#include "nclmp/svg.hpp"

namespace nclmp {

namespace {

ConstraintGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

GridEmbedding load_embedding(const ConstraintGraph& g, const std::string& layout) {
    if (layout.empty()) return embed(g);
    auto emb = embedding_from_layout(g, parse_layout(read_file(layout)));
    auto rep = check_embedding(g, emb);
    if (!rep.ok()) throw PreconditionError("layout " + layout + ": " + rep.violations.front());
    return emb;
}

Orientation load_orientation(const ConstraintGraph& g, const std::string& path) {
    return parse_orientation(read_file(path), g);
}

// "e3:b" = edge e3 pointing at vertex b.
EdgeDir parse_edge_dir(const ConstraintGraph& g, const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ArgumentError("expected EDGE:VERTEX, got '" + s + "'");
    int e = g.edge_index(s.substr(0, colon));
    int v = g.vertex_index(s.substr(colon + 1));
    if (e < 0) throw ArgumentError("unknown edge '" + s.substr(0, colon) + "'");
    if (v < 0) throw ArgumentError("unknown vertex '" + s.substr(colon + 1) + "'");
    if (g.edge(e).u != v && g.edge(e).v != v) throw ArgumentError("vertex " + g.vertex(v).id + " is not an end of " + g.edge(e).id);
    return {e, v};
}

int edge_arg(const ConstraintGraph& g, const std::string& id) {
    if (id.empty()) throw ArgumentError("--edge is required");
    int e = g.edge_index(id);
    if (e < 0) throw ArgumentError("unknown edge '" + id + "'");
    return e;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") out << text;
    else write_file(path, text);
}

std::vector<RobotStyle> styles_from(const InstanceDoc& doc) {
    std::vector<RobotStyle> st(std::size_t(doc.instance.robot_count), RobotStyle::Plain);
    for (const auto& line : doc.provenance) {
        auto w = split_ws(line);
        if (w.size() < 4 || w[0] != "robot" || w[2] != "=") continue;
        std::size_t i = 0;
        try {
            i = std::stoul(w[1]);
        } catch (const std::exception&) {
            continue;
        }
        if (i >= st.size()) continue;
        if (w[3] == "edge") st[i] = RobotStyle::Edge;
        else if (w[3] == "vertex") st[i] = RobotStyle::Vertex;
    }
    return st;
}

struct Opts {
    // shared
    std::string graph, layout, out, problem = "f2f", edge, from, to;
    std::vector<std::string> orients;
    bool restricted = false, labeled = false;
    std::size_t max_states = 0;
    // solve-ncl
    std::string witness, start_out;
    // solve-mp
    std::string variant, instance, plan;
    // verify-gadgets
    bool pairs = false;
    std::string gallery;
    // crosscheck
    int trials = 20, max_vertices = 6;
    std::uint64_t seed = 1;
    bool timing = false, verbose = false;
    // render
    std::string config, frames_dir;
    long frame = -1;
    bool overlay = false;
    int scale = 8;
};

int cmd_validate(const Opts& o, std::ostream& out) {
    auto g = load_graph(o.graph);
    auto rep = validate_graph(g);
    if (rep.ok() && !o.layout.empty()) {
        auto emb = embedding_from_layout(g, parse_layout(read_file(o.layout)));
        rep = check_embedding(g, emb);
    }
    out << (rep.ok() ? "VALID" : "INVALID") << "\n";
    for (const auto& v : rep.violations) out << "  " << v << "\n";
    return rep.ok() ? 0 : 1;
}

int cmd_embed(const Opts& o, std::ostream& out) {
    auto g = load_graph(o.graph);
    auto emb = embed(g);
    emit(out, o.out, serialize_layout(layout_of(g, emb)));
    return 0;
}

ReduceParams params_for(const ConstraintGraph& g, NclProblem p, const Opts& o) {
    auto need = [&](std::size_t n) {
        if (o.orients.size() != n)
            throw ArgumentError(problem_name(p) + " takes " + std::to_string(n) + " orientation file(s), got " +
                                std::to_string(o.orients.size()));
    };
    switch (p) {
        case NclProblem::F2F:
            need(2);
            return F2FParams{load_orientation(g, o.orients[0]), load_orientation(g, o.orients[1])};
        case NclProblem::F2E:
            need(1);
            return F2EParams{load_orientation(g, o.orients[0]), edge_arg(g, o.edge)};
        case NclProblem::E2E:
            need(0);
            if (o.from.empty() || o.to.empty()) throw ArgumentError("e2e needs --from and --to");
            return E2EParams{parse_edge_dir(g, o.from), parse_edge_dir(g, o.to)};
    }
    throw ArgumentError("unknown problem");
}

int cmd_reduce(const Opts& o, std::ostream& out) {
    auto g = load_graph(o.graph);
    auto emb = load_embedding(g, o.layout);
    auto p = parse_problem(o.problem);
    auto r = reduce(g, emb, params_for(g, p, o), o.restricted, o.labeled);
    InstanceDoc doc{r.workspace.instance, r.question, r.provenance.lines(r.workspace.host)};
    emit(out, o.out, serialize_instance(doc));
    return 0;
}

int cmd_solve_ncl(const Opts& o, std::ostream& out) {
    auto g = load_graph(o.graph);
    auto rep = validate_graph(g);
    if (!rep.ok()) throw PreconditionError("invalid graph: " + rep.violations.front());
    auto p = parse_problem(o.problem);
    auto params = params_for(g, p, o);
    NclLimits lim;
    if (o.max_states) lim.max_states = o.max_states;
    std::optional<Orientation> start;
    MoveWitness w;
    bool yes = false;
    try {
        if (const auto* f = std::get_if<F2FParams>(&params)) {
            auto r = solve_full_to_full(g, f->start, f->target, lim);
            yes = r.yes;
            start = f->start;
            if (r.witness) w = *r.witness;
        } else if (const auto* fe = std::get_if<F2EParams>(&params)) {
            auto r = solve_full_to_edge(g, fe->start, fe->edge, lim);
            yes = r.yes;
            start = fe->start;
            if (r.witness) w = *r.witness;
        } else {
            const auto& ee = std::get<E2EParams>(params);
            auto r = solve_edge_to_edge(g, ee.from.edge, ee.from.head, ee.to.edge, ee.to.head, lim);
            yes = r.yes;
            start = r.start;
            w = r.witness;
        }
    } catch (const CapExceeded& c) {
        out << "INCONCLUSIVE\n";
        out << "# cap reached: " << c.what() << "\n";
        return 0;
    }
    out << (yes ? "YES" : "NO") << "\n";
    if (yes && !o.witness.empty()) write_file(o.witness, serialize_ncl_witness(g, w));
    if (yes && !o.start_out.empty() && start) write_file(o.start_out, serialize_orientation(g, *start));
    return 0;
}

int cmd_solve_mp(const Opts& o, std::ostream& out) {
    auto doc = parse_instance(read_file(o.instance));
    if (!doc.question) throw ArgumentError(o.instance + ": no question records");
    Question q = *doc.question;
    const Variant want = parse_variant(o.variant);
    if (want != q.variant) {
        if (want == Variant::Labeled && q.variant == Variant::M2M) {
            q.assignment.clear();
            for (std::size_t i = 0; i < q.start.size(); ++i) q.assignment.push_back(int(i));
        } else if (!(want == Variant::M2S && q.variant == Variant::M2SR)) {
            throw ArgumentError("instance asks " + variant_tag(q.variant) + ", cannot answer as " + o.variant);
        }
        q.variant = want;
    }
    const Instance& inst = doc.instance;
    MotionLimits lim;
    if (o.max_states) lim.max_states = o.max_states;
    bool yes = false;
    std::optional<PathPlan> plan;
    MultiConfig from = q.start;
    std::size_t states = 0;
    try {
        switch (q.variant) {
            case Variant::M2M: {
                auto r = solve_multi_to_multi(inst, q.start, q.target, lim);
                yes = r.yes, plan = r.plan, states = r.states;
                break;
            }
            case Variant::M2S: {
                auto r = solve_multi_to_single(inst, q.start, q.t, lim);
                yes = r.yes, plan = r.plan, states = r.states;
                break;
            }
            case Variant::M2SR: {
                auto r = solve_multi_to_single_restricted(inst, q.start, q.s, q.t, lim);
                yes = r.yes, plan = r.plan, states = r.states;
                break;
            }
            case Variant::Labeled: {
                auto r = solve_labeled(inst, q.start, q.target, q.assignment, lim);
                yes = r.yes, plan = r.plan, states = r.states;
                break;
            }
            case Variant::S2S: {
                auto r = solve_single_to_single(inst, q.s, q.t, lim);
                yes = r.yes, plan = r.plan, states = r.states;
                if (r.source) from = *r.source;
                break;
            }
        }
    } catch (const CapExceeded& c) {
        out << "INCONCLUSIVE\n";
        out << "# cap reached: " << c.what() << "\n";
        return 0;
    }
    out << (yes ? "YES" : "NO") << "\n";
    out << "# states " << states << "\n";
    if (yes && plan && !o.plan.empty()) write_file(o.plan, serialize_plan(plan_doc(from, *plan)));
    return 0;
}

void write_gallery(const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (auto k : {VertexKind::CONNECTOR, VertexKind::AND, VertexKind::OR})
        for (const auto& gd : gadget_variants(k)) {
            Instance inst = gadget_instance(gd);
            std::vector<PortMode> free(gd.ports.size(), PortMode::Free);
            auto sg = enumerate_gadget_states(gd, free);
            RenderOptions ro;
            ro.terminal_overlay = true;
            for (std::size_t i = 0; i < std::size_t(inst.robot_count); ++i)
                ro.styles.push_back(i < gd.ports.size() ? RobotStyle::Edge : RobotStyle::Vertex);
            std::string stem = dir + "/" + gd.design + "_r" + std::to_string(gd.rotation * 90);
            write_file(stem + ".svg", render_svg(inst, sg.nodes.front(), ro));
            InstanceDoc doc{inst, std::nullopt, {}};
            for (std::size_t i = 0; i < gd.ports.size(); ++i)
                doc.provenance.push_back("robot " + std::to_string(i) + " = edge port " + std::to_string(gd.ports[i].role) +
                                         " weight " + std::to_string(gd.ports[i].weight));
            for (std::size_t j = 0; j < gd.vertex_tracks.size(); ++j)
                doc.provenance.push_back("robot " + std::to_string(gd.ports.size() + j) + " = vertex " +
                                         kind_name(gd.kind) + " slot " + std::to_string(j));
            write_file(stem + ".inst", serialize_instance(doc));
        }
}

int cmd_verify_gadgets(const Opts& o, std::ostream& out) {
    bool ok = true;
    for (auto k : {VertexKind::CONNECTOR, VertexKind::AND, VertexKind::OR}) {
        auto r = verify_gadget_semantics(k);
        out << kind_name(k) << ": " << (r.ok() ? "ok" : "FAIL") << " variants=" << r.variants << " states=" << r.states
            << "\n";
        for (const auto& p : r.problems) out << "  " << p << "\n";
        ok = ok && r.ok();
    }
    if (o.pairs) {
        auto s = verify_all_pairs();
        bool pok = s.edge_bad + s.vertex_bad + s.special_bad + s.unique_bad == 0;
        out << "pairs: " << (pok ? "ok" : "FAIL") << " pairs=" << s.pairs << " max_edge_positions=" << s.max_edge_positions
            << " max_vertex_positions=" << s.max_vertex_positions << " max_special_positions=" << s.max_special_positions
            << " edge_bad=" << s.edge_bad << " vertex_bad=" << s.vertex_bad << " special_bad=" << s.special_bad
            << " unique_bad=" << s.unique_bad << "\n";
        for (const auto& e : s.examples) out << "  " << e << "\n";
        ok = ok && pok;
    }
    if (!o.gallery.empty()) write_gallery(o.gallery);
    return ok ? 0 : 1;
}

int cmd_crosscheck(const Opts& o, std::ostream& out) {
    std::optional<ConstraintGraph> fixed;
    if (!o.graph.empty()) fixed = load_graph(o.graph);
    Rng rng(o.seed);
    auto corpus = crosscheck_corpus(rng, o.trials, o.max_vertices, fixed);
    int agree = 0, disagree = 0, inconclusive = 0, replay_bad = 0, labeled_bad = 0;
    double total = 0;
    std::optional<GridEmbedding> fixed_emb;
    if (fixed) fixed_emb = embed(*fixed);
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const auto& cc = corpus[k];
        auto emb = fixed_emb ? *fixed_emb : embed(cc.g);
        auto r = crosscheck(cc.g, emb, cc.c);
        total += r.seconds;
        bool decided = r.ncl != Answer::Inconclusive && r.motion != Answer::Inconclusive;
        if (!decided) ++inconclusive;
        else if (r.agree) ++agree;
        else ++disagree;
        if (!r.replay_ok) ++replay_bad;
        if (!r.labeled_agree) ++labeled_bad;
        if (o.verbose || (decided && !r.agree) || !r.replay_ok || !r.labeled_agree || !decided) {
            out << "case " << k << " [" << cc.label << "] ncl=" << answer_name(r.ncl) << " motion=" << answer_name(r.motion);
            if (cc.c.problem == NclProblem::F2F) out << " labeled=" << answer_name(r.labeled);
            out << " states=" << r.motion_states;
            if (o.timing) out << " seconds=" << std::fixed << std::setprecision(3) << r.seconds << std::defaultfloat;
            if (!r.note.empty()) out << " note=" << r.note;
            out << "\n";
        }
    }
    out << "cases " << corpus.size() << " agree " << agree << " disagree " << disagree << " inconclusive " << inconclusive
        << " replay_failures " << replay_bad << " labeled_disagree " << labeled_bad << "\n";
    if (o.timing) out << "seconds " << std::fixed << std::setprecision(3) << total << std::defaultfloat << "\n";
    return disagree == 0 && replay_bad == 0 && labeled_bad == 0 ? 0 : 1;
}

int cmd_render(const Opts& o, std::ostream& out) {
    auto doc = parse_instance(read_file(o.instance));
    RenderOptions ro;
    ro.scale = o.scale;
    ro.terminal_overlay = o.overlay;
    ro.styles = styles_from(doc);
    if (!o.plan.empty()) {
        auto pd = parse_plan(read_file(o.plan));
        auto plan = path_plan(pd);
        if (!o.frames_dir.empty()) {
            std::filesystem::create_directories(o.frames_dir);
            auto frames = render_plan_frames(doc.instance, pd.start, plan, ro);
            for (std::size_t i = 0; i < frames.size(); ++i) {
                std::ostringstream name;
                name << o.frames_dir << "/frame_" << std::setw(5) << std::setfill('0') << i << ".svg";
                write_file(name.str(), frames[i]);
            }
            out << frames.size() << " frames\n";
            return 0;
        }
        if (o.frame < 0) throw ArgumentError("--plan needs --frame K or --frames-dir DIR");
        emit(out, o.out, render_plan_frame(doc.instance, pd.start, plan, std::size_t(o.frame), ro));
        return 0;
    }
    std::optional<MultiConfig> cfg;
    if (!o.config.empty()) {
        if (!doc.question) throw ArgumentError("--config needs question records in the instance");
        const auto& q = *doc.question;
        if (o.config == "start" && !q.start.empty()) cfg = q.start;
        else if (o.config == "target" && !q.target.empty()) cfg = q.target;
        else throw ArgumentError("instance has no " + o.config + " configuration");
        if (cfg->size() != ro.styles.size()) ro.styles.clear();
    }
    emit(out, o.out, render_svg(doc.instance, cfg, ro));
    return 0;
}

}  // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nondeterministic constraint logic and unit-square motion planning"};
    app.name("nclmp");
    app.require_subcommand(1);
    Opts o;
    const std::vector<std::string> problems{"f2f", "f2e", "e2e"};
    const std::vector<std::string> variants{"m2m", "m2s", "m2sr", "s2s", "labeled"};

    auto* validate = app.add_subcommand("validate", "check a constraint graph (and optionally a layout)");
    validate->add_option("graph", o.graph)->required();
    validate->add_option("--layout", o.layout, "layout file to audit against the graph");

    auto* emb = app.add_subcommand("embed", "grid-embed a planar AND/OR graph");
    emb->add_option("graph", o.graph)->required();
    emb->add_option("-o,--output", o.out);

    auto* red = app.add_subcommand("reduce", "compile an NCL question into a motion-planning instance");
    red->add_option("--problem", o.problem)->required()->check(CLI::IsMember(problems));
    red->add_option("graph", o.graph)->required();
    red->add_option("orientations", o.orients, "start (and target) orientation files");
    red->add_option("--edge", o.edge, "f2e: edge to reverse");
    red->add_option("--from", o.from, "e2e: EDGE:VERTEX the edge first points at");
    red->add_option("--to", o.to, "e2e: EDGE:VERTEX to reach");
    red->add_flag("--restricted", o.restricted, "f2e: emit m2sr instead of m2s");
    red->add_flag("--labeled", o.labeled, "f2f: emit labeled with the identity assignment");
    red->add_option("--layout", o.layout, "use this layout instead of computing one");
    red->add_option("-o,--output", o.out);

    auto* sn = app.add_subcommand("solve-ncl", "decide an NCL reconfiguration question");
    sn->add_option("--problem", o.problem)->required()->check(CLI::IsMember(problems));
    sn->add_option("graph", o.graph)->required();
    sn->add_option("orientations", o.orients);
    sn->add_option("--edge", o.edge);
    sn->add_option("--from", o.from);
    sn->add_option("--to", o.to);
    sn->add_option("--witness", o.witness, "write the move sequence here on YES");
    sn->add_option("--start-out", o.start_out, "write the start orientation here on YES");
    sn->add_option("--max-states", o.max_states);

    auto* sm = app.add_subcommand("solve-mp", "decide a motion-planning question");
    sm->add_option("--variant", o.variant)->required()->check(CLI::IsMember(variants));
    sm->add_option("instance", o.instance)->required();
    sm->add_option("--plan", o.plan, "write the plan here on YES");
    sm->add_option("--max-states", o.max_states);

    auto* vg = app.add_subcommand("verify-gadgets", "exhaustively verify the gadget library");
    vg->add_flag("--pairs", o.pairs, "also verify every adjacent pair");
    vg->add_option("--gallery", o.gallery, "write one SVG and instance dump per gadget variant");

    auto* cc = app.add_subcommand("crosscheck", "compare NCL and motion-planning answers on a seeded corpus");
    cc->add_option("graph", o.graph, "use this graph for every case");
    cc->add_option("--trials", o.trials)->check(CLI::NonNegativeNumber);
    cc->add_option("--seed", o.seed);
    cc->add_option("--max-vertices", o.max_vertices)->check(CLI::Range(4, 20));
    cc->add_flag("--timing", o.timing, "include wall-clock times (non-deterministic)");
    cc->add_flag("-v,--verbose", o.verbose, "one line per case");

    auto* rd = app.add_subcommand("render", "draw an instance as SVG");
    rd->add_option("instance", o.instance)->required();
    rd->add_option("--config", o.config)->check(CLI::IsMember({"start", "target"}));
    rd->add_option("--plan", o.plan);
    rd->add_option("--frame", o.frame);
    rd->add_option("--frames-dir", o.frames_dir);
    rd->add_flag("--overlay", o.overlay, "mark every lattice point where a robot fits");
    rd->add_option("--scale", o.scale)->check(CLI::Range(1, 64));
    rd->add_option("-o,--output", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (*validate) return cmd_validate(o, out);
        if (*emb) return cmd_embed(o, out);
        if (*red) return cmd_reduce(o, out);
        if (*sn) return cmd_solve_ncl(o, out);
        if (*sm) return cmd_solve_mp(o, out);
        if (*vg) return cmd_verify_gadgets(o, out);
        if (*cc) return cmd_crosscheck(o, out);
        if (*rd) return cmd_render(o, out);
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << "\n";
    } catch (const ArgumentError& e) {
        err << "argument error: " << e.what() << "\n";
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
    } catch (const PlanarityError& e) {
        err << "not planar: " << e.what() << "\n";
    }
    return 2;
}

}  // namespace nclmp
