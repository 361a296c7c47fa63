#include "nclmp/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nclmp {

namespace {

struct Tok {
    std::string text;
    int col;
};

struct Line {
    int no;
    std::vector<Tok> toks;
    [[noreturn]] void fail(std::size_t k, const std::string& msg) const {
        int col = k < toks.size() ? toks[k].col : (toks.empty() ? 1 : toks.back().col + int(toks.back().text.size()));
        throw FormatError("line " + std::to_string(no) + ", column " + std::to_string(col) + ": " + msg);
    }
    const std::string& at(std::size_t k, const char* what) const {
        if (k >= toks.size()) fail(k, std::string("missing ") + what);
        return toks[k].text;
    }
    int num(std::size_t k, const char* what) const {
        const auto& s = at(k, what);
        int v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) fail(k, std::string("expected integer ") + what + ", got '" + s + "'");
        return v;
    }
    Pt pt(std::size_t k) const { return {num(k, "x"), num(k + 1, "y")}; }
    void arity(std::size_t n) const {
        if (toks.size() > n) fail(n, "unexpected token '" + toks[n].text + "'");
        if (toks.size() < n) fail(toks.size(), "too few fields");
    }
};

// Tokenised non-empty lines after the format header, which must name `fmt`.
std::vector<Line> lex(std::string_view text, const std::string& fmt) {
    std::vector<Line> out;
    int no = 0;
    std::size_t pos = 0;
    bool header = false;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++no;
        if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
        Line ln{no, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            std::size_t s = i;
            while (i < raw.size() && !(raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            if (i > s) ln.toks.push_back({std::string(raw.substr(s, i - s)), int(s) + 1});
        }
        if (ln.toks.empty()) continue;
        if (!header) {
            if (ln.toks[0].text != "format") ln.fail(0, "expected 'format " + fmt + " v1' header");
            if (ln.at(1, "format name") != fmt) ln.fail(1, "expected format '" + fmt + "', got '" + ln.toks[1].text + "'");
            if (ln.at(2, "format version") != "v1") ln.fail(2, "unsupported version '" + ln.toks[2].text + "'");
            ln.arity(3);
            header = true;
            continue;
        }
        out.push_back(std::move(ln));
        if (end == text.size()) break;
    }
    if (!header) throw FormatError("line 1, column 1: missing 'format " + fmt + " v1' header");
    return out;
}

std::string pt_str(Pt p) { return std::to_string(p.x) + " " + std::to_string(p.y); }

}  // namespace

ConstraintGraph parse_graph(std::string_view text) {
    std::vector<Vertex> vs;
    std::vector<EdgeSpec> es;
    std::set<std::string> vids, eids;
    for (const auto& ln : lex(text, "graph")) {
        const auto& kw = ln.toks[0].text;
        if (kw == "vertex") {
            if (ln.toks.size() != 3 && ln.toks.size() != 4) ln.arity(ln.toks.size() < 3 ? 3 : 4);
            const auto& id = ln.at(1, "vertex id");
            if (!vids.insert(id).second) ln.fail(1, "duplicate vertex id '" + id + "'");
            VertexKind k;
            try {
                k = parse_kind(ln.at(2, "kind"));
            } catch (const FormatError&) {
                ln.fail(2, "unknown kind '" + ln.toks[2].text + "'");
            }
            int mf = ln.toks.size() == 4 ? ln.num(3, "min_flow") : -1;
            if (ln.toks.size() == 4 && mf < 0) ln.fail(3, "min_flow must be non-negative");
            vs.push_back({id, k, mf});
        } else if (kw == "edge") {
            ln.arity(5);
            const auto& id = ln.at(1, "edge id");
            if (!eids.insert(id).second) ln.fail(1, "duplicate edge id '" + id + "'");
            if (ln.toks[2].text == ln.toks[3].text) ln.fail(3, "self-loop on '" + ln.toks[2].text + "'");
            for (std::size_t k = 2; k <= 3; ++k)
                if (!vids.count(ln.toks[k].text)) ln.fail(k, "unknown vertex '" + ln.toks[k].text + "'");
            int w = ln.num(4, "weight");
            if (w <= 0) ln.fail(4, "weight must be positive");
            es.push_back({id, ln.toks[2].text, ln.toks[3].text, w});
        } else {
            ln.fail(0, "unknown record '" + kw + "'");
        }
    }
    return ConstraintGraph(std::move(vs), es);
}

std::string serialize_graph(const ConstraintGraph& g) {
    std::ostringstream os;
    os << "format graph v1\n";
    for (int v = 0; v < int(g.num_vertices()); ++v) {
        const auto& vx = g.vertex(v);
        int w = g.incident(v).empty() ? 2 : g.edge(g.incident(v).front()).weight;
        os << "vertex " << vx.id << " " << kind_name(vx.kind);
        if (vx.min_flow != default_min_flow(vx.kind, w)) os << " " << vx.min_flow;
        os << "\n";
    }
    for (const auto& e : g.edges())
        os << "edge " << e.id << " " << g.vertex(e.u).id << " " << g.vertex(e.v).id << " " << e.weight << "\n";
    return os.str();
}

bool same_graph(const ConstraintGraph& a, const ConstraintGraph& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
    for (int v = 0; v < int(a.num_vertices()); ++v) {
        const auto &x = a.vertex(v), &y = b.vertex(v);
        if (x.id != y.id || x.kind != y.kind || x.min_flow != y.min_flow) return false;
    }
    for (int e = 0; e < int(a.num_edges()); ++e) {
        const auto &x = a.edge(e), &y = b.edge(e);
        if (x.id != y.id || x.u != y.u || x.v != y.v || x.weight != y.weight) return false;
    }
    return true;
}

Orientation parse_orientation(std::string_view text, const ConstraintGraph& g) {
    Orientation o(g.num_edges());
    std::vector<bool> seen(g.num_edges(), false);
    for (const auto& ln : lex(text, "orientation")) {
        if (ln.toks[0].text != "head") ln.fail(0, "unknown record '" + ln.toks[0].text + "'");
        ln.arity(3);
        int e = g.edge_index(ln.toks[1].text);
        if (e < 0) ln.fail(1, "unknown edge '" + ln.toks[1].text + "'");
        if (seen[e]) ln.fail(1, "edge '" + ln.toks[1].text + "' given twice");
        seen[e] = true;
        int v = g.vertex_index(ln.toks[2].text);
        if (v != g.edge(e).u && v != g.edge(e).v) ln.fail(2, "'" + ln.toks[2].text + "' is not an endpoint of " + ln.toks[1].text);
        o.set_head(g, e, v);
    }
    for (int e = 0; e < int(g.num_edges()); ++e)
        if (!seen[e]) throw FormatError("orientation: no head given for edge '" + g.edge(e).id + "'");
    return o;
}

std::string serialize_orientation(const ConstraintGraph& g, const Orientation& o) {
    std::ostringstream os;
    os << "format orientation v1\n";
    for (int e = 0; e < int(g.num_edges()); ++e) os << "head " << g.edge(e).id << " " << g.vertex(o.head(g, e)).id << "\n";
    return os.str();
}

LayoutDoc parse_layout(std::string_view text) {
    LayoutDoc doc;
    for (const auto& ln : lex(text, "layout")) {
        const auto& kw = ln.toks[0].text;
        if (kw == "place") {
            ln.arity(4);
            doc.places.push_back({ln.toks[1].text, ln.pt(2)});
        } else if (kw == "path") {
            if (ln.toks.size() < 4) ln.fail(ln.toks.size(), "path needs an edge id and at least two vertices");
            std::vector<std::string> ids;
            for (std::size_t k = 2; k < ln.toks.size(); ++k) ids.push_back(ln.toks[k].text);
            doc.paths.push_back({ln.toks[1].text, ids});
        } else {
            ln.fail(0, "unknown record '" + kw + "'");
        }
    }
    return doc;
}

std::string serialize_layout(const LayoutDoc& doc) {
    std::ostringstream os;
    os << "format layout v1\n";
    for (const auto& [id, p] : doc.places) os << "place " << id << " " << pt_str(p) << "\n";
    for (const auto& [id, vs] : doc.paths) {
        os << "path " << id;
        for (const auto& v : vs) os << " " << v;
        os << "\n";
    }
    return os.str();
}

InstanceDoc parse_instance(std::string_view text) {
    InstanceDoc doc;
    bool units = false, bounds = false, robots = false;
    std::optional<Question> q;
    std::vector<Pt> tracked, goal;
    for (const auto& ln : lex(text, "instance")) {
        const auto& kw = ln.toks[0].text;
        if (kw == "units") {
            ln.arity(2);
            if (ln.toks[1].text != "half") ln.fail(1, "only 'units half' is supported, got '" + ln.toks[1].text + "'");
            units = true;
        } else if (kw == "bounds") {
            ln.arity(5);
            doc.instance.bounds = {ln.num(1, "x0"), ln.num(2, "y0"), ln.num(3, "x1"), ln.num(4, "y1")};
            if (doc.instance.bounds.x0 >= doc.instance.bounds.x1 || doc.instance.bounds.y0 >= doc.instance.bounds.y1)
                ln.fail(1, "empty bounds");
            bounds = true;
        } else if (kw == "robots") {
            ln.arity(2);
            doc.instance.robot_count = ln.num(1, "robot count");
            if (doc.instance.robot_count < 0) ln.fail(1, "negative robot count");
            robots = true;
        } else if (kw == "obstacle") {
            if (ln.toks.size() % 2 == 0) ln.fail(ln.toks.size(), "obstacle needs x y pairs");
            Polygon poly;
            for (std::size_t k = 1; k < ln.toks.size(); k += 2) poly.pts.push_back(ln.pt(k));
            if (auto why = polygon_problem(poly); !why.empty()) ln.fail(1, "bad obstacle: " + why);
            doc.instance.obstacles.push_back(poly);
        } else if (kw == "point") {
            ln.arity(3);
            doc.instance.point_obstacles.push_back(ln.pt(1));
        } else if (kw == "question") {
            ln.arity(2);
            if (q) ln.fail(0, "second question record");
            try {
                q = Question{};
                q->variant = parse_variant(ln.toks[1].text);
            } catch (const FormatError&) {
                ln.fail(1, "unknown question variant '" + ln.toks[1].text + "'");
            }
        } else if (kw == "start" || kw == "target" || kw == "tracked" || kw == "goal" || kw == "assign") {
            if (!q) ln.fail(0, "'" + kw + "' before the question record");
            ln.arity(3);
            if (kw == "start") q->start.push_back(ln.pt(1));
            else if (kw == "target") q->target.push_back(ln.pt(1));
            else if (kw == "tracked") tracked.push_back(ln.pt(1));
            else if (kw == "goal") goal.push_back(ln.pt(1));
            else {
                int i = ln.num(1, "robot"), j = ln.num(2, "target index");
                if (i != int(q->assignment.size())) ln.fail(1, "assign records must be in robot order");
                q->assignment.push_back(j);
            }
        } else if (kw == "provenance") {
            std::string s;
            for (std::size_t k = 1; k < ln.toks.size(); ++k) s += (k > 1 ? " " : "") + ln.toks[k].text;
            doc.provenance.push_back(s);
        } else {
            ln.fail(0, "unknown record '" + kw + "'");
        }
    }
    if (!units) throw FormatError("instance: missing 'units half'");
    if (!bounds) throw FormatError("instance: missing 'bounds'");
    if (!robots) throw FormatError("instance: missing 'robots'");
    if (q) {
        const auto m = std::size_t(doc.instance.robot_count);
        const Variant v = q->variant;
        const bool need_start = v != Variant::S2S, need_target = v == Variant::M2M || v == Variant::Labeled;
        const bool need_tracked = v == Variant::M2SR || v == Variant::S2S, need_goal = v == Variant::M2S || v == Variant::M2SR || v == Variant::S2S;
        const std::string tag = variant_tag(v);
        if (need_start != !q->start.empty() || (need_start && q->start.size() != m))
            throw FormatError("question " + tag + ": expected " + (need_start ? std::to_string(m) : "no") + " start records");
        if (need_target != !q->target.empty() || (need_target && q->target.size() != m))
            throw FormatError("question " + tag + ": expected " + (need_target ? std::to_string(m) : "no") + " target records");
        if (tracked.size() != (need_tracked ? 1u : 0u)) throw FormatError("question " + tag + ": wrong number of tracked records");
        if (goal.size() != (need_goal ? 1u : 0u)) throw FormatError("question " + tag + ": wrong number of goal records");
        if ((v == Variant::Labeled) != !q->assignment.empty() || (v == Variant::Labeled && q->assignment.size() != m))
            throw FormatError("question " + tag + ": assign records do not match");
        if (need_tracked) q->s = tracked[0];
        if (need_goal) q->t = goal[0];
        doc.question = q;
    }
    return doc;
}

std::string serialize_instance(const InstanceDoc& doc) {
    std::ostringstream os;
    const auto& in = doc.instance;
    os << "format instance v1\nunits half\n";
    os << "bounds " << in.bounds.x0 << " " << in.bounds.y0 << " " << in.bounds.x1 << " " << in.bounds.y1 << "\n";
    os << "robots " << in.robot_count << "\n";
    for (const auto& p : in.obstacles) {
        os << "obstacle";
        for (Pt c : p.pts) os << " " << pt_str(c);
        os << "\n";
    }
    for (Pt p : in.point_obstacles) os << "point " << pt_str(p) << "\n";
    if (doc.question) {
        const auto& q = *doc.question;
        const Variant v = q.variant;
        os << "question " << variant_tag(v) << "\n";
        for (Pt p : q.start) os << "start " << pt_str(p) << "\n";
        for (Pt p : q.target) os << "target " << pt_str(p) << "\n";
        if (v == Variant::M2SR || v == Variant::S2S) os << "tracked " << pt_str(q.s) << "\n";
        if (v == Variant::M2S || v == Variant::M2SR || v == Variant::S2S) os << "goal " << pt_str(q.t) << "\n";
        for (std::size_t i = 0; i < q.assignment.size(); ++i) os << "assign " << i << " " << q.assignment[i] << "\n";
    }
    for (const auto& s : doc.provenance) os << "provenance " << s << "\n";
    return os.str();
}

PlanDoc parse_plan(std::string_view text) {
    PlanDoc d;
    for (const auto& ln : lex(text, "plan")) {
        const auto& kw = ln.toks[0].text;
        if (kw == "start") {
            ln.arity(3);
            if (!d.moves.empty()) ln.fail(0, "start record after moves");
            d.start.push_back(ln.pt(1));
        } else if (kw == "move") {
            ln.arity(3);
            int r = ln.num(1, "robot index");
            if (r < 0 || r >= int(d.start.size())) ln.fail(1, "robot index out of range");
            const auto& ds = ln.toks[2].text;
            if (ds.size() != 1 || std::string("NESW").find(ds[0]) == std::string::npos) ln.fail(2, "direction must be N, E, S or W");
            d.moves.push_back({r, parse_dir(ds[0])});
        } else {
            ln.fail(0, "unknown record '" + kw + "'");
        }
    }
    return d;
}

std::string serialize_plan(const PlanDoc& d) {
    std::ostringstream os;
    os << "format plan v1\n";
    for (Pt p : d.start) os << "start " << pt_str(p) << "\n";
    for (const auto& m : d.moves) os << "move " << m.robot << " " << dir_char(m.dir) << "\n";
    return os.str();
}

PlanDoc plan_doc(const MultiConfig& start, const PathPlan& plan) {
    PlanDoc d{start, {}};
    MultiConfig c = start;
    for (const auto& s : plan) {
        auto it = std::find(c.begin(), c.end(), s.from);
        if (it == c.end()) throw ArgumentError("plan_doc: step moves no robot");
        d.moves.push_back({int(it - c.begin()), s.dir});
        *it = *it + step(s.dir);
    }
    return d;
}

PathPlan path_plan(const PlanDoc& d) {
    PathPlan p;
    MultiConfig c = d.start;
    for (const auto& m : d.moves) {
        if (m.robot < 0 || m.robot >= int(c.size())) throw ArgumentError("path_plan: robot index out of range");
        p.push_back({c[m.robot], m.dir});
        c[m.robot] = c[m.robot] + step(m.dir);
    }
    return p;
}

MoveWitness parse_ncl_witness(std::string_view text, const ConstraintGraph& g) {
    MoveWitness w;
    for (const auto& ln : lex(text, "ncl-witness")) {
        if (ln.toks[0].text != "flip") ln.fail(0, "unknown record '" + ln.toks[0].text + "'");
        ln.arity(2);
        int e = g.edge_index(ln.toks[1].text);
        if (e < 0) ln.fail(1, "unknown edge '" + ln.toks[1].text + "'");
        w.push_back(e);
    }
    return w;
}

std::string serialize_ncl_witness(const ConstraintGraph& g, const MoveWitness& w) {
    std::ostringstream os;
    os << "format ncl-witness v1\n";
    for (int e : w) os << "flip " << g.edge(e).id << "\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << text;
}

}  // namespace nclmp
