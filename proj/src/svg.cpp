#include "nclmp/svg.hpp"

#include <algorithm>
#include <sstream>

namespace nclmp {

namespace {

const char* fill_of(RobotStyle s) {
    switch (s) {
        case RobotStyle::Plain: return "#4a78c2";
        case RobotStyle::Edge: return "#e08a2c";
        case RobotStyle::Vertex: return "#3f9a5b";
    }
    return "#000000";
}

}  // namespace

std::string render_svg(const Instance& inst, const std::optional<MultiConfig>& config, const RenderOptions& opt) {
    const Rect b = inst.bounds;
    const int s = opt.scale;
    auto X = [&](int x) { return (x - b.x0) * s; };
    auto Y = [&](int y) { return (b.y1 - y) * s; };
    const int w = (b.x1 - b.x0) * s, h = (b.y1 - b.y0) * s;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    if (!inst.obstacles.empty()) {
        os << "<g fill=\"#8c8c8c\" stroke=\"none\">\n";
        for (const auto& p : inst.obstacles) {
            os << "<path d=\"";
            for (std::size_t i = 0; i < p.pts.size(); ++i) os << (i ? " L " : "M ") << X(p.pts[i].x) << " " << Y(p.pts[i].y);
            os << " Z\"/>\n";
        }
        os << "</g>\n";
    }
    if (opt.terminal_overlay) {
        FreeSpace fs(inst);
        os << "<g fill=\"#c0c0c0\">\n";
        for (std::size_t i = 0; i < fs.size(); ++i)
            os << "<circle cx=\"" << X(fs.pos(int(i)).x) << "\" cy=\"" << Y(fs.pos(int(i)).y) << "\" r=\"1.5\"/>\n";
        os << "</g>\n";
    }
    if (config) {
        os << "<g stroke=\"#202020\" stroke-width=\"1\">\n";
        for (std::size_t i = 0; i < config->size(); ++i) {
            Pt c = (*config)[i];
            RobotStyle st = i < opt.styles.size() ? opt.styles[i] : RobotStyle::Plain;
            os << "<rect x=\"" << X(c.x - 1) << "\" y=\"" << Y(c.y + 1) << "\" width=\"" << 2 * s << "\" height=\"" << 2 * s
               << "\" fill=\"" << fill_of(st) << "\" fill-opacity=\"0.8\"/>\n";
        }
        os << "</g>\n";
    }
    if (!inst.point_obstacles.empty()) {
        const int r = std::max(2, s / 2);
        os << "<g stroke=\"#c0262d\" stroke-width=\"2\">\n";
        for (Pt p : inst.point_obstacles) {
            os << "<line x1=\"" << X(p.x) - r << "\" y1=\"" << Y(p.y) - r << "\" x2=\"" << X(p.x) + r << "\" y2=\"" << Y(p.y) + r << "\"/>\n";
            os << "<line x1=\"" << X(p.x) - r << "\" y1=\"" << Y(p.y) + r << "\" x2=\"" << X(p.x) + r << "\" y2=\"" << Y(p.y) - r << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<std::string> render_plan_frames(const Instance& inst, const MultiConfig& start, const PathPlan& plan,
                                            const RenderOptions& opt) {
    std::vector<std::string> out;
    MultiConfig c = start;
    out.push_back(render_svg(inst, c, opt));
    for (const auto& st : plan) {
        auto it = std::find(c.begin(), c.end(), st.from);
        if (it == c.end()) throw ArgumentError("render_plan_frames: plan step moves no robot");
        *it = *it + step(st.dir);
        out.push_back(render_svg(inst, c, opt));
    }
    return out;
}

std::string render_plan_frame(const Instance& inst, const MultiConfig& start, const PathPlan& plan, std::size_t k,
                              const RenderOptions& opt) {
    if (k > plan.size())
        throw ArgumentError("frame " + std::to_string(k) + " out of range (plan has " + std::to_string(plan.size() + 1) + " frames)");
    MultiConfig c = start;
    for (std::size_t i = 0; i < k; ++i) {
        auto it = std::find(c.begin(), c.end(), plan[i].from);
        if (it == c.end()) throw ArgumentError("render_plan_frame: plan step moves no robot");
        *it = *it + step(plan[i].dir);
    }
    return render_svg(inst, c, opt);
}

}  // namespace nclmp
