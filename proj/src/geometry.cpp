#include "nclmp/geometry.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "nclmp/common.hpp"

namespace nclmp {

char dir_char(Dir d) { return "NESW"[int(d)]; }

Dir parse_dir(char c) {
    switch (c) {
        case 'N': return Dir::N;
        case 'E': return Dir::E;
        case 'S': return Dir::S;
        case 'W': return Dir::W;
    }
    throw FormatError(std::string("bad direction '") + c + "'");
}

Rect swept_rect(Pt c, Dir d) {
    Rect a = robot_rect(c), b = robot_rect(c + step(d));
    return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1), std::max(a.y1, b.y1)};
}

Polygon rect_polygon(const Rect& r) { return {{{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}}}; }

bool polygon_covers_block(const Polygon& poly, Pt b) {
    // ray from the block center (b + 0.5) towards +x; doubled coordinates
    // keep everything integral
    const long px = 2L * b.x + 1, py = 2L * b.y + 1;
    bool inside = false;
    const auto& p = poly.pts;
    for (std::size_t i = 0, n = p.size(); i < n; ++i) {
        Pt a = p[i], c = p[(i + 1) % n];
        if (a.x != c.x) continue;  // horizontal edges never cross a ray at odd height
        long x = 2L * a.x;
        long ylo = 2L * std::min(a.y, c.y), yhi = 2L * std::max(a.y, c.y);
        if (x > px && ylo < py && py < yhi) inside = !inside;
    }
    return inside;
}

std::string polygon_problem(const Polygon& poly) {
    const auto& p = poly.pts;
    if (p.size() < 4) return "fewer than 4 vertices";
    for (std::size_t i = 0; i < p.size(); ++i) {
        Pt a = p[i], c = p[(i + 1) % p.size()];
        if (a == c) return "repeated vertex";
        if (a.x != c.x && a.y != c.y) return "edge not axis-parallel";
    }
    return {};
}

std::vector<Rect> blocks_to_rects(const std::vector<std::uint8_t>& blocked, int x0, int y0, int w, int h) {
    std::vector<Rect> done;
    // open runs keyed by (start, end) in x, extended row by row
    std::map<std::pair<int, int>, int> open;  // -> starting row
    for (int r = 0; r <= h; ++r) {
        std::map<std::pair<int, int>, int> next;
        if (r < h) {
            int c = 0;
            while (c < w) {
                if (!blocked[std::size_t(r) * w + c]) {
                    ++c;
                    continue;
                }
                int s = c;
                while (c < w && blocked[std::size_t(r) * w + c]) ++c;
                auto key = std::make_pair(s, c);
                auto it = open.find(key);
                next[key] = it == open.end() ? r : it->second;
            }
        }
        for (auto& [key, start] : open)
            if (!next.count(key) || next[key] != start)
                done.push_back({x0 + key.first, y0 + start, x0 + key.second, y0 + r});
        open = std::move(next);
    }
    std::sort(done.begin(), done.end(), [](const Rect& a, const Rect& b) {
        return std::tie(a.y0, a.x0, a.y1, a.x1) < std::tie(b.y0, b.x0, b.y1, b.x1);
    });
    return done;
}

}  // namespace nclmp
