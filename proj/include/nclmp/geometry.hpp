#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace nclmp {

// All coordinates are integers in half-units. A unit-square robot centered
// at c covers [c.x-1, c.x+1] x [c.y-1, c.y+1].
struct Pt {
    int x = 0, y = 0;
    auto operator<=>(const Pt&) const = default;
    Pt operator+(Pt o) const { return {x + o.x, y + o.y}; }
    Pt operator-(Pt o) const { return {x - o.x, y - o.y}; }
};

enum class Dir : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline Pt step(Dir d) {
    switch (d) {
        case Dir::N: return {0, 1};
        case Dir::E: return {1, 0};
        case Dir::S: return {0, -1};
        case Dir::W: return {-1, 0};
    }
    return {0, 0};
}
char dir_char(Dir d);
Dir parse_dir(char c);  // throws FormatError
inline Dir opposite(Dir d) { return Dir((int(d) + 2) % 4); }

// Interiors of two robots overlap iff both offsets are below one unit.
inline bool robots_conflict(Pt a, Pt b) {
    int dx = a.x - b.x, dy = a.y - b.y;
    return dx < 2 && dx > -2 && dy < 2 && dy > -2;
}

// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
    int x0, y0, x1, y1;
    bool operator==(const Rect&) const = default;
};

inline Rect robot_rect(Pt c) { return {c.x - 1, c.y - 1, c.x + 1, c.y + 1}; }
// Area swept by a half-step move from c in direction d (1 x 1.5 units).
Rect swept_rect(Pt c, Dir d);
inline bool open_contains(const Rect& r, Pt p) { return r.x0 < p.x && p.x < r.x1 && r.y0 < p.y && p.y < r.y1; }

// Rectilinear polygon as a closed vertex cycle.
struct Polygon {
    std::vector<Pt> pts;
    bool operator==(const Polygon&) const = default;
};

Polygon rect_polygon(const Rect& r);
// Even-odd containment of the 0.5x0.5 block whose lower-left corner is b.
bool polygon_covers_block(const Polygon& poly, Pt b);
// Checks that consecutive vertices are axis-parallel and distinct and the
// cycle has at least four corners. Returns an empty string if fine.
std::string polygon_problem(const Polygon& poly);

// Covers a set of blocked unit blocks (given as a row-major bitmap over
// [x0, x0+w) x [y0, y0+h)) with disjoint rectangles: horizontal runs merged
// downward when identical. Deterministic.
std::vector<Rect> blocks_to_rects(const std::vector<std::uint8_t>& blocked, int x0, int y0, int w, int h);

}  // namespace nclmp
