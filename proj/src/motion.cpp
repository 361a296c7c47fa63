#include "nclmp/motion.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "nclmp/state_store.hpp"

namespace nclmp {

FreeSpace::FreeSpace(const Instance& inst) : inst_(&inst), b_(inst.bounds) {
    w_ = std::max(0, b_.x1 - b_.x0);
    h_ = std::max(0, b_.y1 - b_.y0);
    blocked_.assign(std::size_t(w_) * h_, 0);
    for (const auto& poly : inst.obstacles) {
        if (poly.pts.empty()) continue;
        int x0 = poly.pts[0].x, x1 = x0, y0 = poly.pts[0].y, y1 = y0;
        for (Pt p : poly.pts) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
        x0 = std::max(x0, b_.x0);
        y0 = std::max(y0, b_.y0);
        x1 = std::min(x1, b_.x1);
        y1 = std::min(y1, b_.y1);
        const bool is_rect = poly.pts.size() == 4 && poly.pts == rect_polygon(Rect{x0, y0, x1, y1}).pts;
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) {
                auto& cell = blocked_[std::size_t(y - b_.y0) * w_ + (x - b_.x0)];
                if (!cell && (is_rect || polygon_covers_block(poly, {x, y}))) cell = 1;
            }
    }
    grid_.assign(std::size_t(w_ + 1) * (h_ + 1), -1);
    for (int x = b_.x0 + 1; x < b_.x1; ++x)
        for (int y = b_.y0 + 1; y < b_.y1; ++y) {
            Pt c{x, y};
            if (point_at(c)) continue;
            if (!block_free({x - 1, y - 1}) || !block_free({x, y - 1}) || !block_free({x - 1, y}) ||
                !block_free({x, y}))
                continue;
            if (pos_.size() >= 0xffff) throw ArgumentError("instance has too many free lattice points");
            grid_[std::size_t(y - b_.y0) * (w_ + 1) + (x - b_.x0)] = int(pos_.size());
            pos_.push_back(c);
        }
    nbr_.assign(pos_.size() * 4, -1);
    conf_.assign(pos_.size(), {});
    for (int i = 0; i < int(pos_.size()); ++i) {
        Pt c = pos_[i];
        for (int d = 0; d < 4; ++d) {
            int j = id(c + step(Dir(d)));
            if (j >= 0 && sweep_clear(*this, c, Dir(d))) nbr_[std::size_t(i) * 4 + d] = j;
        }
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                if (!dx && !dy) continue;
                int j = id({c.x + dx, c.y + dy});
                if (j >= 0) conf_[i].push_back(j);
            }
    }
}

int FreeSpace::id(Pt p) const {
    if (p.x < b_.x0 || p.x > b_.x1 || p.y < b_.y0 || p.y > b_.y1) return -1;
    return grid_[std::size_t(p.y - b_.y0) * (w_ + 1) + (p.x - b_.x0)];
}

bool FreeSpace::block_free(Pt b) const {
    if (b.x < b_.x0 || b.x >= b_.x1 || b.y < b_.y0 || b.y >= b_.y1) return false;
    return !blocked_[std::size_t(b.y - b_.y0) * w_ + (b.x - b_.x0)];
}

bool FreeSpace::point_at(Pt p) const {
    return std::find(inst_->point_obstacles.begin(), inst_->point_obstacles.end(), p) != inst_->point_obstacles.end();
}

bool sweep_clear(const FreeSpace& fs, Pt c, Dir d) {
    Rect r = swept_rect(c, d);
    for (int x = r.x0; x < r.x1; ++x)
        for (int y = r.y0; y < r.y1; ++y)
            if (!fs.block_free({x, y})) return false;
    for (Pt p : fs.instance().point_obstacles)
        if (open_contains(r, p)) return false;
    return true;
}

bool is_free(const FreeSpace& fs, const MultiConfig& c) {
    if (int(c.size()) != fs.instance().robot_count)
        throw ArgumentError("configuration has " + std::to_string(c.size()) + " robots, instance expects " +
                            std::to_string(fs.instance().robot_count));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (fs.id(c[i]) < 0) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (robots_conflict(c[i], c[j])) return false;
    }
    return true;
}

bool is_free(const Instance& inst, const MultiConfig& c) { return is_free(FreeSpace(inst), c); }

std::vector<RobotMove> legal_single_moves(const FreeSpace& fs, const MultiConfig& c) {
    if (!is_free(fs, c)) throw PreconditionError("legal_single_moves: configuration is not free");
    std::vector<int> order(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return c[a] < c[b]; });
    std::vector<RobotMove> out;
    for (int i : order) {
        int p = fs.id(c[i]);
        for (int d = 0; d < 4; ++d) {
            int q = fs.neighbor(p, Dir(d));
            if (q < 0) continue;
            Pt qp = fs.pos(q);
            bool ok = true;
            for (std::size_t j = 0; j < c.size() && ok; ++j)
                if (int(j) != i && robots_conflict(qp, c[j])) ok = false;
            if (ok) out.push_back({i, Dir(d)});
        }
    }
    return out;
}

std::vector<RobotMove> legal_single_moves(const Instance& inst, const MultiConfig& c) {
    return legal_single_moves(FreeSpace(inst), c);
}

namespace {

enum class Layout { Sorted, TrackedFirst, Tuple };

class Search {
public:
    Search(const FreeSpace& fs, std::size_t m, Layout layout, std::size_t cap)
        : fs_(fs), m_(m), layout_(layout), cap_(cap), store_((m + 3) / 4), occ_(fs.size(), 0) {}

    std::vector<std::uint16_t> ids(const MultiConfig& c) const {
        std::vector<std::uint16_t> v;
        for (Pt p : c) {
            int i = fs_.id(p);
            if (i < 0) throw PreconditionError("configuration is not free");
            v.push_back(std::uint16_t(i));
        }
        normalize(v);
        return v;
    }

    void normalize(std::vector<std::uint16_t>& v) const {
        if (layout_ == Layout::Sorted) std::sort(v.begin(), v.end());
        else if (layout_ == Layout::TrackedFirst && v.size() > 1) std::sort(v.begin() + 1, v.end());
    }

    std::vector<std::uint64_t> pack(const std::vector<std::uint16_t>& v) const {
        std::vector<std::uint64_t> w(store_.words(), 0);
        for (std::size_t i = 0; i < v.size(); ++i) w[i / 4] |= std::uint64_t(v[i] + 1) << (16 * (i % 4));
        return w;
    }

    void unpack(std::uint32_t s, std::vector<std::uint16_t>& v) const {
        auto w = store_.get(s);
        v.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) v[i] = std::uint16_t(((w[i / 4] >> (16 * (i % 4))) & 0xffff) - 1);
    }

    void add_root(const std::vector<std::uint16_t>& v) {
        auto w = pack(v);
        store_.insert(w.data(), StateStore::kNone, 0);
    }

    // BFS over all stored roots; returns the first state satisfying goal.
    std::uint32_t run(const std::function<bool(const std::vector<std::uint16_t>&)>& goal) {
        std::vector<std::uint16_t> cur, nxt;
        for (std::uint32_t i = 0; i < store_.size(); ++i) {
            unpack(i, cur);
            if (goal(cur)) return i;
        }
        for (std::uint32_t i = 0; i < store_.size(); ++i) {
            unpack(i, cur);
            for (auto p : cur) occ_[p] = 1;
            // robots in position order so the expansion order is canonical
            std::vector<std::size_t> order(m_);
            for (std::size_t k = 0; k < m_; ++k) order[k] = k;
            if (layout_ != Layout::Sorted)
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cur[a] < cur[b]; });
            std::uint32_t found = StateStore::kNone;
            for (std::size_t k : order) {
                int p = cur[k];
                for (int d = 0; d < 4 && found == StateStore::kNone; ++d) {
                    int q = fs_.neighbor(p, Dir(d));
                    if (q < 0) continue;
                    bool ok = true;
                    for (int c : fs_.conflicts(q))
                        if (c != p && occ_[c]) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    nxt = cur;
                    nxt[k] = std::uint16_t(q);
                    normalize(nxt);
                    auto w = pack(nxt);
                    auto [j, fresh] = store_.insert(w.data(), i, std::uint32_t(p) * 4 + std::uint32_t(d));
                    if (!fresh) continue;
                    if (store_.size() > cap_) {
                        for (auto x : cur) occ_[x] = 0;
                        throw CapExceeded("motion state cap exceeded (" + std::to_string(cap_) + " states)", cap_);
                    }
                    if (goal(nxt)) found = j;
                }
                if (found != StateStore::kNone) break;
            }
            for (auto x : cur) occ_[x] = 0;
            if (found != StateStore::kNone) return found;
        }
        return StateStore::kNone;
    }

    PathPlan plan_to(std::uint32_t s, std::uint32_t* root = nullptr) const {
        PathPlan plan;
        for (auto lab : store_.trace(s, root)) plan.push_back({fs_.pos(int(lab / 4)), Dir(lab % 4)});
        return plan;
    }

    MultiConfig config(std::uint32_t s) const {
        std::vector<std::uint16_t> v;
        unpack(s, v);
        MultiConfig c;
        for (auto i : v) c.push_back(fs_.pos(i));
        return c;
    }

    std::size_t size() const { return store_.size(); }

private:
    const FreeSpace& fs_;
    std::size_t m_;
    Layout layout_;
    std::size_t cap_;
    StateStore store_;
    std::vector<std::uint8_t> occ_;
};

void require_free(const FreeSpace& fs, const MultiConfig& c, const char* what) {
    if (!is_free(fs, c)) throw PreconditionError(std::string(what) + " is not a free configuration");
}

int require_position(const FreeSpace& fs, Pt p, const char* what) {
    int i = fs.id(p);
    if (i < 0) throw PreconditionError(std::string(what) + " is not in free space");
    return i;
}

}  // namespace

MotionResult solve_multi_to_multi(const Instance& inst, const MultiConfig& S, const MultiConfig& T,
                                  const MotionLimits& lim) {
    if (S.size() != T.size()) throw ArgumentError("solve_multi_to_multi: |S| != |T|");
    FreeSpace fs(inst);
    require_free(fs, S, "S");
    require_free(fs, T, "T");
    Search search(fs, S.size(), Layout::Sorted, lim.max_states);
    search.add_root(search.ids(S));
    auto target = search.ids(T);
    auto hit = search.run([&](const std::vector<std::uint16_t>& v) { return v == target; });
    MotionResult r;
    r.states = search.size();
    if (hit != StateStore::kNone) {
        r.yes = true;
        r.plan = search.plan_to(hit);
    }
    return r;
}

MotionResult solve_multi_to_single(const Instance& inst, const MultiConfig& S, Pt t, const MotionLimits& lim) {
    FreeSpace fs(inst);
    require_free(fs, S, "S");
    const auto tid = std::uint16_t(require_position(fs, t, "t"));
    Search search(fs, S.size(), Layout::Sorted, lim.max_states);
    search.add_root(search.ids(S));
    auto hit = search.run([&](const std::vector<std::uint16_t>& v) {
        return std::find(v.begin(), v.end(), tid) != v.end();
    });
    MotionResult r;
    r.states = search.size();
    if (hit != StateStore::kNone) {
        r.yes = true;
        r.plan = search.plan_to(hit);
    }
    return r;
}

MotionResult solve_multi_to_single_restricted(const Instance& inst, const MultiConfig& S, Pt s, Pt t,
                                              const MotionLimits& lim) {
    FreeSpace fs(inst);
    require_free(fs, S, "S");
    auto it = std::find(S.begin(), S.end(), s);
    if (it == S.end()) throw ArgumentError("solve_multi_to_single_restricted: s is not in S");
    const auto tid = std::uint16_t(require_position(fs, t, "t"));
    MultiConfig ordered{s};
    for (Pt p : S)
        if (p != s) ordered.push_back(p);
    Search search(fs, S.size(), Layout::TrackedFirst, lim.max_states);
    search.add_root(search.ids(ordered));
    auto hit = search.run([&](const std::vector<std::uint16_t>& v) { return v[0] == tid; });
    MotionResult r;
    r.states = search.size();
    if (hit != StateStore::kNone) {
        r.yes = true;
        r.plan = search.plan_to(hit);
    }
    return r;
}

std::vector<MultiConfig> free_configs_containing(const FreeSpace& fs, Pt p, std::size_t cap) {
    const int m = fs.instance().robot_count;
    const int sid = fs.id(p);
    if (sid < 0) throw PreconditionError("point is not in free space");
    std::vector<MultiConfig> out;
    if (m <= 0) return out;
    const int n = int(fs.size());
    // Positions are scanned in id order. Whether a partial choice can be
    // completed depends only on the scan index, the number still to place
    // and the chosen positions that conflict with something not yet
    // scanned, so dead ends are memoised on that key.
    std::vector<int> reach(n);
    for (int i = 0; i < n; ++i) {
        reach[i] = i;
        for (int c : fs.conflicts(i)) reach[i] = std::max(reach[i], c);
    }
    std::vector<std::uint8_t> blocked_by_s(n, 0);
    blocked_by_s[sid] = 1;
    for (int c : fs.conflicts(sid)) blocked_by_s[c] = 1;
    std::vector<int> chosen;
    std::vector<int> live(n, 0);  // conflicts with chosen positions
    std::set<std::vector<int>> dead;
    std::function<bool(int)> rec = [&](int i) {
        const int need = m - 1 - int(chosen.size());
        if (need == 0) {
            MultiConfig c;
            for (int j : chosen) c.push_back(fs.pos(j));
            c.push_back(p);
            std::sort(c.begin(), c.end());
            out.push_back(std::move(c));
            if (out.size() > cap)
                throw CapExceeded("enumeration cap exceeded (" + std::to_string(cap) + " configurations)", cap);
            return true;
        }
        if (n - i < need) return false;
        std::vector<int> key{i, need};
        for (int j : chosen)
            if (reach[j] >= i) key.push_back(j);
        if (dead.count(key)) return false;
        bool any = false;
        if (!blocked_by_s[i] && !live[i]) {
            chosen.push_back(i);
            for (int c : fs.conflicts(i)) ++live[c];
            any |= rec(i + 1);
            for (int c : fs.conflicts(i)) --live[c];
            chosen.pop_back();
        }
        any |= rec(i + 1);
        if (!any) dead.insert(std::move(key));
        return any;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

SingleResult solve_single_to_single(const Instance& inst, Pt s, Pt t, const MotionLimits& lim) {
    FreeSpace fs(inst);
    require_position(fs, s, "s");
    const auto tid = std::uint16_t(require_position(fs, t, "t"));
    auto sources = free_configs_containing(fs, s, lim.enum_cap);
    SingleResult r;
    if (sources.empty()) return r;
    Search search(fs, std::size_t(inst.robot_count), Layout::Sorted, lim.max_states);
    for (const auto& c : sources) search.add_root(search.ids(c));
    auto hit = search.run([&](const std::vector<std::uint16_t>& v) {
        return std::find(v.begin(), v.end(), tid) != v.end();
    });
    r.states = search.size();
    if (hit != StateStore::kNone) {
        std::uint32_t root = 0;
        r.yes = true;
        r.plan = search.plan_to(hit, &root);
        r.source = search.config(root);
    }
    return r;
}

MotionResult solve_labeled(const Instance& inst, const MultiConfig& S, const MultiConfig& T,
                           const std::vector<int>& assignment, const MotionLimits& lim) {
    if (S.size() != T.size() || assignment.size() != S.size())
        throw ArgumentError("solve_labeled: size mismatch");
    std::vector<int> seen(T.size(), 0);
    for (int a : assignment) {
        if (a < 0 || a >= int(T.size()) || seen[a]++) throw ArgumentError("solve_labeled: assignment is not a bijection");
    }
    FreeSpace fs(inst);
    require_free(fs, S, "S");
    require_free(fs, T, "T");
    MultiConfig goal(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) goal[i] = T[assignment[i]];
    Search search(fs, S.size(), Layout::Tuple, lim.max_states);
    search.add_root(search.ids(S));
    auto target = search.ids(goal);
    auto hit = search.run([&](const std::vector<std::uint16_t>& v) { return v == target; });
    MotionResult r;
    r.states = search.size();
    if (hit != StateStore::kNone) {
        r.yes = true;
        r.plan = search.plan_to(hit);
    }
    return r;
}

std::optional<MultiConfig> replay_plan(const Instance& inst, MultiConfig c, const PathPlan& plan) {
    FreeSpace fs(inst);
    if (!is_free(fs, c)) return std::nullopt;
    for (const auto& st : plan) {
        auto it = std::find(c.begin(), c.end(), st.from);
        if (it == c.end()) return std::nullopt;
        int p = fs.id(st.from);
        if (fs.neighbor(p, st.dir) < 0) return std::nullopt;
        Pt q = st.from + step(st.dir);
        for (const Pt& o : c)
            if (&o != &*it && robots_conflict(o, q)) return std::nullopt;
        *it = q;
    }
    return c;
}

}  // namespace nclmp
