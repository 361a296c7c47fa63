#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nclmp/common.hpp"
#include "nclmp/geometry.hpp"

namespace nclmp {

struct Instance {
    Rect bounds{0, 0, 0, 0};
    std::vector<Polygon> obstacles;
    std::vector<Pt> point_obstacles;
    int robot_count = 0;
    bool operator==(const Instance&) const = default;
};

using MultiConfig = std::vector<Pt>;

struct PlanStep {
    Pt from;
    Dir dir;
    bool operator==(const PlanStep&) const = default;
};
using PathPlan = std::vector<PlanStep>;

struct MotionLimits {
    std::size_t max_states = 4'000'000;
    std::size_t enum_cap = 1'000'000;  // source enumeration for single_to_single
};

struct MotionResult {
    bool yes = false;
    std::optional<PathPlan> plan;
    std::size_t states = 0;  // states stored by the search
};

// Precomputed free space of an instance: every lattice point where a robot
// fits, its four half-step neighbours (when the swept area is clear of
// obstacles and point obstacles), and which other points it conflicts with.
class FreeSpace {
public:
    explicit FreeSpace(const Instance& inst);

    const Instance& instance() const { return *inst_; }
    std::size_t size() const { return pos_.size(); }
    Pt pos(int i) const { return pos_[i]; }
    int id(Pt p) const;  // -1 if a robot cannot sit at p
    int neighbor(int i, Dir d) const { return nbr_[std::size_t(i) * 4 + int(d)]; }
    const std::vector<int>& conflicts(int i) const { return conf_[i]; }  // excludes i
    bool block_free(Pt b) const;

private:
    const Instance* inst_;
    Rect b_;
    int w_ = 0, h_ = 0;
    std::vector<std::uint8_t> blocked_;  // per 0.5x0.5 block
    std::vector<int> grid_;               // per lattice point: position id or -1
    std::vector<Pt> pos_;
    std::vector<int> nbr_;
    std::vector<std::vector<int>> conf_;
    bool point_at(Pt p) const;
    friend bool sweep_clear(const FreeSpace&, Pt, Dir);
};

// The swept rectangle of the move avoids obstacle interiors and has no
// point obstacle in its open interior.
bool sweep_clear(const FreeSpace& fs, Pt c, Dir d);

bool is_free(const Instance& inst, const MultiConfig& c);
bool is_free(const FreeSpace& fs, const MultiConfig& c);

struct RobotMove {
    int robot;  // index into the configuration as given
    Dir dir;
    bool operator==(const RobotMove&) const = default;
};
// Sorted by robot position (x, then y), then N,E,S,W.
std::vector<RobotMove> legal_single_moves(const Instance& inst, const MultiConfig& c);
std::vector<RobotMove> legal_single_moves(const FreeSpace& fs, const MultiConfig& c);

MotionResult solve_multi_to_multi(const Instance& inst, const MultiConfig& S, const MultiConfig& T,
                                  const MotionLimits& lim = {});
MotionResult solve_multi_to_single(const Instance& inst, const MultiConfig& S, Pt t, const MotionLimits& lim = {});
MotionResult solve_multi_to_single_restricted(const Instance& inst, const MultiConfig& S, Pt s, Pt t,
                                              const MotionLimits& lim = {});
// The plan (when yes) starts from `source`, one of the enumerated free
// configurations containing s.
struct SingleResult {
    bool yes = false;
    std::optional<MultiConfig> source;
    std::optional<PathPlan> plan;
    std::size_t states = 0;
};
SingleResult solve_single_to_single(const Instance& inst, Pt s, Pt t, const MotionLimits& lim = {});
// assignment[i] = index into T of robot S[i]'s target.
MotionResult solve_labeled(const Instance& inst, const MultiConfig& S, const MultiConfig& T,
                           const std::vector<int>& assignment, const MotionLimits& lim = {});

// Replays a plan; returns the final configuration (same robot order as c,
// moved robots updated in place) or nullopt if any step is not a legal
// single move.
std::optional<MultiConfig> replay_plan(const Instance& inst, MultiConfig c, const PathPlan& plan);

// Every free configuration of inst.robot_count robots containing p, sorted.
std::vector<MultiConfig> free_configs_containing(const FreeSpace& fs, Pt p, std::size_t cap);

}  // namespace nclmp
