#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nclmp/motion.hpp"

namespace nclmp {

enum class RobotStyle { Plain, Edge, Vertex };

struct RenderOptions {
    int scale = 8;                  // pixels per half-unit
    bool terminal_overlay = false;  // dots at every lattice point where a robot fits
    std::vector<RobotStyle> styles; // per robot; empty = all plain
};

// Obstacles gray, robots as unit squares, point obstacles as small crosses.
// Output depends only on the arguments.
std::string render_svg(const Instance& inst, const std::optional<MultiConfig>& config = std::nullopt,
                       const RenderOptions& opt = {});

// One document per configuration along the plan: plan.size() + 1 frames.
std::vector<std::string> render_plan_frames(const Instance& inst, const MultiConfig& start, const PathPlan& plan,
                                            const RenderOptions& opt = {});
// Frame k only; ArgumentError when k > plan.size().
std::string render_plan_frame(const Instance& inst, const MultiConfig& start, const PathPlan& plan, std::size_t k,
                              const RenderOptions& opt = {});

}  // namespace nclmp
