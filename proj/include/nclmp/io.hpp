#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nclmp/embed.hpp"
#include "nclmp/motion.hpp"
#include "nclmp/ncl.hpp"
#include "nclmp/reducer.hpp"

namespace nclmp {

// Every format starts with "format <name> v1". '#' starts a comment.
// Parse errors are FormatError with "line L, column C: ..." messages.

// vertex <id> <AND|OR|CONNECTOR> [min_flow]
// edge <id> <u> <v> <weight>
ConstraintGraph parse_graph(std::string_view text);
std::string serialize_graph(const ConstraintGraph& g);
bool same_graph(const ConstraintGraph& a, const ConstraintGraph& b);

// head <edge-id> <vertex-id>, one line per edge
Orientation parse_orientation(std::string_view text, const ConstraintGraph& g);
std::string serialize_orientation(const ConstraintGraph& g, const Orientation& o);

// place <vertex-id> <x> <y>
// path <edge-id> <vertex-id> <vertex-id> ...
LayoutDoc parse_layout(std::string_view text);
std::string serialize_layout(const LayoutDoc& doc);

// units half
// bounds <x0> <y0> <x1> <y1>
// robots <m>
// obstacle <x> <y> <x> <y> ...    (rectilinear polygon, >= 4 corners)
// point <x> <y>
// question <m2m|m2s|m2sr|s2s|labeled>
// start <x> <y> / target <x> <y> / tracked <x> <y> / goal <x> <y> / assign <i> <j>
// provenance <free text>
struct InstanceDoc {
    Instance instance;
    std::optional<Question> question;
    std::vector<std::string> provenance;
    bool operator==(const InstanceDoc&) const = default;
};
InstanceDoc parse_instance(std::string_view text);
std::string serialize_instance(const InstanceDoc& doc);

// Motion plan: start <x> <y> per robot, then move <robot-index> <N|E|S|W>.
struct PlanDoc {
    MultiConfig start;
    std::vector<RobotMove> moves;
    bool operator==(const PlanDoc&) const = default;
};
PlanDoc parse_plan(std::string_view text);
std::string serialize_plan(const PlanDoc& doc);
PlanDoc plan_doc(const MultiConfig& start, const PathPlan& plan);
PathPlan path_plan(const PlanDoc& doc);  // ArgumentError on a robot index out of range

// NCL witness: flip <edge-id>, one line per move, in order.
MoveWitness parse_ncl_witness(std::string_view text, const ConstraintGraph& g);
std::string serialize_ncl_witness(const ConstraintGraph& g, const MoveWitness& w);

std::string read_file(const std::string& path);  // FormatError if unreadable
void write_file(const std::string& path, const std::string& text);

}  // namespace nclmp
