#pragma once

#include <ostream>

namespace nclmp {

// Exit status: 0 when a decision (possibly INCONCLUSIVE) was produced,
// 1 for a negative check (INVALID, failed gadget audit, crosscheck
// disagreement), 2 for usage, format, argument and precondition errors.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nclmp
