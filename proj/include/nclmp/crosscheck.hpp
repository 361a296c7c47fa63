#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nclmp/generate.hpp"
#include "nclmp/reducer.hpp"

namespace nclmp {

enum class Answer { No, Yes, Inconclusive };
std::string answer_name(Answer a);

struct Budget {
    NclLimits ncl;
    MotionLimits motion;
};

struct CrossCase {
    NclProblem problem = NclProblem::F2F;
    ReduceParams params;
    bool restricted = false;  // f2e: m2sr instead of m2s
};

struct CrossReport {
    Answer ncl = Answer::Inconclusive;      // on G
    Answer motion = Answer::Inconclusive;   // on the reduced instance
    Answer labeled = Answer::Inconclusive;  // f2f only: labeled m2m with the identity assignment
    bool agree = false;                     // ncl == motion, both decided
    bool labeled_agree = true;              // f2f only
    bool replay_ok = true;                  // a YES witness became a valid NCL move sequence on H
    std::string note;
    std::size_t motion_states = 0;
    std::size_t ncl_moves = 0;  // length of the extracted H move sequence
    double seconds = 0;
};

// Reads the orientation of H off every terminal multi-configuration along
// the plan and orders the edge flips between consecutive ones so that each
// intermediate orientation is valid. Returns the first orientation and the
// move sequence, or nullopt with a reason.
struct ExtractedSequence {
    Orientation start;
    MoveWitness moves;
};
std::optional<ExtractedSequence> extract_ncl_sequence(const Workspace& ws, const MultiConfig& start,
                                                      const PathPlan& plan, std::string* why = nullptr);

CrossReport crosscheck(const ConstraintGraph& g, const GridEmbedding& emb, const CrossCase& c,
                       const Budget& budget = {});

// Seeded corpus: problems cycle f2f, f2e, e2e (f2e alternates m2s and
// m2sr). Random graphs have 4..max_vertices vertices and at least one valid
// orientation; with `fixed` every case uses that graph.
struct CorpusCase {
    ConstraintGraph g;
    CrossCase c;
    std::string label;
};
std::vector<CorpusCase> crosscheck_corpus(Rng& rng, int trials, int max_vertices = 6,
                                          const std::optional<ConstraintGraph>& fixed = std::nullopt);

}  // namespace nclmp
