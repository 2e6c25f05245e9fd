#pragma once

#include <optional>
#include <string>

#include "k4cover/branching.hpp"
#include "k4cover/generators.hpp"
#include "k4cover/rules.hpp"

// Random instances shared by the unit tests and the acceptance run.
namespace k4cover::fixtures {

bool valid_cover(const MultiGraph& g, const VertexSet& s, const VertexSet& w);
// Brute-force optimum of the disjoint problem, -1 when none exists.
int disjoint_optimum(const Instance& inst);
bool disjoint_yes(const Instance& inst);

// S must be a cover (G - S free of K4 minors) and G[S] itself minor-free.
bool proper(const MultiGraph& g, const VertexSet& s);

Instance random_rule_instance(gen::Rng& rng, int n_min = 5, int n_max = 10);
Instance chandelier_instance(gen::Rng& rng);

struct TwoBoundarySite {
  Instance inst;
  VertexSet x;
};
TwoBoundarySite two_boundary_instance(gen::Rng& rng);

Instance random_branch_instance(gen::Rng& rng);
VertexSet random_connected(const Instance& inst, gen::Rng& rng);

// S is a cycle, maybe with a pendant vertex; F holds chord vertices joined to
// two cycle vertices, and sometimes one extra F vertex. At most ten vertices.
// Such instances often survive to the independent endgame.
Instance chorded_cycle_instance(gen::Rng& rng);

// Why a rule application was unsafe, or nullopt.
std::optional<std::string> rule_violation(const Instance& pre, const Instance& post);
// Parent YES iff some child YES.
bool branch_safe(const Instance& parent, const BranchSet& b);

}  // namespace k4cover::fixtures
