#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "k4cover/multigraph.hpp"

namespace k4cover {

enum class RuleTag {
  OneBoundaryComponent,  // rule 2(a)
  OneBoundaryCut,        // rule 2(b)
  Bypass,                // rule 3
  Parallel,              // rule 4
  Chandelier,            // rule 5
  TwoBoundary,           // rule 6
};
inline constexpr int kNumRuleTags = 6;
const char* to_string(RuleTag tag);

using RuleCounts = std::array<long, kNumRuleTags>;

// Net effect of one rule application plus whatever lifting needs.
struct TraceStep {
  RuleTag rule = RuleTag::Parallel;
  VertexSet deleted_vertices;
  std::vector<Edge> deleted_edges;
  std::vector<VertexId> added_vertices;
  std::vector<Edge> added_edges;
  // Chandelier: u2 and u3 merged into u_e.
  MergeRecord merge;
  VertexId u2 = kNoVertex;
  // Two-boundary: deleted interior, new gadget vertices, boundary pair.
  VertexSet x0;
  VertexSet x0_new;
  VertexId s = kNoVertex;
  VertexId t = kNoVertex;
};

struct ReductionTrace {
  VertexSet s_set;  // rules never change S
  std::vector<TraceStep> steps;

  bool empty() const { return steps.empty(); }
};

// Disjoint-problem state. `committed` holds vertices deleted by branching
// when this instance was created; they are part of any solution built on it.
struct Instance {
  MultiGraph g;
  VertexSet s_set;
  int k = 0;
  VertexSet committed;
  ReductionTrace trace;

  VertexSet f_set() const { return set_difference(g.vertex_set(), s_set); }
  bool in_s(VertexId v) const { return s_set.count(v) != 0; }
};

Instance make_instance(MultiGraph g, VertexSet s_set, int k);

class RuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Distinct S-neighbours of v.
std::vector<VertexId> s_neighbors(const Instance& inst, VertexId v);

// Rule 2. Case (a) deletes X when G[X] is a component of G or of G - e for a
// cut edge e; case (b) deletes X minus its single boundary vertex.
Instance rule_1boundary(const Instance& inst, const VertexSet& x);
// Rule 3.
Instance rule_bypass(const Instance& inst, VertexId v);
// Rule 4.
Instance rule_parallel(const Instance& inst, VertexId u, VertexId v);
// Rule 5: x_path = u1..ul (l >= 4), hub in S.
Instance rule_chandelier(const Instance& inst, const std::vector<VertexId>& x_path,
                         VertexId x_hub);
// Rule 6. Throws when X is invalid; returns the instance unchanged when the
// size guards fail.
Instance rule_2boundary(const Instance& inst, const VertexSet& x);

// Site discovery, deterministic (smallest ids first).
std::optional<VertexSet> find_1boundary_component(const Instance& inst);
std::optional<VertexSet> find_1boundary_cut(const Instance& inst);
std::optional<VertexId> find_bypass(const Instance& inst);
std::optional<std::pair<VertexId, VertexId>> find_parallel(const Instance& inst);
std::optional<std::pair<std::vector<VertexId>, VertexId>> find_chandelier(const Instance& inst);
std::optional<VertexSet> find_2boundary(const Instance& inst);

// Applies one rule of the highest priority that fires; returns its tag.
std::optional<RuleTag> reduce_once(Instance& inst, bool allow_two_boundary = true);
Instance reduce_exhaustively(Instance inst, RuleCounts* counts = nullptr);
bool is_reduced(const Instance& inst);

// Maps a cover of the reduced graph back to the graph the trace started from.
VertexSet lift_solution(const ReductionTrace& trace, VertexSet w);
// Re-applies the recorded steps to `g`.
MultiGraph replay(const MultiGraph& g, const ReductionTrace& trace);

}  // namespace k4cover
