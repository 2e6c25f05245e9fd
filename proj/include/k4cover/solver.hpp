#pragma once

#include <array>
#include <optional>
#include <vector>

#include "k4cover/branching.hpp"
#include "k4cover/protrusion.hpp"
#include "k4cover/rules.hpp"

namespace k4cover {

struct SolverConfig {
  int c1 = 10;
  ProtrusionConfig protrusion;
  int threads = 1;
  bool record_mu = true;
  // Prune nodes where F-disjoint K4 models already outnumber the budget.
  bool packing_bound = true;
  std::size_t max_mu_rows = 1u << 20;
};

struct Measure {
  int k = 0;
  int cc = 0;
  int bc = 0;
  long value = 0;
};

Measure measure(const Instance& inst, int c1);

// One search-tree node. `branch_child` marks nodes created by a branching
// rule, for which mu must be below the parent's.
struct MuRow {
  long node = 0;
  long parent = -1;
  int depth = 0;
  Measure mu;
  bool branch_child = false;
};

struct SearchStats {
  long trees = 0;
  long nodes = 0;
  long leaves = 0;
  long branchings = 0;
  long children = 0;
  int max_degree = 0;
  std::array<long, 3> branch_counts{};  // by BranchKind
  long pair_branchings = 0;             // independent endgame
  RuleCounts rule_counts{};
  long protrusions = 0;
  long protrusions_marked = 0;
  long protrusions_branched = 0;
  long protrusions_replaced = 0;
  long replace_fallbacks = 0;
  long replace_lift_failures = 0;
  long protrusion_bound_violations = 0;
  long mu_checks = 0;
  long mu_violations = 0;
  long bucket_checks = 0;
  long bucket_violations = 0;
  long independence_checks = 0;
  long independence_violations = 0;
  long witnesses = 0;
  long witness_failures = 0;
  long bound_prunes = 0;  // nodes cut off by the packing lower bound
  long max_branch_set = 0;
  long disconnected_rule1_sets = 0;
  long compressions = 0;
  long disjoint_calls = 0;
  double seconds = 0;
  std::vector<MuRow> mu_rows;

  void merge(const SearchStats& other);
};

struct BranchOrReduceResult {
  std::optional<BranchSet> branch;
  std::optional<Replacement> replacement;
  int marked = 0;
};

// Algorithm 1 on a simplified instance; both fields empty when every node of
// the decomposition ends up marked.
BranchOrReduceResult branch_or_reduce(const Instance& inst, const MultiGraph& g_f,
                                      const ExtendedSPDecomposition& decomp,
                                      const ComponentIndex& index, const SolverConfig& cfg,
                                      SearchStats& stats,
                                      const MinDeletions& solve = brute_force_min_deletions);

// Smallest-effort search for W inside V(g) - s_set, |W| <= k - 1, with g - W
// free of K4 minors. Throws std::invalid_argument when s_set is not a cover.
std::optional<VertexSet> solve_disjoint(const MultiGraph& g, const VertexSet& s_set, int k,
                                        const SolverConfig& cfg = {}, SearchStats* stats = nullptr);

// Endgame on an independent instance: vertex cover of the conflict graph with
// budget k - 1. Throws std::invalid_argument when the instance is not
// independent.
std::optional<VertexSet> solve_independent(const Instance& inst, SearchStats* stats = nullptr);

// Cover of size at most k, or nullopt.
std::optional<VertexSet> iterative_compress(const MultiGraph& g, int k, const SolverConfig& cfg = {},
                                            SearchStats* stats = nullptr);

// Smallest k accepted by iterative_compress, with its cover.
std::pair<int, VertexSet> minimum_cover(const MultiGraph& g, const SolverConfig& cfg = {},
                                        SearchStats* stats = nullptr);

}  // namespace k4cover
