#pragma once

#include <map>
#include <optional>
#include <vector>

#include "k4cover/decompose.hpp"
#include "k4cover/rules.hpp"

namespace k4cover {

// Connected and biconnected components of G[S]. An isolated S vertex forms a
// trivial block of its own.
class ComponentIndex {
 public:
  ComponentIndex() = default;
  ComponentIndex(const MultiGraph& g, const VertexSet& s_set);
  explicit ComponentIndex(const Instance& inst) : ComponentIndex(inst.g, inst.s_set) {}

  int cc(VertexId s) const { return cc_.at(s); }
  const std::vector<int>& bc(VertexId s) const { return bc_.at(s); }
  int num_cc() const { return num_cc_; }
  int num_bc() const { return num_bc_; }

  bool share_block(VertexId a, VertexId b) const;
  // True when every vertex of `xs` lies in one common block.
  bool common_block(const std::vector<VertexId>& xs) const;
  bool spans_components(const std::vector<VertexId>& xs) const;
  // Some pair in the same component that shares no block.
  bool spans_blocks(const std::vector<VertexId>& xs) const;

 private:
  std::map<VertexId, int> cc_;
  std::map<VertexId, std::vector<int>> bc_;
  int num_cc_ = 0;
  int num_bc_ = 0;
};

enum class Bucket { N0, N1, N2, Overflow };

struct Classification {
  std::map<VertexId, Bucket> bucket;
  VertexSet of(Bucket b) const;
};

Classification classify(const Instance& inst);

enum class BranchKind { Rule1, Rule2, Rule3 };
const char* to_string(BranchKind kind);

struct BranchSet {
  BranchKind kind = BranchKind::Rule1;
  VertexSet x;
  // Deletion children in ascending order of the deleted vertex, then for
  // rules 2 and 3 the child with S grown by X.
  std::vector<Instance> children;
  // False when G[S + X] has a K4 minor, so the last child is a NO instance.
  bool union_child_feasible = true;
};

class BranchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

BranchSet branch_rule1(const Instance& inst, const VertexSet& x);
BranchSet branch_rule2(const Instance& inst, const VertexSet& x);
BranchSet branch_rule3(const Instance& inst, const VertexSet& x);

// Fires the first branching rule (order 1, 2, 3) that applies to a singleton
// {v}, scanning F in ascending order; nullopt when the instance is simplified.
std::optional<BranchSet> simplify(const Instance& inst, const ComponentIndex& index);
std::optional<BranchSet> simplify(const Instance& inst);

// Every F vertex has at most two S-neighbours.
bool all_in_low_buckets(const Instance& inst);

bool is_independent(const Instance& inst, const ComponentIndex& index);
bool is_independent(const Instance& inst);

// Path in G_alpha between two vertices whose S-neighbours witness the given
// rule, preferring paths whose interior lies in N0. Throws BranchError when no
// pair qualifies.
VertexSet find_branch_path(const Instance& inst, const MultiGraph& g_f,
                           const ExtendedSPDecomposition& decomp, int alpha, BranchKind kind,
                           const ComponentIndex& index);

}  // namespace k4cover
