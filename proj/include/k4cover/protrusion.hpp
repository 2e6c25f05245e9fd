#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "k4cover/branching.hpp"
#include "k4cover/decompose.hpp"
#include "k4cover/rules.hpp"

namespace k4cover {

enum class ProtrusionStrategy { Branch, Replace };
const char* to_string(ProtrusionStrategy s);
std::optional<ProtrusionStrategy> parse_strategy(std::string_view text);

struct ProtrusionConfig {
  int threshold = 64;
  ProtrusionStrategy strategy = ProtrusionStrategy::Branch;

  // Throws std::invalid_argument when threshold < 5.
  void validate() const;
};

struct Protrusion {
  int alpha = -1;
  VertexSet x;         // V^B_alpha
  VertexSet boundary;  // boundary of x in G, at most four vertices
};

class ProtrusionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Returns the protrusion below P-node alpha when it is large enough. Throws
// std::invalid_argument for a non-P-node and ProtrusionError when more than
// two boundary vertices lie outside the node's terminals.
std::optional<Protrusion> detect(const Instance& inst, const ExtendedSPDecomposition& decomp,
                                 int alpha, const ProtrusionConfig& cfg);

// Smallest set D within `candidates`, |D| <= cap, with g - D free of K4
// minors; nullopt when none exists.
using MinDeletions =
    std::function<std::optional<VertexSet>(const MultiGraph& g, const VertexSet& candidates, int cap)>;
std::optional<VertexSet> brute_force_min_deletions(const MultiGraph& g, const VertexSet& candidates,
                                                   int cap);

// Per partner graph on the boundary plus two extra vertices: the fewest interior
// deletions that leave host + partner free of K4 minors, capped at
// |boundary| + 1 (-1 when even that is not enough).
using Signature = std::vector<int>;
Signature boundaried_signature(const MultiGraph& host, const VertexSet& interior,
                               const std::vector<VertexId>& boundary, const MinDeletions& solve);

struct Replacement {
  Instance inst;
  int k_offset = 0;
  VertexSet interior;           // deleted from the original graph
  VertexSet boundary;
  std::vector<VertexId> added;  // gadget vertices in the new graph
};

struct Disposal {
  enum class Kind { Marked, Branched, Replaced };
  Kind kind = Kind::Marked;
  std::optional<BranchSet> branch;
  std::optional<Replacement> replacement;
  // Replace was requested but could not be used: no gadget matched, the
  // small-instance cross-check disagreed, or the boundary has four vertices.
  bool fell_back = false;
};

Disposal dispose(const Instance& inst, const Protrusion& p, const ProtrusionConfig& cfg,
                 const MinDeletions& solve = brute_force_min_deletions);

// Maps a cover of the replaced instance back, re-solving inside the original
// interior. Throws ProtrusionError when no interior set of the promised size
// exists (the signature did not capture the protrusion).
VertexSet lift_replacement(const Instance& original, const Replacement& r, const VertexSet& w,
                           const MinDeletions& solve = brute_force_min_deletions);

}  // namespace k4cover
