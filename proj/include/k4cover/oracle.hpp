#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "k4cover/multigraph.hpp"

namespace k4cover::oracle {

struct OracleLimit {
  int max_vertices = 10;
  int max_subset_size = -1;  // negative: no cap
};

class LimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Exhaustive search over assignments of vertices to {unused, 1, 2, 3, 4}.
bool minor_test_k4(const MultiGraph& g, const OracleLimit& limit = {});

// Smallest cover, lexicographically first among those of minimum size.
std::pair<int, VertexSet> min_cover(const MultiGraph& g, const OracleLimit& limit = {});

// Smallest W inside V(g) minus s_set with |W| <= k-1 and g - W free of K4
// minors, or nullopt.
std::optional<VertexSet> min_disjoint_cover(const MultiGraph& g, const VertexSet& s_set, int k,
                                            const OracleLimit& limit = {});

}  // namespace k4cover::oracle
