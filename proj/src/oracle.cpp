#include "k4cover/oracle.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace k4cover::oracle {

namespace {

using Mask = std::uint32_t;

struct Bits {
  std::vector<VertexId> ids;
  std::vector<Mask> adj;
};

Bits to_bits(const MultiGraph& g, const OracleLimit& limit) {
  const int n = static_cast<int>(g.num_vertices());
  if (n > limit.max_vertices || n > 31)
    throw LimitExceeded("oracle: " + std::to_string(n) + " vertices exceeds limit " +
                        std::to_string(limit.max_vertices));
  Bits b;
  b.ids = g.vertices();
  b.adj.assign(n, 0);
  auto pos = [&](VertexId v) {
    for (int i = 0; i < n; ++i)
      if (b.ids[i] == v) return i;
    return -1;
  };
  for (const Edge& e : g.edges()) {
    int u = pos(e.u);
    int v = pos(e.v);
    b.adj[u] |= Mask{1} << v;
    b.adj[v] |= Mask{1} << u;
  }
  return b;
}

bool connected_mask(const std::vector<Mask>& adj, Mask set) {
  if (set == 0) return false;
  Mask seen = set & (~set + 1);
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= adj[__builtin_ctz(f)];
    next &= set & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == set;
}

class Search {
 public:
  Search(const std::vector<Mask>& adj, Mask alive) : adj_(adj) {
    for (int i = 0; i < static_cast<int>(adj.size()); ++i)
      if (alive >> i & 1) order_.push_back(i);
  }

  bool run() { return step(0, 0); }

 private:
  bool step(std::size_t i, int used) {
    const int remaining = static_cast<int>(order_.size() - i);
    if (used + remaining < 4) return false;
    if (i == order_.size()) return check();
    const int v = order_[i];
    const Mask bit = Mask{1} << v;
    if (step(i + 1, used)) return true;
    // Restricted growth: a new label may only be the next unused one.
    for (int c = 0; c < used; ++c) {
      sets_[c] |= bit;
      bool hit = step(i + 1, used);
      sets_[c] &= ~bit;
      if (hit) return true;
    }
    if (used < 4) {
      sets_[used] |= bit;
      bool hit = step(i + 1, used + 1);
      sets_[used] &= ~bit;
      if (hit) return true;
    }
    return false;
  }

  bool check() const {
    std::array<Mask, 4> reach{};
    for (int c = 0; c < 4; ++c)
      for (Mask f = sets_[c]; f; f &= f - 1) reach[c] |= adj_[__builtin_ctz(f)];
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (!(reach[a] & sets_[b])) return false;
    for (int c = 0; c < 4; ++c)
      if (!connected_mask(adj_, sets_[c])) return false;
    return true;
  }

  const std::vector<Mask>& adj_;
  std::vector<int> order_;
  std::array<Mask, 4> sets_{};
};

bool has_k4(const Bits& b, Mask alive) {
  std::vector<Mask> adj = b.adj;
  for (Mask& m : adj) m &= alive;
  return Search(adj, alive).run();
}

// Calls f on each subset of `pool` of size r in lexicographic order; stops when f returns true.
template <typename F>
bool for_each_subset(const std::vector<int>& pool, int r, F&& f) {
  const int n = static_cast<int>(pool.size());
  if (r > n) return false;
  std::vector<int> pick(r);
  for (int i = 0; i < r; ++i) pick[i] = i;
  while (true) {
    Mask m = 0;
    for (int p : pick) m |= Mask{1} << pool[p];
    if (f(m)) return true;
    int i = r - 1;
    while (i >= 0 && pick[i] == n - r + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
}

VertexSet to_set(const Bits& b, Mask m) {
  VertexSet out;
  for (; m; m &= m - 1) out.insert(b.ids[__builtin_ctz(m)]);
  return out;
}

}  // namespace

bool minor_test_k4(const MultiGraph& g, const OracleLimit& limit) {
  const Bits b = to_bits(g, limit);
  const int n = static_cast<int>(b.ids.size());
  return has_k4(b, n == 32 ? ~Mask{0} : (Mask{1} << n) - 1);
}

std::pair<int, VertexSet> min_cover(const MultiGraph& g, const OracleLimit& limit) {
  const Bits b = to_bits(g, limit);
  const int n = static_cast<int>(b.ids.size());
  const Mask all = (Mask{1} << n) - 1;
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  const int cap = limit.max_subset_size < 0 ? n : std::min(n, limit.max_subset_size);
  for (int r = 0; r <= cap; ++r) {
    Mask found = 0;
    bool ok = for_each_subset(pool, r, [&](Mask w) {
      if (has_k4(b, all & ~w)) return false;
      found = w;
      return true;
    });
    if (ok) return {r, to_set(b, found)};
  }
  throw LimitExceeded("oracle: no cover within the subset-size cap");
}

std::optional<VertexSet> min_disjoint_cover(const MultiGraph& g, const VertexSet& s_set, int k,
                                            const OracleLimit& limit) {
  const Bits b = to_bits(g, limit);
  if (k <= 0) return std::nullopt;
  const int n = static_cast<int>(b.ids.size());
  const Mask all = (Mask{1} << n) - 1;
  std::vector<int> pool;
  for (int i = 0; i < n; ++i)
    if (!s_set.count(b.ids[i])) pool.push_back(i);
  int cap = k - 1;
  if (limit.max_subset_size >= 0) cap = std::min(cap, limit.max_subset_size);
  for (int r = 0; r <= cap && r <= static_cast<int>(pool.size()); ++r) {
    Mask found = 0;
    bool ok = for_each_subset(pool, r, [&](Mask w) {
      if (has_k4(b, all & ~w)) return false;
      found = w;
      return true;
    });
    if (ok) return to_set(b, found);
  }
  return std::nullopt;
}

}  // namespace k4cover::oracle
