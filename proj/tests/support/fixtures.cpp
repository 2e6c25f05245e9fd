#include "support/fixtures.hpp"

#include "k4cover/oracle.hpp"

namespace k4cover::fixtures {

bool valid_cover(const MultiGraph& g, const VertexSet& s, const VertexSet& w) {
  for (VertexId v : w)
    if (!g.has_vertex(v) || s.count(v)) return false;
  return is_k4_minor_free(delete_vertices(g, w));
}

int disjoint_optimum(const Instance& inst) {
  auto w = oracle::min_disjoint_cover(inst.g, inst.s_set, static_cast<int>(inst.g.num_vertices()) + 1);
  return w ? static_cast<int>(w->size()) : -1;
}

bool disjoint_yes(const Instance& inst) { return oracle::min_disjoint_cover(inst.g, inst.s_set, inst.k).has_value(); }

bool proper(const MultiGraph& g, const VertexSet& s) {
  return is_k4_minor_free(induced_subgraph(g, s)) && is_k4_minor_free(delete_vertices(g, s));
}

// Random multigraph with a random forbidden set that makes a proper instance.
Instance random_rule_instance(gen::Rng& rng, int n_min, int n_max) {
  const int n = n_min + static_cast<int>(rng() % (n_max - n_min + 1));
  const int m = n + static_cast<int>(rng() % (n + 4));
  MultiGraph g = gen::random_multigraph(n, m, rng);
  VertexSet s;
  for (int tries = 0;; ++tries) {
    if (tries == 50) return random_rule_instance(rng, n_min, n_max);
    s.clear();
    const int size = 1 + static_cast<int>(rng() % 4);
    while (static_cast<int>(s.size()) < size) s.insert(static_cast<VertexId>(rng() % n));
    if (proper(g, s)) break;
  }
  return make_instance(g, s, n);
}

// A hub in S, a path u1..ul fanned out over it, and a few extra vertices
// hanging off the path ends.
Instance chandelier_instance(gen::Rng& rng) {
  MultiGraph g;
  VertexId hub = g.add_vertex();
  const int len = 4 + static_cast<int>(rng() % 3);
  std::vector<VertexId> p;
  for (int i = 0; i < len; ++i) {
    p.push_back(g.add_vertex());
    g.add_edge(p.back(), hub);
    if (i > 0) g.add_edge(p[i - 1], p[i]);
  }
  VertexSet s{hub};
  const int extra = static_cast<int>(rng() % (10 - len));
  std::vector<VertexId> xs;
  for (int i = 0; i < extra; ++i) {
    VertexId v = g.add_vertex();
    xs.push_back(v);
    if (rng() % 3 == 0) s.insert(v);
  }
  for (VertexId v : xs) {
    const int links = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < links; ++j) {
      int pick = static_cast<int>(rng() % (xs.size() + 3));
      VertexId o = pick < static_cast<int>(xs.size()) ? xs[pick]
                   : pick == static_cast<int>(xs.size()) ? hub
                   : pick == static_cast<int>(xs.size()) + 1 ? p.front()
                                                              : p.back();
      if (o == v) continue;
      if ((o == p.front() || o == p.back()) && s.count(v)) continue;
      g.add_edge(v, o);
    }
  }
  if (!proper(g, s)) return chandelier_instance(rng);
  return make_instance(g, s, g.num_vertices());
}

// Rest graph R (holding S) joined to a region X through two F vertices s,t.
TwoBoundarySite two_boundary_instance(gen::Rng& rng) {
  MultiGraph g;
  const int inner = 1 + static_cast<int>(rng() % 5);
  VertexId s = g.add_vertex(), t = g.add_vertex();
  std::vector<VertexId> in;
  for (int i = 0; i < inner; ++i) in.push_back(g.add_vertex());
  std::vector<VertexId> xv = in;
  xv.push_back(s);
  xv.push_back(t);
  // Connect the region: a spanning path s, interior..., t, then random chords.
  std::vector<VertexId> order{s};
  order.insert(order.end(), in.begin(), in.end());
  order.push_back(t);
  for (std::size_t i = 1; i < order.size(); ++i) g.add_edge(order[i - 1], order[i]);
  const int chords = static_cast<int>(rng() % (2 * inner + 2));
  for (int i = 0; i < chords; ++i) {
    VertexId a = xv[rng() % xv.size()], b = xv[rng() % xv.size()];
    if (a != b && !(a == s && b == t) && !(a == t && b == s)) g.add_edge(a, b);
  }
  const int rest = 1 + static_cast<int>(rng() % std::max(1, 9 - static_cast<int>(xv.size())));
  std::vector<VertexId> rv;
  VertexSet sset;
  for (int i = 0; i < rest; ++i) {
    rv.push_back(g.add_vertex());
    if (i == 0 || rng() % 2) sset.insert(rv.back());
  }
  g.add_edge(s, rv[0]);
  g.add_edge(t, rv[rng() % rv.size()]);
  for (int i = 0; i < rest + 1; ++i) {
    std::vector<VertexId> pool = rv;
    pool.push_back(s);
    pool.push_back(t);
    VertexId a = rv[rng() % rv.size()], b = pool[rng() % pool.size()];
    if (a != b) g.add_edge(a, b);
  }
  if (!proper(g, sset)) return two_boundary_instance(rng);
  return {make_instance(g, sset, g.num_vertices()), VertexSet(xv.begin(), xv.end())};
}

Instance random_branch_instance(gen::Rng& rng) {
  while (true) {
    const int n = 4 + static_cast<int>(rng() % 6);
    MultiGraph g = gen::random_multigraph(n, n + static_cast<int>(rng() % (n + 3)), rng, rng() % 2);
    VertexSet s;
    const int size = 2 + static_cast<int>(rng() % 4);
    while (static_cast<int>(s.size()) < std::min(size, n - 1)) s.insert(static_cast<VertexId>(rng() % n));
    if (proper(g, s)) return make_instance(g, s, static_cast<int>(s.size()));
  }
}

// Random connected subset of F grown from a random start.
VertexSet random_connected(const Instance& inst, gen::Rng& rng) {
  VertexSet f = inst.f_set();
  if (f.empty()) return {};
  std::vector<VertexId> fv(f.begin(), f.end());
  VertexSet x{fv[rng() % fv.size()]};
  const std::size_t want = 1 + rng() % 4;
  for (int step = 0; step < 8 && x.size() < want; ++step) {
    std::vector<VertexId> frontier;
    for (VertexId v : x)
      for (VertexId w : inst.g.neighbors(v))
        if (f.count(w) && !x.count(w)) frontier.push_back(w);
    if (frontier.empty()) break;
    x.insert(frontier[rng() % frontier.size()]);
  }
  return x;
}

Instance chorded_cycle_instance(gen::Rng& rng) {
  while (true) {
    const int len = 4 + static_cast<int>(rng() % 4);
    MultiGraph g = gen::cycle(len);
    VertexSet s = g.vertex_set();
    if (rng() % 3 == 0) {
      VertexId p = g.add_vertex();
      g.add_edge(p, static_cast<VertexId>(rng() % len));
      s.insert(p);
    }
    const int chords = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < chords; ++i) {
      VertexId v = g.add_vertex();
      const auto a = static_cast<VertexId>(rng() % len);
      const auto b = static_cast<VertexId>((a + 2 + rng() % (len - 3)) % len);
      g.add_edge(v, a);
      g.add_edge(v, b);
    }
    if (rng() % 4 == 0) {
      VertexId v = g.add_vertex();
      g.add_edge(v, static_cast<VertexId>(rng() % len));
      g.add_edge(v, static_cast<VertexId>(g.num_vertices() - 2));
    }
    if (g.num_vertices() <= 10 && proper(g, s))
      return make_instance(g, s, static_cast<int>(g.num_vertices() - s.size()) + 1);
  }
}

std::optional<std::string> rule_violation(const Instance& pre, const Instance& post) {
  if (post.s_set != pre.s_set || post.k != pre.k) return "S or k changed";
  if (!(induced_subgraph(post.g, post.s_set) == induced_subgraph(pre.g, pre.s_set))) return "G[S] changed";
  const int before = disjoint_optimum(pre);
  const int after = disjoint_optimum(post);
  if (before != after) return "optimum " + std::to_string(before) + " became " + std::to_string(after);
  auto w = oracle::min_disjoint_cover(post.g, post.s_set, static_cast<int>(post.g.num_vertices()) + 1);
  if (!w) return "post instance has no cover";
  const VertexSet lifted = lift_solution(post.trace, *w);
  if (static_cast<int>(lifted.size()) != before) return "lifted cover has the wrong size";
  if (!valid_cover(pre.g, pre.s_set, lifted)) return "lifted cover is invalid";
  if (!(replay(pre.g, post.trace) == post.g)) return "trace replay differs";
  return std::nullopt;
}

bool branch_safe(const Instance& parent, const BranchSet& b) {
  bool any = false;
  for (const Instance& c : b.children) any = any || disjoint_yes(c);
  return disjoint_yes(parent) == any;
}

}  // namespace k4cover::fixtures
