#include "k4cover/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <mutex>
#include <thread>

namespace k4cover {

Measure measure(const Instance& inst, int c1) {
  ComponentIndex idx(inst);
  Measure m;
  m.k = inst.k;
  m.cc = idx.num_cc();
  m.bc = idx.num_bc();
  const long w = 2L * c1 + 2;
  m.value = w * m.k + w * m.cc + m.bc;
  return m;
}

void SearchStats::merge(const SearchStats& o) {
  const long offset = nodes;
  trees += o.trees;
  nodes += o.nodes;
  leaves += o.leaves;
  branchings += o.branchings;
  children += o.children;
  max_degree = std::max(max_degree, o.max_degree);
  for (int i = 0; i < 3; ++i) branch_counts[i] += o.branch_counts[i];
  pair_branchings += o.pair_branchings;
  for (int i = 0; i < kNumRuleTags; ++i) rule_counts[i] += o.rule_counts[i];
  protrusions += o.protrusions;
  protrusions_marked += o.protrusions_marked;
  protrusions_branched += o.protrusions_branched;
  protrusions_replaced += o.protrusions_replaced;
  replace_fallbacks += o.replace_fallbacks;
  replace_lift_failures += o.replace_lift_failures;
  protrusion_bound_violations += o.protrusion_bound_violations;
  mu_checks += o.mu_checks;
  mu_violations += o.mu_violations;
  bucket_checks += o.bucket_checks;
  bucket_violations += o.bucket_violations;
  independence_checks += o.independence_checks;
  independence_violations += o.independence_violations;
  witnesses += o.witnesses;
  witness_failures += o.witness_failures;
  bound_prunes += o.bound_prunes;
  max_branch_set = std::max(max_branch_set, o.max_branch_set);
  disconnected_rule1_sets += o.disconnected_rule1_sets;
  compressions += o.compressions;
  disjoint_calls += o.disjoint_calls;
  seconds += o.seconds;
  for (MuRow row : o.mu_rows) {
    row.node += offset;
    if (row.parent >= 0) row.parent += offset;
    mu_rows.push_back(row);
  }
}

namespace {

VertexSet f_vertices_of(const Instance& inst, const K4Witness& w) {
  VertexSet x;
  for (const auto& set : w.branch_sets)
    for (VertexId v : set)
      if (!inst.in_s(v)) x.insert(v);
  for (const auto& path : w.paths)
    for (VertexId v : path)
      if (!inst.in_s(v)) x.insert(v);
  return x;
}

// Drops vertices in ascending order while G[S + X] keeps a K4 minor.
VertexSet shrink_rule1_set(const Instance& inst, VertexSet x) {
  for (VertexId v : VertexSet(x)) {
    x.erase(v);
    if (is_k4_minor_free(induced_subgraph(inst.g, set_union(inst.s_set, x)))) x.insert(v);
  }
  return x;
}

std::optional<K4Witness> checked_model(const MultiGraph& g, SearchStats& stats) {
  auto model = find_k4_model(g);
  if (model) {
    ++stats.witnesses;
    if (!verify_witness(g, *model)) ++stats.witness_failures;
  }
  return model;
}

// Number of K4 models found with pairwise disjoint F-parts, stopping at
// `limit`. Every cover meets each F-part, so this bounds the optimum.
int packing_bound(const Instance& inst, int limit, SearchStats& stats) {
  MultiGraph h = inst.g;
  int count = 0;
  while (count < limit) {
    auto model = checked_model(h, stats);
    if (!model) break;
    ++count;
    for (VertexId v : f_vertices_of(inst, *model)) h.remove_vertex(v);
  }
  return count;
}

MinDeletions interior_solver(const SolverConfig& cfg) {
  return [cfg](const MultiGraph& g, const VertexSet& cands, int cap) -> std::optional<VertexSet> {
    SolverConfig c = cfg;
    c.protrusion.strategy = ProtrusionStrategy::Branch;
    c.record_mu = false;
    c.threads = 1;
    VertexSet s = set_difference(g.vertex_set(), cands);
    if (!is_k4_minor_free(induced_subgraph(g, s))) return std::nullopt;
    for (int k = 1; k <= cap + 1; ++k)
      if (auto w = solve_disjoint(g, s, k, c)) return w;
    return std::nullopt;
  };
}

class Search {
 public:
  Search(const SolverConfig& cfg, SearchStats& stats) : cfg_(cfg), stats_(stats) {}

  std::optional<VertexSet> run(Instance inst, long parent, int depth, const Measure* parent_mu) {
    const long id = stats_.nodes++;
    const Measure mu = measure(inst, cfg_.c1);
    record(id, parent, depth, mu, parent_mu);

    // Budget exhausted or S itself unusable.
    if (inst.k <= 0 || !is_k4_minor_free(induced_subgraph(inst.g, inst.s_set))) {
      ++stats_.leaves;
      return std::nullopt;
    }
    if (is_k4_minor_free(inst.g)) {
      ++stats_.leaves;
      return VertexSet{};
    }
    RuleCounts counts{};
    inst = reduce_exhaustively(std::move(inst), &counts);
    for (int i = 0; i < kNumRuleTags; ++i) stats_.rule_counts[i] += counts[i];
    if (is_k4_minor_free(inst.g)) {
      ++stats_.leaves;
      return VertexSet{};
    }
    if (cfg_.packing_bound && packing_bound(inst, inst.k, stats_) >= inst.k) {
      ++stats_.leaves;
      ++stats_.bound_prunes;
      return std::nullopt;
    }
    auto w = after_reduce(inst, id, depth, mu);
    if (!w) return std::nullopt;
    return lift_solution(inst.trace, *w);
  }

  std::optional<VertexSet> independent(const Instance& inst, long parent, int depth,
                                       const Measure* parent_mu) {
    const long id = stats_.nodes++;
    const Measure mu = measure(inst, cfg_.c1);
    record(id, parent, depth, mu, parent_mu);
    return endgame(inst, id, depth, mu);
  }

 private:
  void record(long id, long parent, int depth, const Measure& mu, const Measure* parent_mu) {
    if (parent_mu) {
      ++stats_.mu_checks;
      if (mu.value >= parent_mu->value) ++stats_.mu_violations;
    }
    if (cfg_.record_mu && stats_.mu_rows.size() < cfg_.max_mu_rows)
      stats_.mu_rows.push_back({id, parent, depth, mu, parent_mu != nullptr});
  }

  // Branching and endgame on a reduced instance; the result is in its vertex ids.
  std::optional<VertexSet> after_reduce(const Instance& inst, long id, int depth, const Measure& mu) {
    ComponentIndex idx(inst);
    if (auto b = simplify(inst, idx)) return branch(*b, id, depth, mu);
    ++stats_.bucket_checks;
    if (!all_in_low_buckets(inst)) ++stats_.bucket_violations;

    // Protrusions of G[F].
    const MultiGraph gf = induced_subgraph(inst.g, inst.f_set());
    const ExtendedSPDecomposition d = build_extended_decomposition(gf);
    SolverConfig local = cfg_;
    if (force_branch_ > 0) local.protrusion.strategy = ProtrusionStrategy::Branch;
    auto r = branch_or_reduce(inst, gf, d, idx, local, stats_, interior_solver(cfg_));
    if (r.branch) return branch(*r.branch, id, depth, mu);
    if (r.replacement) {
      ++stats_.children;
      auto w = run(r.replacement->inst, id, depth + 1, nullptr);
      if (!w) return std::nullopt;
      try {
        return lift_replacement(inst, *r.replacement, *w, interior_solver(cfg_));
      } catch (const ProtrusionError&) {
        ++stats_.replace_lift_failures;
        ++force_branch_;
        auto again = after_reduce(inst, id, depth, mu);
        --force_branch_;
        return again;
      }
    }

    // Endgame once every F part sees only independent conflicts.
    ++stats_.independence_checks;
    if (is_independent(inst, idx)) return endgame(inst, id, depth, mu);
    ++stats_.independence_violations;
    auto model = checked_model(inst.g, stats_);
    if (!model) return VertexSet{};
    BranchSet b = branch_rule1(inst, shrink_rule1_set(inst, f_vertices_of(inst, *model)));
    return branch(b, id, depth, mu);
  }

  std::optional<VertexSet> branch(const BranchSet& b, long id, int depth, const Measure& mu) {
    ++stats_.branchings;
    ++stats_.branch_counts[static_cast<int>(b.kind)];
    stats_.children += static_cast<long>(b.children.size());
    stats_.max_degree = std::max(stats_.max_degree, static_cast<int>(b.children.size()));
    stats_.max_branch_set = std::max(stats_.max_branch_set, static_cast<long>(b.x.size()));
    for (const Instance& child : b.children) {
      auto w = run(child, id, depth + 1, &mu);
      if (w) {
        w->insert(child.committed.begin(), child.committed.end());
        return w;
      }
    }
    return std::nullopt;
  }

  // Vertex cover of the conflict graph within budget k - 1.
  std::optional<VertexSet> endgame(const Instance& inst, long id, int depth, const Measure& mu) {
    ComponentIndex idx(inst);
    std::map<int, std::vector<VertexId>> by_block;
    for (VertexId v : inst.g.vertices()) {
      if (inst.in_s(v)) continue;
      auto nb = inst.g.neighbors(v);
      std::vector<int> common;
      std::set_intersection(idx.bc(nb[0]).begin(), idx.bc(nb[0]).end(), idx.bc(nb[1]).begin(),
                            idx.bc(nb[1]).end(), std::back_inserter(common));
      by_block[common.front()].push_back(v);
    }
    // Attachments to different blocks of G[S] never meet in a K4 model.
    std::vector<std::pair<VertexId, VertexId>> conflicts;
    for (const auto& [block, group] : by_block)
      for (std::size_t i = 0; i < group.size(); ++i)
        for (std::size_t j = i + 1; j < group.size(); ++j) {
          VertexSet sx = inst.s_set;
          sx.insert(group[i]);
          sx.insert(group[j]);
          if (!is_k4_minor_free(induced_subgraph(inst.g, sx))) conflicts.emplace_back(group[i], group[j]);
        }
    std::sort(conflicts.begin(), conflicts.end());
    return cover(conflicts, id, depth, mu);
  }

  std::optional<VertexSet> cover(const std::vector<std::pair<VertexId, VertexId>>& edges, long id,
                                 int depth, const Measure& mu) {
    if (edges.empty()) {
      ++stats_.leaves;
      return VertexSet{};
    }
    if (mu.k - 1 <= 0) {
      ++stats_.leaves;
      return std::nullopt;
    }
    ++stats_.branchings;
    ++stats_.pair_branchings;
    stats_.children += 2;
    stats_.max_degree = std::max(stats_.max_degree, 2);
    const auto [u, v] = edges.front();
    for (VertexId x : {u, v}) {
      std::vector<std::pair<VertexId, VertexId>> rest;
      for (const auto& e : edges)
        if (e.first != x && e.second != x) rest.push_back(e);
      Measure child = mu;
      --child.k;
      child.value -= 2L * cfg_.c1 + 2;
      const long cid = stats_.nodes++;
      record(cid, id, depth + 1, child, &mu);
      auto w = cover(rest, cid, depth + 1, child);
      if (w) {
        w->insert(x);
        return w;
      }
    }
    return std::nullopt;
  }

  const SolverConfig& cfg_;
  SearchStats& stats_;
  int force_branch_ = 0;
};

VertexSet s_neighbors_of(const Instance& inst, const VertexSet& x) {
  VertexSet out;
  for (VertexId v : x)
    for (VertexId w : inst.g.neighbors(v))
      if (inst.in_s(w)) out.insert(w);
  return out;
}

}  // namespace

BranchOrReduceResult branch_or_reduce(const Instance& inst, const MultiGraph& g_f,
                                      const ExtendedSPDecomposition& decomp,
                                      const ComponentIndex& index, const SolverConfig& cfg,
                                      SearchStats& stats, const MinDeletions& solve) {
  BranchOrReduceResult out;
  for (int alpha : decomp.bottom_up_order()) {
    const VertexSet va = decomp.vertices_below(alpha);
    const VertexSet ns_set = s_neighbors_of(inst, va);
    const std::vector<VertexId> ns(ns_set.begin(), ns_set.end());
    if (index.spans_components(ns)) {
      out.branch = branch_rule2(inst, find_branch_path(inst, g_f, decomp, alpha, BranchKind::Rule2, index));
      return out;
    }
    if (index.spans_blocks(ns)) {
      out.branch = branch_rule3(inst, find_branch_path(inst, g_f, decomp, alpha, BranchKind::Rule3, index));
      return out;
    }
    if (!ns.empty()) {
      const MultiGraph h = induced_subgraph(inst.g, set_union(inst.s_set, va));
      if (!is_k4_minor_free(h)) {
        auto model = checked_model(h, stats);
        VertexSet x = shrink_rule1_set(inst, f_vertices_of(inst, *model));
        if (!is_connected(induced_subgraph(inst.g, x))) ++stats.disconnected_rule1_sets;
        out.branch = branch_rule1(inst, x);
        return out;
      }
    }
    if (decomp.at(alpha).kind == DecompKind::Parallel) {
      std::optional<Protrusion> p;
      try {
        p = detect(inst, decomp, alpha, cfg.protrusion);
      } catch (const ProtrusionError&) {
        ++stats.protrusion_bound_violations;
      }
      if (p) {
        ++stats.protrusions;
        Disposal disp = dispose(inst, *p, cfg.protrusion, solve);
        if (disp.fell_back) ++stats.replace_fallbacks;
        if (disp.kind == Disposal::Kind::Branched) {
          ++stats.protrusions_branched;
          out.branch = std::move(disp.branch);
          return out;
        }
        if (disp.kind == Disposal::Kind::Replaced) {
          ++stats.protrusions_replaced;
          out.replacement = std::move(disp.replacement);
          return out;
        }
        ++stats.protrusions_marked;
      }
    }
    ++out.marked;
  }
  return out;
}

std::optional<VertexSet> solve_disjoint(const MultiGraph& g, const VertexSet& s_set, int k,
                                        const SolverConfig& cfg, SearchStats* stats) {
  for (VertexId v : s_set)
    if (!g.has_vertex(v)) throw std::invalid_argument("solve_disjoint: S has a vertex outside the graph");
  if (!is_k4_minor_free(delete_vertices(g, s_set)))
    throw std::invalid_argument("solve_disjoint: S is not a K4-minor cover");
  cfg.protrusion.validate();
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  const auto start = std::chrono::steady_clock::now();
  ++st.trees;
  ++st.disjoint_calls;
  Search search(cfg, st);
  auto w = search.run(make_instance(g, s_set, k), -1, 0, nullptr);
  st.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (w && (static_cast<int>(w->size()) > k - 1 || intersects(*w, s_set) ||
            !is_k4_minor_free(delete_vertices(g, *w))))
    throw std::logic_error("solve_disjoint produced an invalid cover");
  return w;
}

std::optional<VertexSet> solve_independent(const Instance& inst, SearchStats* stats) {
  if (!is_independent(inst)) throw std::invalid_argument("solve_independent: instance is not independent");
  SearchStats local;
  SolverConfig cfg;
  cfg.record_mu = stats != nullptr;
  Search search(cfg, stats ? *stats : local);
  return search.independent(inst, -1, 0, nullptr);
}

namespace {

std::vector<VertexSet> subsets_by_size(const VertexSet& s) {
  std::vector<VertexId> v(s.begin(), s.end());
  const int n = static_cast<int>(v.size());
  std::vector<VertexSet> out;
  for (int size = 1; size <= n; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      VertexSet t;
      for (int i : idx) t.insert(v[i]);
      out.push_back(std::move(t));
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

// Cover of h of size |s| - 1 built from s, or nullopt.
std::optional<VertexSet> compress(const MultiGraph& h, const VertexSet& s, const SolverConfig& cfg,
                                  SearchStats& stats) {
  ++stats.compressions;
  const std::vector<VertexSet> subsets = subsets_by_size(s);
  auto attempt = [&](std::size_t i, SearchStats& st) -> std::optional<VertexSet> {
    const VertexSet& keep = subsets[i];
    const VertexSet drop = set_difference(s, keep);
    auto w = solve_disjoint(delete_vertices(h, drop), keep, static_cast<int>(keep.size()), cfg, &st);
    if (!w) return std::nullopt;
    return set_union(drop, *w);
  };

  if (cfg.threads <= 1 || subsets.size() < 2) {
    for (std::size_t i = 0; i < subsets.size(); ++i)
      if (auto c = attempt(i, stats)) return c;
    return std::nullopt;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{SIZE_MAX};
  std::mutex mu;
  std::optional<VertexSet> best_cover;
  std::vector<SearchStats> per(cfg.threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < cfg.threads; ++t) {
    pool.emplace_back([&, t] {
      while (true) {
        const std::size_t i = next++;
        if (i >= subsets.size() || i > best.load()) return;
        auto c = attempt(i, per[t]);
        if (!c) continue;
        std::lock_guard<std::mutex> lock(mu);
        if (i < best.load()) {
          best = i;
          best_cover = std::move(c);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& p : per) stats.merge(p);
  return best_cover;
}

}  // namespace

std::optional<VertexSet> iterative_compress(const MultiGraph& g, int k, const SolverConfig& cfg,
                                            SearchStats* stats) {
  cfg.protrusion.validate();
  if (k < 0) return std::nullopt;
  if (is_k4_minor_free(g)) return VertexSet{};
  SearchStats local;
  SearchStats& st = stats ? *stats : local;

  MultiGraph h;
  VertexSet s;
  for (VertexId v : g.vertices()) {
    h.add_vertex(v);
    for (EdgeId e : g.incident(v)) {
      const Edge& edge = g.edge(e);
      if (h.has_vertex(edge.other(v)) && !h.has_edge(e)) h.insert_edge(edge);
    }
    // The previous cover may still work after adding v.
    if (is_k4_minor_free(delete_vertices(h, s))) continue;
    s.insert(v);
    if (static_cast<int>(s.size()) <= k) continue;
    auto smaller = compress(h, s, cfg, st);
    if (!smaller) return std::nullopt;
    s = std::move(*smaller);
  }
  if (static_cast<int>(s.size()) > k || !is_k4_minor_free(delete_vertices(g, s)))
    throw std::logic_error("iterative_compress produced an invalid cover");
  return s;
}

std::pair<int, VertexSet> minimum_cover(const MultiGraph& g, const SolverConfig& cfg, SearchStats* stats) {
  for (int k = 0;; ++k)
    if (auto w = iterative_compress(g, k, cfg, stats)) return {k, std::move(*w)};
}

}  // namespace k4cover
