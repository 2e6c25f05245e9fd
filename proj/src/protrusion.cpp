#include "k4cover/protrusion.hpp"

#include <algorithm>

#include "k4cover/oracle.hpp"

namespace k4cover {

const char* to_string(ProtrusionStrategy s) {
  return s == ProtrusionStrategy::Branch ? "branch" : "replace";
}

std::optional<ProtrusionStrategy> parse_strategy(std::string_view text) {
  if (text == "branch") return ProtrusionStrategy::Branch;
  if (text == "replace") return ProtrusionStrategy::Replace;
  return std::nullopt;
}

void ProtrusionConfig::validate() const {
  if (threshold < 5) throw std::invalid_argument("protrusion threshold must be at least 5");
}

std::optional<Protrusion> detect(const Instance& inst, const ExtendedSPDecomposition& decomp,
                                 int alpha, const ProtrusionConfig& cfg) {
  const DecompNode& node = decomp.at(alpha);
  if (node.kind != DecompKind::Parallel) throw std::invalid_argument("detect: node is not a P-node");
  VertexSet x = decomp.block_vertices_below(alpha);
  if (static_cast<int>(x.size()) < cfg.threshold) return std::nullopt;
  VertexSet b = boundary(inst.g, x);
  int outside = 0;
  for (VertexId v : b)
    if (std::find(node.label.begin(), node.label.end(), v) == node.label.end()) ++outside;
  if (outside > 2)
    throw ProtrusionError("protrusion has " + std::to_string(outside) + " boundary vertices outside the node terminals");
  return Protrusion{alpha, std::move(x), std::move(b)};
}

std::optional<VertexSet> brute_force_min_deletions(const MultiGraph& g, const VertexSet& candidates,
                                                   int cap) {
  std::vector<VertexId> c(candidates.begin(), candidates.end());
  const int n = static_cast<int>(c.size());
  for (int d = 0; d <= std::min(cap, n); ++d) {
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    while (true) {
      VertexSet del;
      for (int i : idx) del.insert(c[i]);
      if (is_k4_minor_free(delete_vertices(g, del))) return del;
      int i = d - 1;
      while (i >= 0 && idx[i] == n - d + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

namespace {

// Largest boundary the replace strategy handles.
constexpr std::size_t kMaxReplaceBoundary = 3;

int partner_count(std::size_t m) { return 1 << (m * (m - 1) / 2 + 2 * m + 1); }

// Partner: edges among the boundary plus two extra vertices q1, q2.
MultiGraph with_partner(const MultiGraph& host, const std::vector<VertexId>& b, int mask) {
  MultiGraph h = host;
  const VertexId q[2] = {h.add_vertex(), h.add_vertex()};
  int bit = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j, ++bit)
      if (mask >> bit & 1) h.add_edge(b[i], b[j]);
  for (VertexId x : q)
    for (std::size_t i = 0; i < b.size(); ++i, ++bit)
      if (mask >> bit & 1) h.add_edge(x, b[i]);
  if (mask >> bit & 1) h.add_edge(q[0], q[1]);
  return h;
}

int partner_value(const MultiGraph& host, const VertexSet& interior, const std::vector<VertexId>& b,
                  int mask, const MinDeletions& solve) {
  auto d = solve(with_partner(host, b, mask), interior, static_cast<int>(b.size()) + 1);
  return d ? static_cast<int>(d->size()) : -1;
}

// Catalog host: the boundary with its own edges plus r new vertices.
struct CatalogEntry {
  int r = 0;
  int mask_a = 0, mask_b = 0;
  bool ab = false;
};

std::vector<CatalogEntry> catalog(std::size_t m) {
  std::vector<CatalogEntry> out{{0, 0, 0, false}};
  const int full = 1 << m;
  for (int a = 0; a < full; ++a) out.push_back({1, a, 0, false});
  for (int ab = 1; ab >= 0; --ab)
    for (int a = 0; a < full; ++a)
      for (int b = a; b < full; ++b) out.push_back({2, a, b, ab == 1});
  return out;
}

std::vector<VertexId> attach(MultiGraph& g, const std::vector<VertexId>& b, const CatalogEntry& e) {
  std::vector<VertexId> added;
  for (int i = 0; i < e.r; ++i) added.push_back(g.add_vertex());
  for (int i = 0; i < e.r; ++i) {
    const int mask = i == 0 ? e.mask_a : e.mask_b;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (mask >> j & 1) g.add_edge(added[i], b[j]);
  }
  if (e.r == 2 && e.ab) g.add_edge(added[0], added[1]);
  return added;
}

std::optional<int> disjoint_optimum(const MultiGraph& g, const VertexSet& s) {
  auto w = oracle::min_disjoint_cover(g, s, static_cast<int>(g.num_vertices()) + 1);
  if (!w) return std::nullopt;
  return static_cast<int>(w->size());
}

Disposal branch_disposal(const Instance& inst, const Protrusion& p) {
  Disposal out;
  VertexSet sx = set_union(inst.s_set, p.x);
  MultiGraph h = induced_subgraph(inst.g, sx);
  auto model = find_k4_model(h);
  if (!model) return out;
  VertexSet x;
  for (const auto& set : model->branch_sets)
    for (VertexId v : set)
      if (!inst.in_s(v)) x.insert(v);
  for (const auto& path : model->paths)
    for (VertexId v : path)
      if (!inst.in_s(v)) x.insert(v);
  for (VertexId v : VertexSet(x)) {
    x.erase(v);
    if (is_k4_minor_free(induced_subgraph(inst.g, set_union(inst.s_set, x)))) x.insert(v);
  }
  out.kind = Disposal::Kind::Branched;
  out.branch = branch_rule1(inst, x);
  return out;
}

}  // namespace

Signature boundaried_signature(const MultiGraph& host, const VertexSet& interior,
                               const std::vector<VertexId>& boundary, const MinDeletions& solve) {
  Signature sig;
  const int n = partner_count(boundary.size());
  for (int mask = 0; mask < n; ++mask) sig.push_back(partner_value(host, interior, boundary, mask, solve));
  return sig;
}

Disposal dispose(const Instance& inst, const Protrusion& p, const ProtrusionConfig& cfg,
                 const MinDeletions& solve) {
  if (cfg.strategy == ProtrusionStrategy::Branch) return branch_disposal(inst, p);
  if (p.boundary.size() > kMaxReplaceBoundary) {
    Disposal out = branch_disposal(inst, p);
    out.fell_back = true;
    return out;
  }

  const std::vector<VertexId> b(p.boundary.begin(), p.boundary.end());
  const VertexSet interior = set_difference(p.x, p.boundary);
  const MultiGraph host = induced_subgraph(inst.g, p.x);
  const Signature target = boundaried_signature(host, interior, b, solve);
  const MultiGraph rim = induced_subgraph(inst.g, p.boundary);

  for (const CatalogEntry& e : catalog(b.size())) {
    if (e.r >= static_cast<int>(interior.size())) break;
    MultiGraph small = rim;
    std::vector<VertexId> added = attach(small, b, e);
    const VertexSet small_interior(added.begin(), added.end());
    std::optional<int> offset;
    bool match = true;
    for (int mask = 0; mask < static_cast<int>(target.size()) && match; ++mask) {
      const int v = partner_value(small, small_interior, b, mask, brute_force_min_deletions);
      if ((v < 0) != (target[mask] < 0)) match = false;
      else if (v >= 0) {
        if (!offset) offset = target[mask] - v;
        match = *offset == target[mask] - v;
      }
    }
    if (!match || offset.value_or(0) < 0) continue;

    Replacement r;
    r.k_offset = offset.value_or(0);
    r.interior = interior;
    r.boundary = p.boundary;
    MultiGraph g = delete_vertices(inst.g, interior);
    r.added = attach(g, b, e);
    r.inst = make_instance(std::move(g), inst.s_set, inst.k - r.k_offset);

    if (inst.g.num_vertices() <= 10 && r.inst.g.num_vertices() <= 10) {
      auto before = disjoint_optimum(inst.g, inst.s_set);
      auto after = disjoint_optimum(r.inst.g, r.inst.s_set);
      const bool agree = before.has_value() == after.has_value() &&
                         (!before || *before == *after + r.k_offset);
      if (!agree) break;
    }
    Disposal out;
    out.kind = Disposal::Kind::Replaced;
    out.replacement = std::move(r);
    return out;
  }
  Disposal out = branch_disposal(inst, p);
  out.fell_back = true;
  return out;
}

VertexSet lift_replacement(const Instance& original, const Replacement& r, const VertexSet& w,
                           const MinDeletions& solve) {
  VertexSet outside = w;
  int used = 0;
  for (VertexId v : r.added) used += static_cast<int>(outside.erase(v));
  const MultiGraph g = delete_vertices(original.g, outside);
  auto d = solve(g, r.interior, used + r.k_offset);
  if (!d) throw ProtrusionError("replacement lift found no interior cover of the promised size");
  return set_union(outside, *d);
}

}  // namespace k4cover
