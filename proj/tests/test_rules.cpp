#include <gtest/gtest.h>

#include <functional>

#include "k4cover/decompose.hpp"
#include "k4cover/generators.hpp"
#include "k4cover/oracle.hpp"
#include "k4cover/rules.hpp"
#include "support/fixtures.hpp"

using namespace k4cover;
using namespace k4cover::fixtures;

namespace {

Instance inst_of(const MultiGraph& g, VertexSet s, int k = 5) { return make_instance(g, std::move(s), k); }

int optimum(const Instance& inst) { return fixtures::disjoint_optimum(inst); }

// Oracle check that a rule application kept the optimum and that lifting a
// post-rule optimum gives a pre-rule cover of the same size.
void expect_safe(const Instance& pre, const Instance& post) {
  auto why = rule_violation(pre, post);
  ASSERT_FALSE(why) << *why;
}

void differential(const std::function<Instance(gen::Rng&)>& make,
                  const std::function<std::optional<Instance>(const Instance&)>& apply,
                  unsigned seed, int want = 200) {
  gen::Rng rng(seed);
  int hits = 0;
  for (int attempt = 0; attempt < 200000 && hits < want; ++attempt) {
    Instance pre = make(rng);
    auto post = apply(pre);
    if (!post) continue;
    ++hits;
    expect_safe(pre, *post);
    if (::testing::Test::HasFatalFailure()) return;
  }
  EXPECT_GE(hits, want);
}

}  // namespace

TEST(OneBoundary, PendantTreeCollapses) {
  // S = {0}, F tree rooted at 1: 1-2, 1-3, 3-4, and 1 attached to 0.
  MultiGraph g = gen::from_edges(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  Instance inst = inst_of(g, {0});
  Instance out = rule_1boundary(inst, {1, 2, 3, 4});
  // The set is connected to the rest by a single edge, so case (a) removes it all.
  EXPECT_EQ(out.g.vertex_set(), (VertexSet{0}));
  // With two edges into S the tree collapses onto its attachment vertex.
  g.add_edge(0, 1);
  out = rule_1boundary(inst_of(g, {0}), {1, 2, 3, 4});
  EXPECT_EQ(out.g.vertex_set(), (VertexSet{0, 1}));
  EXPECT_EQ(out.trace.steps.back().rule, RuleTag::OneBoundaryCut);
}

TEST(OneBoundary, FOnlyComponentDeleted) {
  MultiGraph g = gen::from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {5, 3}});
  Instance inst = inst_of(g, {0});
  auto x = find_1boundary_component(inst);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (VertexSet{3, 4, 5}));
  Instance out = rule_1boundary(inst, *x);
  EXPECT_EQ(out.g.vertex_set(), (VertexSet{0, 1, 2}));
  EXPECT_EQ(out.trace.steps.back().rule, RuleTag::OneBoundaryComponent);
}

TEST(OneBoundary, TwoBoundaryIsError) {
  MultiGraph g = gen::cycle(5);
  Instance inst = inst_of(g, {0});
  EXPECT_THROW(rule_1boundary(inst, {1, 2, 3, 4}), RuleError);
  EXPECT_THROW(rule_1boundary(inst, {2, 3}), RuleError);
  EXPECT_THROW(rule_1boundary(inst, {0, 1}), RuleError);
}

TEST(OneBoundary, CutSiteFound) {
  // Triangle 1-2-3 in F hanging at cut vertex 1 off the S-triangle side.
  MultiGraph g = gen::from_edges(6, {{0, 4}, {4, 5}, {5, 0}, {0, 1}, {4, 1}, {1, 2}, {2, 3}, {3, 1}});
  Instance inst = inst_of(g, {0, 4, 5});
  EXPECT_FALSE(find_1boundary_component(inst));
  auto x = find_1boundary_cut(inst);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (VertexSet{1, 2, 3}));
  Instance out = reduce_exhaustively(inst);
  EXPECT_FALSE(out.g.has_vertex(2));
  EXPECT_FALSE(out.g.has_vertex(3));
}

TEST(Bypass, Examples) {
  MultiGraph g = gen::from_edges(3, {{0, 1}, {1, 2}});
  Instance out = rule_bypass(inst_of(g, {0}), 1);
  EXPECT_FALSE(out.g.has_vertex(1));
  EXPECT_EQ(out.g.multiplicity(0, 2), 1u);

  MultiGraph dbl = gen::from_edges(2, {{0, 1}, {0, 1}});
  EXPECT_THROW(rule_bypass(inst_of(dbl, {0}), 1), RuleError);
  EXPECT_THROW(rule_bypass(inst_of(g, {0, 2}), 1), RuleError);
  EXPECT_THROW(rule_bypass(inst_of(g, {1}), 1), RuleError);
  EXPECT_THROW(rule_bypass(inst_of(g, {0}), 0), RuleError);
}

TEST(Parallel, Examples) {
  MultiGraph g = gen::from_edges(2, {{0, 1}, {0, 1}});
  EXPECT_EQ(rule_parallel(inst_of(g, {0}), 0, 1).g.multiplicity(0, 1), 1u);
  g.add_edge(0, 1);
  Instance out = rule_parallel(inst_of(g, {0}), 1, 0);
  EXPECT_EQ(out.g.multiplicity(0, 1), 1u);
  EXPECT_EQ(out.g.edges().front().id, 0);
  EXPECT_THROW(rule_parallel(inst_of(gen::path(2), {0}), 0, 1), RuleError);
  EXPECT_THROW(rule_parallel(inst_of(g, {0, 1}), 0, 1), RuleError);
}

TEST(Chandelier, FourFanContracts) {
  // Hub 0 in S, path 1-2-3-4, every path vertex joined to the hub.
  MultiGraph g = gen::from_edges(5, {{1, 2}, {2, 3}, {3, 4}, {0, 1}, {0, 2}, {0, 3}, {0, 4}});
  Instance inst = inst_of(g, {0});
  auto site = find_chandelier(inst);
  ASSERT_TRUE(site);
  EXPECT_EQ(site->second, 0);
  Instance out = rule_chandelier(inst, {1, 2, 3, 4}, 0);
  EXPECT_EQ(out.g.num_vertices(), 4u);
  EXPECT_EQ(out.g.num_edges(), 5u);
  const VertexId ue = out.trace.steps.back().merge.merged;
  EXPECT_EQ(out.g.multiplicity(ue, 0), 1u);
  EXPECT_TRUE(out.g.adjacent(ue, 1));
  EXPECT_TRUE(out.g.adjacent(ue, 4));
  EXPECT_EQ(lift_solution(out.trace, {ue}), (VertexSet{2}));
}

TEST(Chandelier, Errors) {
  MultiGraph g3 = gen::from_edges(4, {{1, 2}, {2, 3}, {0, 1}, {0, 2}, {0, 3}});
  EXPECT_THROW(rule_chandelier(inst_of(g3, {0}), {1, 2, 3}, 0), RuleError);
  MultiGraph g = gen::from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 1}});
  EXPECT_NO_THROW(rule_chandelier(inst_of(g, {0}), {1, 2, 3, 4}, 0));
  EXPECT_THROW(rule_chandelier(inst_of(g, {0, 5}), {1, 2, 3, 4}, 0), RuleError);
  g.add_edge(5, 2);
  EXPECT_THROW(rule_chandelier(inst_of(g, {0}), {1, 2, 3, 4}, 0), RuleError);
}

TEST(Chandelier, WheelShrinks) {
  // Hub in S over a 10-cycle: repeated contractions leave K4.
  MultiGraph g = gen::cycle(10);
  VertexId hub = g.add_vertex();
  for (VertexId v = 0; v < 10; ++v) g.add_edge(hub, v);
  RuleCounts counts{};
  Instance out = reduce_exhaustively(inst_of(g, {hub}), &counts);
  EXPECT_EQ(counts[static_cast<int>(RuleTag::Chandelier)], 7);
  EXPECT_EQ(out.g.num_vertices(), 4u);
  EXPECT_EQ(out.g.num_edges(), 6u);
  EXPECT_FALSE(is_k4_minor_free(out.g));
}

TEST(Chandelier, LongFanShrinks) {
  MultiGraph g = gen::path(10);
  VertexId hub = g.add_vertex();
  for (VertexId v = 0; v < 10; ++v) g.add_edge(hub, v);
  Instance out = reduce_exhaustively(inst_of(g, {hub}));
  EXPECT_LE(out.g.num_vertices() - 1, 3u);
}

TEST(TwoBoundary, PathReplacedByEdge) {
  // S = {0, 5}; F path 1-2-3-4 with 1 and 4 attached to S.
  MultiGraph g = gen::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 4}, {1, 5}});
  Instance inst = inst_of(g, {0, 5});
  Instance out = rule_2boundary(inst, {1, 2, 3, 4});
  EXPECT_FALSE(out.g.has_vertex(2));
  EXPECT_FALSE(out.g.has_vertex(3));
  EXPECT_EQ(out.g.multiplicity(1, 4), 1u);
  EXPECT_EQ(out.trace.steps.back().x0, (VertexSet{2, 3}));
  EXPECT_EQ(out.trace.steps.back().t, 4);
}

TEST(TwoBoundary, NonSeriesParallelGetsGadget) {
  // X = {s=1, t=2} plus a K4 on 3..6 wired between them; S = {0}.
  MultiGraph g = gen::from_edges(7, {{0, 1}, {0, 2}, {1, 3}, {2, 6}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}});
  Instance inst = inst_of(g, {0});
  Instance out = rule_2boundary(inst, {1, 2, 3, 4, 5, 6});
  const TraceStep& st = out.trace.steps.back();
  ASSERT_EQ(st.x0_new.size(), 2u);
  VertexId a = *st.x0_new.begin(), b = *st.x0_new.rbegin();
  EXPECT_EQ(out.g.num_vertices(), 5u);
  EXPECT_TRUE(out.g.adjacent(a, b));
  for (VertexId v : {a, b}) {
    EXPECT_TRUE(out.g.adjacent(v, 1));
    EXPECT_TRUE(out.g.adjacent(v, 2));
  }
  EXPECT_EQ(lift_solution(out.trace, {a}), (VertexSet{2}));
  EXPECT_EQ(optimum(inst), optimum(out));
}

TEST(TwoBoundary, GuardsAndErrors) {
  MultiGraph g = gen::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Instance inst = inst_of(g, {0});
  Instance same = rule_2boundary(inst, {1, 2});
  EXPECT_TRUE(same.trace.empty());
  EXPECT_EQ(same.g, inst.g);
  EXPECT_THROW(rule_2boundary(inst, {1}), RuleError);
  EXPECT_THROW(rule_2boundary(inst, {0, 1, 2}), RuleError);
  EXPECT_THROW(rule_2boundary(inst, {1, 3}), RuleError);
}

TEST(Reduce, AlreadyReducedUnchanged) {
  MultiGraph g = gen::complete(5);
  Instance inst = inst_of(g, {0});
  EXPECT_TRUE(is_reduced(inst));
  Instance out = reduce_exhaustively(inst);
  EXPECT_EQ(out.g, g);
  EXPECT_TRUE(out.trace.empty());
}

TEST(Reduce, LongPathBypassed) {
  MultiGraph g = gen::path(12);
  g.add_edge(0, 11);
  g.add_edge(0, 11);
  Instance out = reduce_exhaustively(inst_of(g, {0, 11}));
  EXPECT_LE(out.g.num_vertices(), 3u);
  EXPECT_TRUE(out.g.has_vertex(0));
  EXPECT_TRUE(out.g.has_vertex(11));
}

TEST(Reduce, IdempotentAndReplayable) {
  gen::Rng rng(11);
  for (int round = 0; round < 150; ++round) {
    Instance inst = random_rule_instance(rng, 5, 14);
    Instance once = reduce_exhaustively(inst);
    EXPECT_TRUE(is_reduced(once));
    Instance twice = reduce_exhaustively(once);
    EXPECT_EQ(twice.g, once.g);
    EXPECT_EQ(twice.trace.steps.size(), once.trace.steps.size());
    EXPECT_EQ(replay(inst.g, once.trace), once.g);
    EXPECT_EQ(induced_subgraph(once.g, once.s_set), induced_subgraph(inst.g, inst.s_set));
  }
}

TEST(Reduce, ExhaustiveKeepsOptimum) {
  gen::Rng rng(12);
  for (int round = 0; round < 200; ++round) {
    Instance inst = random_rule_instance(rng);
    Instance out = reduce_exhaustively(inst);
    expect_safe(inst, out);
    if (HasFatalFailure()) return;
  }
}

TEST(Lift, EmptyTrace) {
  ReductionTrace t;
  EXPECT_EQ(lift_solution(t, {3, 4}), (VertexSet{3, 4}));
  t.s_set = {3};
  EXPECT_THROW(lift_solution(t, {3}), std::logic_error);
}

TEST(Safety, OneBoundaryComponent) {
  differential(
      [](gen::Rng& r) { return random_rule_instance(r); },
      [](const Instance& i) -> std::optional<Instance> {
        auto x = find_1boundary_component(i);
        if (!x) return std::nullopt;
        return rule_1boundary(i, *x);
      },
      21);
}

TEST(Safety, OneBoundaryCut) {
  differential(
      [](gen::Rng& r) { return random_rule_instance(r); },
      [](const Instance& i) -> std::optional<Instance> {
        if (find_1boundary_component(i)) return std::nullopt;
        auto x = find_1boundary_cut(i);
        if (!x) return std::nullopt;
        return rule_1boundary(i, *x);
      },
      22);
}

TEST(Safety, Bypass) {
  differential(
      [](gen::Rng& r) { return random_rule_instance(r); },
      [](const Instance& i) -> std::optional<Instance> {
        auto v = find_bypass(i);
        if (!v) return std::nullopt;
        return rule_bypass(i, *v);
      },
      23);
}

TEST(Safety, Parallel) {
  differential(
      [](gen::Rng& r) { return random_rule_instance(r); },
      [](const Instance& i) -> std::optional<Instance> {
        auto p = find_parallel(i);
        if (!p) return std::nullopt;
        return rule_parallel(i, p->first, p->second);
      },
      24);
}

TEST(Safety, Chandelier) {
  differential(
      [](gen::Rng& r) { return chandelier_instance(r); },
      [](const Instance& i) -> std::optional<Instance> {
        auto c = find_chandelier(i);
        if (!c) return std::nullopt;
        return rule_chandelier(i, c->first, c->second);
      },
      25);
}

TEST(Safety, TwoBoundaryConstructed) {
  gen::Rng rng(26);
  int hits = 0, gadgets = 0;
  for (int attempt = 0; attempt < 20000 && hits < 200; ++attempt) {
    auto [pre, x] = two_boundary_instance(rng);
    Instance post;
    try {
      post = rule_2boundary(pre, x);
    } catch (const RuleError&) {
      continue;  // the region's boundary was not exactly {s, t}
    }
    if (post.trace.empty()) continue;
    ++hits;
    if (!post.trace.steps.back().x0_new.empty()) ++gadgets;
    expect_safe(pre, post);
    if (HasFatalFailure()) return;
  }
  EXPECT_GE(hits, 200);
  EXPECT_GE(gadgets, 20);
}

TEST(Safety, TwoBoundaryFound) {
  differential(
      [](gen::Rng& r) { return two_boundary_instance(r).inst; },
      [](const Instance& i) -> std::optional<Instance> {
        auto x = find_2boundary(i);
        if (!x) return std::nullopt;
        return rule_2boundary(i, *x);
      },
      27);
}
