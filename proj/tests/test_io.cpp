#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "k4cover/generators.hpp"
#include "k4cover/io.hpp"

using namespace k4cover;

namespace {

io::GraphFile parse_text(const std::string& text) {
  std::istringstream in(text);
  return io::parse(in);
}

// Edge multiset in external ids.
std::vector<std::pair<long, long>> labelled_edges(const io::GraphFile& f) {
  std::vector<std::pair<long, long>> out;
  for (const Edge& e : f.graph.edges()) out.emplace_back(std::minmax(f.label(e.u), f.label(e.v)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(EdgeList, ParsesCommentsAndParallels) {
  auto f = parse_text("# header\n3 7\n7 3  # again\n\n10 3\n12\n");
  EXPECT_EQ(f.format, io::Format::EdgeList);
  EXPECT_EQ(f.graph.num_vertices(), 4u);
  EXPECT_EQ(f.graph.num_edges(), 3u);
  EXPECT_EQ(f.labels, (std::vector<long>{3, 7, 10, 12}));
  EXPECT_EQ(f.graph.multiplicity(f.internal(3), f.internal(7)), 2u);
  EXPECT_EQ(f.graph.degree(f.internal(12)), 0u);
  EXPECT_THROW(f.internal(5), std::out_of_range);
}

TEST(EdgeList, Errors) {
  EXPECT_THROW(parse_text("1 1\n"), io::ParseError);
  EXPECT_THROW(parse_text("1 -2\n"), io::ParseError);
  EXPECT_THROW(parse_text("1 x\n"), io::ParseError);
  EXPECT_THROW(parse_text("1 2 3\n"), io::ParseError);
  try {
    parse_text("0 1\n\n2 2\n");
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Dimacs, Parses) {
  auto f = parse_text("c K3\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n");
  EXPECT_EQ(f.format, io::Format::Dimacs);
  EXPECT_EQ(f.graph.num_vertices(), 3u);
  EXPECT_EQ(f.graph.num_edges(), 3u);
  EXPECT_EQ(f.label(0), 1);
  EXPECT_EQ(f.internal(3), 2);
}

TEST(Dimacs, Errors) {
  EXPECT_THROW(parse_text("p edge 2 1\ne 1 1\n"), io::ParseError);
  EXPECT_THROW(parse_text("p edge 2 1\ne 1 3\n"), io::ParseError);
  EXPECT_THROW(parse_text("p edge 2 2\ne 1 2\n"), io::ParseError);
  EXPECT_THROW(parse_text("e 1 2\n"), io::ParseError);
  EXPECT_THROW(parse_text("p edge 2 1\nx 1 2\n"), io::ParseError);
}

TEST(RoundTrip, BothFormats) {
  gen::Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    io::GraphFile f;
    f.format = i % 2 ? io::Format::Dimacs : io::Format::EdgeList;
    f.graph = gen::random_multigraph(1 + static_cast<int>(rng() % 12), static_cast<int>(rng() % 20), rng);
    const long base = f.format == io::Format::Dimacs ? 1 : 0;
    for (VertexId v : f.graph.vertices()) f.labels.push_back(v + base);
    auto back = parse_text(io::serialize(f));
    EXPECT_EQ(back.format, f.format);
    EXPECT_EQ(back.labels, f.labels);
    EXPECT_EQ(labelled_edges(back), labelled_edges(f));
    EXPECT_EQ(io::serialize(back), io::serialize(f));
  }
}

TEST(Cover, PlainAndJson) {
  std::istringstream plain("# cover\n4 1\n9\n");
  EXPECT_EQ(io::parse_cover(plain), (std::vector<long>{4, 1, 9}));
  std::istringstream report(R"({"status": "YES", "cover": [2, 5]})");
  EXPECT_EQ(io::parse_cover(report), (std::vector<long>{2, 5}));
  std::istringstream bad(R"({"status": "NO"})");
  EXPECT_THROW(io::parse_cover(bad), io::ParseError);
}

TEST(Stats, JsonAndCsv) {
  SearchStats s;
  s.nodes = 2;
  s.rule_counts[static_cast<int>(RuleTag::Bypass)] = 3;
  s.mu_rows.push_back({0, -1, 0, {2, 1, 1, 45}, false});
  s.mu_rows.push_back({1, 0, 1, {1, 1, 1, 23}, true});
  auto j = io::to_json(s);
  EXPECT_EQ(j["nodes"], 2);
  EXPECT_EQ(j["rule_counts"]["bypass"], 3);
  EXPECT_TRUE(j.contains("mu_violations"));
  const std::string csv = io::mu_csv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "node,depth,k,cc,bc,mu,parent,branch_child");
  EXPECT_NE(csv.find("1,1,1,1,1,23,0,1"), std::string::npos);
  EXPECT_NE(io::rule_table(s).find("bypass,3"), std::string::npos);
}

TEST(Trace, Json) {
  Instance inst = make_instance(gen::cycle(5), {0}, 2);
  inst = reduce_exhaustively(std::move(inst));
  auto j = io::to_json(inst.trace);
  ASSERT_TRUE(j["steps"].is_array());
  EXPECT_FALSE(j["steps"].empty());
  EXPECT_EQ(j["s"], nlohmann::json::array({0}));
}
