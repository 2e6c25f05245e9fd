#include "k4cover/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace k4cover::io {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

VertexId GraphFile::internal(long label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) throw std::out_of_range("vertex " + std::to_string(label) + " is not in the graph");
  return static_cast<VertexId>(it - labels.begin());
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

long read_id(std::istringstream& ss, int line) {
  std::string tok;
  ss >> tok;
  std::size_t used = 0;
  long v = -1;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a vertex id, got '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(line, "expected a vertex id, got '" + tok + "'");
  return v;
}

void expect_end(std::istringstream& ss, int line) {
  std::string extra;
  if (ss >> extra) throw ParseError(line, "unexpected token '" + extra + "'");
}

GraphFile parse_edge_list(std::istream& in) {
  std::vector<std::pair<long, long>> edges;
  std::vector<long> ids;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    const std::string text = strip_comment(raw);
    if (blank(text)) continue;
    std::istringstream ss(text);
    const long u = read_id(ss, line);
    if (u < 0) throw ParseError(line, "negative vertex id");
    ids.push_back(u);
    if (!(ss >> std::ws) || ss.peek() == EOF) continue;  // isolated vertex
    const long v = read_id(ss, line);
    expect_end(ss, line);
    if (v < 0) throw ParseError(line, "negative vertex id");
    if (u == v) throw ParseError(line, "loop at vertex " + std::to_string(u));
    ids.push_back(v);
    edges.emplace_back(u, v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  GraphFile out;
  out.format = Format::EdgeList;
  out.labels = ids;
  for (std::size_t i = 0; i < ids.size(); ++i) out.graph.add_vertex(static_cast<VertexId>(i));
  for (auto [u, v] : edges) out.graph.add_edge(out.internal(u), out.internal(v));
  return out;
}

GraphFile parse_dimacs(std::istream& in) {
  GraphFile out;
  out.format = Format::Dimacs;
  long n = -1, m = -1, seen = 0;
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    const std::string text = strip_comment(raw);
    if (blank(text)) continue;
    std::istringstream ss(text);
    std::string tag;
    ss >> tag;
    if (tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      ss >> kind;
      if (kind != "edge" || n >= 0) throw ParseError(line, "expected a single 'p edge n m' header");
      n = read_id(ss, line);
      m = read_id(ss, line);
      expect_end(ss, line);
      if (n < 0 || m < 0) throw ParseError(line, "negative size in header");
      for (long i = 0; i < n; ++i) {
        out.graph.add_vertex(static_cast<VertexId>(i));
        out.labels.push_back(i + 1);
      }
    } else if (tag == "e") {
      if (n < 0) throw ParseError(line, "edge before the 'p' header");
      const long u = read_id(ss, line), v = read_id(ss, line);
      expect_end(ss, line);
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(line, "vertex id out of range 1.." + std::to_string(n));
      if (u == v) throw ParseError(line, "loop at vertex " + std::to_string(u));
      out.graph.add_edge(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1));
      ++seen;
    } else {
      throw ParseError(line, "unknown line type '" + tag + "'");
    }
  }
  if (n < 0) throw ParseError(0, "missing 'p edge n m' header");
  if (seen != m) throw ParseError(0, "header promises " + std::to_string(m) + " edges, found " + std::to_string(seen));
  return out;
}

}  // namespace

GraphFile parse(std::istream& in, Format format) {
  return format == Format::Dimacs ? parse_dimacs(in) : parse_edge_list(in);
}

GraphFile parse(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::istringstream lines(text);
  Format format = Format::EdgeList;
  std::string raw;
  while (std::getline(lines, raw)) {
    const std::string t = strip_comment(raw);
    if (blank(t)) continue;
    std::istringstream ss(t);
    std::string tag;
    ss >> tag;
    if (tag == "p" || tag == "c" || tag == "e") format = Format::Dimacs;
    break;
  }
  std::istringstream again(text);
  return parse(again, format);
}

GraphFile read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse(in);
}

std::string serialize(const GraphFile& file) {
  std::ostringstream out;
  const MultiGraph& g = file.graph;
  if (file.format == Format::Dimacs) {
    out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) out << "e " << file.label(e.u) << ' ' << file.label(e.v) << '\n';
    return out.str();
  }
  for (const Edge& e : g.edges()) out << file.label(e.u) << ' ' << file.label(e.v) << '\n';
  for (VertexId v : g.vertices())
    if (g.degree(v) == 0) out << file.label(v) << '\n';
  return out.str();
}

std::string to_edge_list(const MultiGraph& g) {
  std::ostringstream out;
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  for (VertexId v : g.vertices())
    if (g.degree(v) == 0) out << v << '\n';
  return out.str();
}

std::vector<long> parse_cover(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<long> out;
  if (first != std::string::npos && text[first] == '{') {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("cover") || !j["cover"].is_array()) throw ParseError(0, "JSON cover file needs a \"cover\" array");
    for (const auto& v : j["cover"]) out.push_back(v.get<long>());
    return out;
  }
  std::istringstream lines(text);
  std::string raw;
  for (int line = 1; std::getline(lines, raw); ++line) {
    std::istringstream ss(strip_comment(raw));
    std::string tok;
    while (ss >> tok) {
      std::istringstream one(tok);
      out.push_back(read_id(one, line));
    }
  }
  return out;
}

std::vector<long> read_cover(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_cover(in);
}

nlohmann::json to_json(const SearchStats& s) {
  nlohmann::json rules = nlohmann::json::object();
  for (int i = 0; i < kNumRuleTags; ++i) rules[to_string(static_cast<RuleTag>(i))] = s.rule_counts[i];
  nlohmann::json branches = nlohmann::json::object();
  for (int i = 0; i < 3; ++i) branches[to_string(static_cast<BranchKind>(i))] = s.branch_counts[i];
  return {
      {"trees", s.trees},
      {"nodes", s.nodes},
      {"leaves", s.leaves},
      {"branchings", s.branchings},
      {"children", s.children},
      {"max_degree", s.max_degree},
      {"branch_counts", branches},
      {"pair_branchings", s.pair_branchings},
      {"rule_counts", rules},
      {"protrusions",
       {{"detected", s.protrusions},
        {"marked", s.protrusions_marked},
        {"branched", s.protrusions_branched},
        {"replaced", s.protrusions_replaced},
        {"replace_fallbacks", s.replace_fallbacks},
        {"replace_lift_failures", s.replace_lift_failures},
        {"bound_violations", s.protrusion_bound_violations}}},
      {"mu_checks", s.mu_checks},
      {"mu_violations", s.mu_violations},
      {"bucket_checks", s.bucket_checks},
      {"bucket_violations", s.bucket_violations},
      {"independence_checks", s.independence_checks},
      {"independence_violations", s.independence_violations},
      {"witnesses", s.witnesses},
      {"witness_failures", s.witness_failures},
      {"bound_prunes", s.bound_prunes},
      {"max_branch_set", s.max_branch_set},
      {"disconnected_rule1_sets", s.disconnected_rule1_sets},
      {"compressions", s.compressions},
      {"disjoint_calls", s.disjoint_calls},
      {"seconds", s.seconds},
  };
}

nlohmann::json to_json(const SolverConfig& c) {
  return {{"c1", c.c1},
          {"protrusion_threshold", c.protrusion.threshold},
          {"protrusion_strategy", to_string(c.protrusion.strategy)},
          {"threads", c.threads},
          {"packing_bound", c.packing_bound}};
}

namespace {

nlohmann::json edges_json(const std::vector<Edge>& edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const Edge& e : edges) out.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}});
  return out;
}

}  // namespace

nlohmann::json to_json(const ReductionTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const TraceStep& st : trace.steps) {
    nlohmann::json j = {{"rule", to_string(st.rule)},
                        {"deleted_vertices", st.deleted_vertices},
                        {"deleted_edges", edges_json(st.deleted_edges)},
                        {"added_vertices", st.added_vertices},
                        {"added_edges", edges_json(st.added_edges)}};
    if (st.rule == RuleTag::Chandelier)
      j["merge"] = {{"first", st.merge.first}, {"second", st.merge.second}, {"merged", st.merge.merged}, {"u2", st.u2}};
    if (st.rule == RuleTag::TwoBoundary)
      j["two_boundary"] = {{"x0", st.x0}, {"x0_new", st.x0_new}, {"s", st.s}, {"t", st.t}};
    steps.push_back(std::move(j));
  }
  return {{"s", trace.s_set}, {"steps", steps}};
}

std::string mu_csv(const SearchStats& stats) {
  std::ostringstream out;
  out << "node,depth,k,cc,bc,mu,parent,branch_child\n";
  for (const MuRow& r : stats.mu_rows)
    out << r.node << ',' << r.depth << ',' << r.mu.k << ',' << r.mu.cc << ',' << r.mu.bc << ',' << r.mu.value << ','
        << r.parent << ',' << (r.branch_child ? 1 : 0) << '\n';
  return out.str();
}

std::string rule_table(const SearchStats& stats) {
  std::ostringstream out;
  out << "rule,count\n";
  for (int i = 0; i < kNumRuleTags; ++i) out << to_string(static_cast<RuleTag>(i)) << ',' << stats.rule_counts[i] << '\n';
  for (int i = 0; i < 3; ++i) out << to_string(static_cast<BranchKind>(i)) << ',' << stats.branch_counts[i] << '\n';
  out << "pair_branchings," << stats.pair_branchings << '\n';
  return out.str();
}

}  // namespace k4cover::io
