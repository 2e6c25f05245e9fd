#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "k4cover/solver.hpp"

namespace k4cover::io {

enum class Format { EdgeList, Dimacs };

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Internal vertex i carries the external id labels[i]. Edge lists keep their
// ids (ascending); DIMACS ids are 1-based outside and 0-based inside.
struct GraphFile {
  Format format = Format::EdgeList;
  MultiGraph graph;
  std::vector<long> labels;

  long label(VertexId v) const { return labels.at(v); }
  // Throws std::out_of_range for an unknown external id.
  VertexId internal(long label) const;
};

// Picks DIMACS when the first non-comment line starts with "p".
GraphFile parse(std::istream& in);
GraphFile parse(std::istream& in, Format format);
GraphFile read_file(const std::string& path);
std::string serialize(const GraphFile& file);
// Edge list of g with its own vertex ids; isolated vertices on lines of their own.
std::string to_edge_list(const MultiGraph& g);

// Cover file: whitespace-separated external ids with '#' comments, or a JSON
// object with a "cover" array (a solve report).
std::vector<long> parse_cover(std::istream& in);
std::vector<long> read_cover(const std::string& path);

nlohmann::json to_json(const SearchStats& stats);
nlohmann::json to_json(const SolverConfig& cfg);
nlohmann::json to_json(const ReductionTrace& trace);
std::string mu_csv(const SearchStats& stats);
std::string rule_table(const SearchStats& stats);

}  // namespace k4cover::io
