#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sstkit/sst.hpp"

namespace sstkit {

enum class Side : std::uint8_t { in, out };

struct GraphNode {
  std::uint32_t var = 0;
  Side side = Side::in;
  std::size_t column = 0;
  bool useful = true;
};

enum class EdgeKind : std::uint8_t {
  update,
  /// Joins consecutive variables of the final output expression in the last column.
  final_glue,
};

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Word label;
  EdgeKind kind = EdgeKind::update;
};

/// Edge-labeled graph whose in/out nodes per variable and column spell the
/// output along a single path. Only nodes marked useful take part in the
/// path operations.
struct SstOutputGraph {
  std::size_t columns = 0;
  std::size_t vars = 0;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  std::optional<std::size_t> find(std::uint32_t var, Side side, std::size_t column) const;
  std::size_t useful_nodes() const;
};

struct GraphOptions {
  /// Also emit nodes and edges for useless (variable, column) pairs.
  bool include_useless = false;
};

/// Throws DomainError outside the domain and ValidationError when the machine
/// is not 1-bounded.
SstOutputGraph build_graph(const Sst& t, const Word& s, GraphOptions opts = {});

/// Usefulness table by backward propagation from the final output: useful[i][X].
std::vector<std::vector<bool>> usefulness_table(const Sst& t, const Word& s);

struct PathVerdict {
  bool ok = false;
  std::vector<std::size_t> path;
  std::string violation;
};

PathVerdict unique_path_check(const SstOutputGraph& g);

/// Labels along the unique path. Throws ValidationError if there is none.
Word readout(const SstOutputGraph& g);

/// Labels along the walk from `from` to `to` following the unique out-edges;
/// nullopt when the walk does not reach `to`.
std::optional<Word> path_word(const SstOutputGraph& g, std::size_t from, std::size_t to);

/// reach[u][v] over useful nodes, reflexive.
std::vector<std::vector<bool>> reachability(const SstOutputGraph& g);

/// Which of the three path conditions hold for (X^d, i) -> (Y^d', j); bit k-1 for condition k.
unsigned path_conditions(const Sst& t, const Word& s, std::uint32_t x, Side d, std::size_t i, std::uint32_t y,
                         Side d2, std::size_t j);

struct PathCheckVerdict {
  bool ok = true;
  std::string from;
  std::string to;
  bool expected = false;
  bool reachable = false;
  std::size_t pairs_checked = 0;
};

/// Compares graph reachability with the flow conditions for every ordered pair
/// of (variable, side, column) triples.
PathCheckVerdict path_characterization_check(const Sst& t, const Word& s);

std::string node_name(const Sst& t, const GraphNode& n);
std::string to_dot(const Sst& t, const SstOutputGraph& g);

}  // namespace sstkit
