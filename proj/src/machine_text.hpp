#pragma once

// Line-level reader shared by the .sst and .sstla formats.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sstkit::detail {

struct RawAssign {
  std::string var;
  std::vector<std::string> rhs;
};

struct RawTransition {
  std::size_t line = 0;
  std::string source;
  std::string letter;
  std::optional<std::string> guard;
  std::string target;
  std::vector<RawAssign> assigns;
};

struct RawOut {
  std::size_t line = 0;
  std::string state;
  std::vector<std::string> vars;
};

struct RawLaEdge {
  std::size_t line = 0;
  std::string from;
  std::string letter;
  std::string to;
};

struct RawField {
  std::size_t line = 0;
  std::vector<std::string> values;
};

struct RawMachine {
  std::string header;
  std::map<std::string, RawField> fields;
  std::vector<RawOut> outs;
  std::vector<RawTransition> transitions;
  std::vector<RawLaEdge> la_edges;
};

/// Tokenizes and groups lines. `allow_lookahead` enables `la` lines and
/// `-letter,guard->` arrows.
RawMachine read_machine_text(std::string_view text, std::string_view expected_header,
                             bool allow_lookahead);

/// Whitespace tokenizer with `#` comments stripped.
std::vector<std::string> split_tokens(std::string_view line);

const RawField& require_field(const RawMachine& m, const std::string& key);

}  // namespace sstkit::detail
