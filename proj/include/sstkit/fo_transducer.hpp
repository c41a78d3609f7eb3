#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sstkit/alphabet.hpp"
#include "sstkit/fo_logic.hpp"

namespace sstkit {

/// FO string transducer over copies 1..n of the input positions.
struct FoTransducer {
  Alphabet input;
  Alphabet output;
  std::size_t copies = 0;
  Formula dom;
  /// pos[c-1][gamma]; absent entries are false.
  std::vector<std::vector<std::optional<Formula>>> pos;
  /// ord[c-1][d-1], free variables x and y.
  std::vector<std::vector<Formula>> ord;
};

FoTransducer parse_fot(std::string_view text);

/// Copy `copy` of input position `position`, both 1-based.
struct CopyNode {
  std::size_t position = 0;
  std::size_t copy = 0;

  auto operator<=>(const CopyNode&) const = default;
};

std::string to_string(const CopyNode& n);

/// The output letter carried by node (j, c), if any. Throws ValidationError
/// when two letters hold at the same node.
std::optional<Letter> alive(const FoTransducer& t, const Word& s, std::size_t c, std::size_t j);

struct OutputStructure {
  std::vector<CopyNode> nodes;
  std::vector<Letter> labels;
  /// order[u][v]: node u precedes-or-equals node v.
  std::vector<std::vector<bool>> order;
  /// Covering relation of the strict order.
  std::vector<std::optional<std::size_t>> next;
  std::vector<std::optional<std::size_t>> prev;

  std::size_t size() const noexcept { return nodes.size(); }
  std::optional<std::size_t> find(CopyNode n) const;
  RelStructure relational(const Alphabet& output) const;
};

/// Nullopt when s falls outside the domain formula.
std::optional<OutputStructure> output_structure(const FoTransducer& t, const Word& s);

/// Nullopt outside the domain; ValidationError when the structure is not a string.
std::optional<Word> output_string(const FoTransducer& t, const Word& s);

struct Segment {
  std::vector<CopyNode> nodes;
  Word word;
};

/// Witness substrings for the address of a head or tail at j:
/// s[1:j), s(j:i], s[j] and the copy.
struct Address {
  Word prefix;
  Word infix;
  Letter letter = 0;
  std::size_t copy = 0;
};

struct HeadTailReport {
  std::size_t position = 0;
  std::vector<CopyNode> heads;
  std::vector<CopyNode> tails;
  /// segments[h] runs from heads[h] to its tail.
  std::vector<Segment> segments;
  std::vector<Address> head_addresses;
  std::vector<Address> tail_addresses;
};

/// i-heads and i-tails of the output graph restricted to positions <= i.
/// Throws DomainError outside the domain, ValidationError for i out of 1..|s|.
HeadTailReport heads_tails(const FoTransducer& t, const Word& s, std::size_t i);

/// No two distinct heads (or tails) of one copy agree on the letter and on
/// the (k+2)-types of their prefix and infix witnesses, for positions < i.
bool verify_head_uniqueness(const FoTransducer& t, const Word& s, std::size_t i, std::size_t k,
                            std::size_t budget = kDefaultBudget);

/// Largest quantifier rank among the transducer's formulas, plus one.
std::size_t qrank_fot(const FoTransducer& t);

std::string to_dot(const FoTransducer& t, const OutputStructure& m);
std::string format_report(const FoTransducer& t, const HeadTailReport& r);

}  // namespace sstkit
