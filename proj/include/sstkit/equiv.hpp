#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sstkit/fo_transducer.hpp"
#include "sstkit/lookahead.hpp"
#include "sstkit/sst.hpp"

namespace sstkit {

using Machine = std::variant<Sst, SstLa, FoTransducer>;

/// Dispatches on the header line (`sst`, `sstla` or `fot`).
Machine parse_machine(std::string_view text);

const Alphabet& input_alphabet(const Machine& m);
const Alphabet& output_alphabet(const Machine& m);

/// Output letter names, or nullopt outside the domain (including inputs with
/// letters the machine does not know).
std::optional<std::vector<std::string>> transform(const Machine& m, const std::vector<std::string>& input);

struct EquivVerdict {
  bool equal = true;
  /// Union of both input alphabets, first machine's letters first.
  Alphabet alphabet;
  std::optional<Word> counterexample;
  std::optional<std::vector<std::string>> left;
  std::optional<std::vector<std::string>> right;
  std::size_t words_checked = 0;
};

/// Compares the two transformations on every input of length <= max_len;
/// the counterexample is shortlex-least.
EquivVerdict equiv_bounded(const Machine& a, const Machine& b, std::size_t max_len);

}  // namespace sstkit
