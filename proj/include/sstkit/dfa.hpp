#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sstkit/alphabet.hpp"

namespace sstkit {

/// Complete deterministic automaton. Each state p also names the language
/// L(p) of words leading from p into a final state.
struct Dfa {
  Alphabet alphabet;
  std::vector<std::string> states;
  std::size_t initial = 0;
  /// Indexed by state * |alphabet| + letter.
  std::vector<std::size_t> transition;
  std::vector<bool> finals;

  std::size_t num_states() const noexcept { return states.size(); }
  std::size_t step(std::size_t p, Letter a) const { return transition.at(p * alphabet.size() + a); }
  std::size_t run(std::size_t p, const Word& w) const;
  bool accepts_from(std::size_t p, const Word& w) const { return finals.at(run(p, w)); }
  bool accepts(const Word& w) const { return accepts_from(initial, w); }

  /// Throws ValidationError unless the table is total and in range.
  void validate() const;
};

}  // namespace sstkit
