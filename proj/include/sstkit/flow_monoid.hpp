#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sstkit/dfa.hpp"
#include "sstkit/flow.hpp"
#include "sstkit/monoid.hpp"
#include "sstkit/sst.hpp"

namespace sstkit {

inline constexpr std::size_t kDefaultMonoidCap = 100000;

using FlowMonoid = MonoidTable<FlowMatrix, FlowMatrixHash>;

/// Row/column position of (state, variable) in an SST transition matrix.
inline std::size_t pair_index(const Sst& t, std::size_t state, std::size_t var) {
  return state * t.num_vars() + var;
}

/// `(state,var)` labels in matrix order.
std::vector<std::string> matrix_labels(const Sst& t);

/// Matrix of the empty word: for each state, one on the diagonal and zero
/// between distinct variables; bottom between distinct states.
FlowMatrix epsilon_matrix(const Sst& t);
FlowMatrix letter_matrix(const Sst& t, Letter a);

/// Product of letter matrices. Entry [p,X][q,Y] counts X inside the image of Y.
FlowMatrix matrix_of_string(const Sst& t, const Word& s);

/// Reference computation of a single entry by composing substitutions along
/// the run from p and counting occurrences.
Flow flow_count(const Sst& t, const Word& s, std::size_t p, std::size_t x, std::size_t q, std::size_t y);

FlowMonoid enumerate_monoid(const Sst& t, std::size_t cap = kDefaultMonoidCap);

struct OneBoundedVerdict {
  bool one_bounded = true;
  bool exact = true;
  std::size_t monoid_size = 0;
  std::optional<Word> witness;
  /// Matrix row and column holding the saturated entry.
  std::size_t from = 0;
  std::size_t to = 0;
};

/// Witness preference: the shortlex-least word with an omega entry in a row
/// of `preferred_state`, otherwise the shortlex-least word overall.
OneBoundedVerdict one_bounded_of(const FlowMonoid& m, std::size_t vars_per_state,
                                 std::optional<std::size_t> preferred_state);

OneBoundedVerdict check_one_bounded(const Sst& t, std::size_t cap = kDefaultMonoidCap);

/// Exact when the machine is 1-bounded; otherwise flagged as a verdict on the saturated quotient.
AperiodicVerdict check_aperiodic(const Sst& t, std::size_t cap = kDefaultMonoidCap);
AperiodicVerdict check_aperiodic(const FlowMonoid& m);

struct CycleVerdict {
  bool found = false;
  bool exact = true;
  Word word;
  /// Node of the flow automaton with a u^r loop but no u loop.
  std::size_t node = 0;
  std::string node_label;
  std::size_t r = 0;
};

/// Flow automaton of an SST: nodes (state, variable) plus one control node
/// per state; (p,X) -a-> (q,Y) when X occurs in the update of Y on p -a-> q.
struct FlowAutomaton {
  std::size_t nodes = 0;
  std::vector<std::string> labels;
  std::vector<BoolMatrix> letters;
};

FlowAutomaton flow_automaton(const Sst& t);

/// Searches for a word u, node n and r >= 2 with no n -u-> n edge but an
/// n -u^r-> n path. Requires a 1-bounded machine (ValidationError otherwise).
CycleVerdict nontrivial_cycle_check(const Sst& t, std::size_t cap = kDefaultMonoidCap);

/// (q_i, X) flows into some variable of F(q_n) along the accepting run.
/// Positions are 0..|s|; throws DomainError outside the domain.
bool useful(const Sst& t, const Word& s, std::size_t i, std::size_t x);

/// Transition matrix of the underlying automaton: [p][q] iff s leads p to q.
BoolMatrix underlying_monoid_matrix(const Sst& t, const Word& s);

/// Boolean image of a flow matrix: blocks that are not bottom.
BoolMatrix project_states(const FlowMatrix& m, std::size_t states, std::size_t vars);

AperiodicVerdict dfa_aperiodic(const Dfa& a, std::size_t cap = kDefaultMonoidCap);

}  // namespace sstkit
