#include "sstkit/dfa.hpp"

#include "sstkit/error.hpp"

namespace sstkit {

std::size_t Dfa::run(std::size_t p, const Word& w) const {
  for (Letter a : w) p = step(p, a);
  return p;
}

void Dfa::validate() const {
  if (states.empty()) throw ValidationError("automaton has no states");
  if (initial >= states.size()) throw ValidationError("initial state out of range");
  if (transition.size() != states.size() * alphabet.size()) {
    throw ValidationError("automaton transition table is not total");
  }
  for (auto q : transition) {
    if (q >= states.size()) throw ValidationError("automaton transition target out of range");
  }
  if (finals.size() != states.size()) throw ValidationError("final-state table has the wrong size");
}

}  // namespace sstkit
