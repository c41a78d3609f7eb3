#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sstkit/alphabet.hpp"

namespace sstkit {

/// First-order formula over string models. `lt`, `succ`, `first` and `last`
/// are macros; expand_macros rewrites them into the core connectives.
struct Formula {
  enum class Kind {
    truth, falsity, label, eq, le, lt, succ, first, last,
    negation, conjunction, disjunction, implication, exists, forall
  };

  Kind kind = Kind::truth;
  std::string letter;  // label
  std::string x;       // first variable, or the bound variable of a quantifier
  std::string y;       // second variable of binary predicates
  std::vector<Formula> children;

  static Formula truth() { return {}; }
  static Formula falsity() { return Formula{Kind::falsity, {}, {}, {}, {}}; }
  static Formula label(std::string a, std::string v) { return Formula{Kind::label, std::move(a), std::move(v), {}, {}}; }
  static Formula binary(Kind k, std::string v1, std::string v2) { return Formula{k, {}, std::move(v1), std::move(v2), {}}; }
  static Formula unary(Kind k, std::string v) { return Formula{k, {}, std::move(v), {}, {}}; }
  static Formula negate(Formula f) { return Formula{Kind::negation, {}, {}, {}, {std::move(f)}}; }
  static Formula connect(Kind k, Formula a, Formula b) { return Formula{k, {}, {}, {}, {std::move(a), std::move(b)}}; }
  static Formula quantify(Kind k, std::string v, Formula body) { return Formula{k, {}, std::move(v), {}, {std::move(body)}}; }

  bool operator==(const Formula&) const = default;
};

/// s-expression syntax, e.g. `(forall x (implies (last x) (lab b x)))`.
Formula parse_formula(std::string_view text);
std::string to_string(const Formula& f);

Formula expand_macros(const Formula& f);
bool has_macros(const Formula& f);
std::set<std::string> free_variables(const Formula& f);

/// Quantifier rank of the macro-expanded formula.
std::size_t qrank(const Formula& f);

/// Labels of positions 1..n.
struct StringModel {
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return labels.size(); }
  static StringModel of(const Alphabet& a, const Word& w) { return StringModel{a.names(w)}; }
};

/// Variable -> 1-based position.
using Valuation = std::map<std::string, std::size_t>;

inline constexpr std::size_t kDefaultBudget = 10'000'000;

/// Tarskian evaluation. Throws ValidationError for an unvalued free variable
/// or out-of-range position, ResourceLimit past `budget` node visits.
bool eval(const Formula& f, const StringModel& s, const Valuation& nu = {},
          std::size_t budget = kDefaultBudget);

/// k-round Ehrenfeucht-Fraisse game on the two string models; true iff the
/// duplicator wins, i.e. the words agree on every sentence of rank <= k.
bool equiv_k(const StringModel& s1, const StringModel& s2, std::size_t k,
             std::size_t budget = kDefaultBudget);
bool equiv_k(const Word& s1, const Word& s2, std::size_t k, std::size_t budget = kDefaultBudget);

/// Finite structure with one binary relation and unary labels.
struct RelStructure {
  std::size_t nodes = 0;
  /// order[u][v] means u relates to v.
  std::vector<std::vector<bool>> order;
  std::vector<std::set<std::string>> labels;
};

/// Exactly one label per node and a total order relation.
bool is_string_check(const RelStructure& m);

}  // namespace sstkit
