#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sstkit/alphabet.hpp"

namespace sstkit {

/// One symbol on the right-hand side of a variable update: either an output
/// letter or a variable, both addressed by index.
struct Token {
  enum class Kind : std::uint8_t { letter, variable };
  Kind kind = Kind::letter;
  std::uint32_t id = 0;

  static Token letter(std::uint32_t id) { return {Kind::letter, id}; }
  static Token variable(std::uint32_t id) { return {Kind::variable, id}; }
  bool is_var() const noexcept { return kind == Kind::variable; }

  auto operator<=>(const Token&) const = default;
};

using Expr = std::vector<Token>;

/// Maps every variable to a word over output letters and variables.
struct Substitution {
  std::vector<Expr> image;

  static Substitution identity(std::size_t vars);

  std::size_t size() const noexcept { return image.size(); }
  const Expr& operator[](std::size_t x) const { return image.at(x); }

  /// Homomorphic extension: letters are kept, each variable is replaced by its image.
  Expr apply(const Expr& e) const;

  /// Number of occurrences of variable `y` in the image of `x`.
  std::size_t occurrences(std::size_t x, std::uint32_t y) const;

  bool operator==(const Substitution&) const = default;
};

/// (first ; second)(X) = first^(second(X)): apply `second`, then rewrite its
/// variables with `first`. This is the order in which run prefixes compose.
Substitution compose_subst(const Substitution& first, const Substitution& second);

/// Erases all variables (they start out empty) and returns the remaining letters.
Word flatten(const Expr& e);

struct Transition {
  std::size_t target = 0;
  Substitution update;
};

/// Deterministic streaming string transducer with a partial transition function.
struct Sst {
  Alphabet input;
  Alphabet output;
  std::vector<std::string> states;
  std::size_t initial = 0;
  std::vector<bool> final;
  std::vector<std::string> vars;
  /// Indexed by state * |input| + letter.
  std::vector<std::optional<Transition>> delta;
  /// Output variable sequence per state; only read for final states.
  std::vector<std::vector<std::uint32_t>> out;

  std::size_t num_states() const noexcept { return states.size(); }
  std::size_t num_vars() const noexcept { return vars.size(); }

  const Transition* step(std::size_t q, Letter a) const;
  void set_transition(std::size_t q, Letter a, Transition t);

  std::optional<std::size_t> state_index(std::string_view name) const;
  std::optional<std::uint32_t> var_index(std::string_view name) const;

  /// Throws ValidationError when an invariant does not hold.
  void validate() const;

  /// Non-fatal findings, e.g. a variable repeated in an output expression.
  std::vector<std::string> lint() const;

  std::string render_expr(const Expr& e) const;
};

/// Accepting or not, a complete run on a word.
struct Run {
  std::vector<std::size_t> states;
  std::vector<Substitution> per_step;
  /// composed[i] is the substitution of the first i+1 steps.
  std::vector<Substitution> composed;

  /// Cumulative substitution after the whole word (identity for the empty word).
  Substitution total(std::size_t vars) const;
};

Sst parse_sst(std::string_view text);
std::string write_sst(const Sst& t);

/// Follows delta from `from`. Returns nullopt when a transition is missing.
/// Throws ValidationError if a letter is outside the input alphabet.
std::optional<Run> run_from(const Sst& t, std::size_t from, const Word& input);
std::optional<Run> run(const Sst& t, const Word& input);

/// The transformation; nullopt outside the domain.
std::optional<Word> output(const Sst& t, const Word& input);

/// Variable valuation after each prefix: values[i][X] is X after i letters.
std::vector<std::vector<Word>> variable_values(const Sst& t, const Run& r);

}  // namespace sstkit
