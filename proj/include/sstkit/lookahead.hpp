#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sstkit/dfa.hpp"
#include "sstkit/flow_monoid.hpp"
#include "sstkit/sst.hpp"

namespace sstkit {

struct LaTransition {
  std::size_t source = 0;
  Letter letter = 0;
  /// Lookahead state whose language must contain the rest of the input.
  std::size_t guard = 0;
  std::size_t target = 0;
  Substitution update;
};

/// SST whose transitions are guarded by states of a lookahead automaton.
/// `base.delta` stays empty; the guarded transitions live in `transitions`.
struct SstLa {
  Sst base;
  Dfa la;
  std::vector<LaTransition> transitions;

  std::vector<const LaTransition*> outgoing(std::size_t q, Letter a) const;
  void validate() const;
};

SstLa parse_sstla(std::string_view text);
std::string write_sstla(const SstLa& t);

/// (state, set of lookahead states); ordered by state index, then by the
/// sorted sequence of lookahead indices.
struct Config {
  std::size_t state = 0;
  std::vector<std::size_t> la;

  auto operator<=>(const Config&) const = default;
};

std::string config_name(const SstLa& t, const Config& c);

struct MutexVerdict {
  bool ok = true;
  std::size_t state = 0;
  Letter letter = 0;
  std::size_t guard1 = 0;
  std::size_t guard2 = 0;
  /// Shortlex-least word accepted from both guards.
  Word witness;
};

MutexVerdict mutual_exclusive_check(const SstLa& t);

struct LaRun {
  std::vector<Config> configs;
  std::vector<const LaTransition*> steps;
  /// suffix_sets[i][p]: s(i:|s|] is in L(A_p).
  std::vector<std::vector<bool>> suffix_sets;
  Substitution total;
};

/// The accepting run, or nullopt on rejection. Throws ValidationError when two
/// guards apply at once.
std::optional<LaRun> la_run(const SstLa& t, const Word& s);
std::optional<Word> la_output(const SstLa& t, const Word& s);

bool accepting(const SstLa& t, const Config& c);
Config config_step(const SstLa& t, const Config& c, const LaTransition& tr);

/// Accessible and co-accessible configurations, sorted.
std::vector<Config> useful_configs(const SstLa& t);

/// Distinct guards out of one (state, letter) lead to distinct targets.
bool satisfies_star(const SstLa& t);

/// Copies states per lookahead state (named `q/p`) when the property above fails.
SstLa normalize_star(const SstLa& t);

/// Subset construction over useful configurations. Requires mutual
/// exclusivity and the distinct-target property (ValidationError otherwise).
Sst eliminate_lookahead(const SstLa& t);

/// Flow matrix indexed by (useful config, variable); rows of a config X
/// block sum over all runs between the two configurations.
FlowMatrix la_matrix(const SstLa& t, const Word& s);
FlowMatrix la_matrix(const SstLa& t, const std::vector<Config>& useful, const Word& s);
FlowMonoid la_monoid(const SstLa& t, std::size_t cap = kDefaultMonoidCap);

}  // namespace sstkit
