#include "sstkit/flow_monoid.hpp"

#include <numeric>

#include "sstkit/error.hpp"

namespace sstkit {

std::vector<std::string> matrix_labels(const Sst& t) {
  std::vector<std::string> labels;
  for (const auto& q : t.states) {
    for (const auto& x : t.vars) labels.push_back("(" + q + "," + x + ")");
  }
  return labels;
}

FlowMatrix epsilon_matrix(const Sst& t) {
  const std::size_t v = t.num_vars();
  FlowMatrix m(t.num_states() * v);
  for (std::size_t p = 0; p < t.num_states(); ++p) {
    for (std::size_t x = 0; x < v; ++x) {
      for (std::size_t y = 0; y < v; ++y) {
        m.at(pair_index(t, p, x), pair_index(t, p, y)) = x == y ? Flow::one : Flow::zero;
      }
    }
  }
  return m;
}

FlowMatrix letter_matrix(const Sst& t, Letter a) {
  const std::size_t v = t.num_vars();
  FlowMatrix m(t.num_states() * v);
  for (std::size_t p = 0; p < t.num_states(); ++p) {
    const Transition* tr = t.step(p, a);
    if (!tr) continue;
    for (std::size_t y = 0; y < v; ++y) {
      for (std::size_t x = 0; x < v; ++x) {
        m.at(pair_index(t, p, x), pair_index(t, tr->target, y)) =
            flow_from_count(tr->update.occurrences(y, static_cast<std::uint32_t>(x)));
      }
    }
  }
  return m;
}

FlowMatrix matrix_of_string(const Sst& t, const Word& s) {
  FlowMatrix m = epsilon_matrix(t);
  for (Letter a : s) {
    if (a >= t.input.size()) throw ValidationError("letter outside the input alphabet");
    m = mat_mul(m, letter_matrix(t, a));
  }
  return m;
}

Flow flow_count(const Sst& t, const Word& s, std::size_t p, std::size_t x, std::size_t q, std::size_t y) {
  auto r = run_from(t, p, s);
  if (!r || r->states.back() != q) return Flow::bottom;
  Substitution sigma = r->total(t.num_vars());
  return flow_from_count(sigma.occurrences(y, static_cast<std::uint32_t>(x)));
}

FlowMonoid enumerate_monoid(const Sst& t, std::size_t cap) {
  std::vector<FlowMatrix> gens;
  for (Letter a = 0; a < t.input.size(); ++a) gens.push_back(letter_matrix(t, a));
  return close_monoid<FlowMatrix, FlowMatrixHash>(epsilon_matrix(t), gens, mat_mul, cap);
}

OneBoundedVerdict one_bounded_of(const FlowMonoid& m, std::size_t vars_per_state,
                                 std::optional<std::size_t> preferred_state) {
  OneBoundedVerdict v;
  v.monoid_size = m.size();
  std::optional<std::size_t> any_elem, pref_elem;
  std::size_t any_from = 0, any_to = 0, pref_from = 0, pref_to = 0;
  for (std::size_t i = 0; i < m.size() && !pref_elem; ++i) {
    const FlowMatrix& e = m.elements[i];
    for (std::size_t r = 0; r < e.dim && !pref_elem; ++r) {
      for (std::size_t c = 0; c < e.dim; ++c) {
        if (e.at(r, c) != Flow::omega) continue;
        if (!any_elem) {
          any_elem = i;
          any_from = r;
          any_to = c;
        }
        if (preferred_state && vars_per_state > 0 && r / vars_per_state == *preferred_state) {
          pref_elem = i;
          pref_from = r;
          pref_to = c;
          break;
        }
      }
    }
  }
  if (pref_elem) {
    v.one_bounded = false;
    v.witness = m.representative[*pref_elem];
    v.from = pref_from;
    v.to = pref_to;
  } else if (any_elem) {
    v.one_bounded = false;
    v.witness = m.representative[*any_elem];
    v.from = any_from;
    v.to = any_to;
  } else {
    v.exact = !m.truncated;
  }
  return v;
}

OneBoundedVerdict check_one_bounded(const Sst& t, std::size_t cap) {
  return one_bounded_of(enumerate_monoid(t, cap), t.num_vars(), t.initial);
}

AperiodicVerdict check_aperiodic(const FlowMonoid& m) {
  AperiodicVerdict v = check_table_aperiodic(m, mat_mul);
  for (const auto& e : m.elements) {
    if (e.contains(Flow::omega)) {
      v.saturated_abstraction = true;
      break;
    }
  }
  return v;
}

AperiodicVerdict check_aperiodic(const Sst& t, std::size_t cap) {
  return check_aperiodic(enumerate_monoid(t, cap));
}

FlowAutomaton flow_automaton(const Sst& t) {
  const std::size_t v = t.num_vars();
  const std::size_t width = v + 1;
  FlowAutomaton a;
  a.nodes = t.num_states() * width;
  for (const auto& q : t.states) {
    for (const auto& x : t.vars) a.labels.push_back("(" + q + "," + x + ")");
    a.labels.push_back("(" + q + ",*)");
  }
  for (Letter l = 0; l < t.input.size(); ++l) {
    BoolMatrix m(a.nodes);
    for (std::size_t p = 0; p < t.num_states(); ++p) {
      const Transition* tr = t.step(p, l);
      if (!tr) continue;
      m.set(p * width + v, tr->target * width + v);
      for (std::size_t y = 0; y < v; ++y) {
        for (std::size_t x = 0; x < v; ++x) {
          if (tr->update.occurrences(y, static_cast<std::uint32_t>(x)) > 0) {
            m.set(p * width + x, tr->target * width + y);
          }
        }
      }
    }
    a.letters.push_back(std::move(m));
  }
  return a;
}

CycleVerdict nontrivial_cycle_check(const Sst& t, std::size_t cap) {
  auto bounded = check_one_bounded(t, cap);
  if (!bounded.one_bounded) throw ValidationError("non-trivial cycle check requires a 1-bounded machine");
  FlowAutomaton a = flow_automaton(t);
  auto table = close_monoid<BoolMatrix, BoolMatrixHash>(BoolMatrix::identity(a.nodes), a.letters, bool_mul, cap);
  CycleVerdict v;
  v.exact = !table.truncated && bounded.exact;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const BoolMatrix& u = table.elements[i];
    std::vector<BoolMatrix> powers{u};
    for (std::size_t r = 2; r <= a.nodes; ++r) powers.push_back(bool_mul(powers.back(), u));
    for (std::size_t n = 0; n < a.nodes; ++n) {
      if (u.at(n, n)) continue;
      for (std::size_t r = 2; r <= a.nodes; ++r) {
        if (powers[r - 1].at(n, n)) {
          v.found = true;
          v.word = table.representative[i];
          v.node = n;
          v.node_label = a.labels[n];
          v.r = r;
          return v;
        }
      }
    }
  }
  return v;
}

bool useful(const Sst& t, const Word& s, std::size_t i, std::size_t x) {
  auto r = run(t, s);
  if (!r || !t.final[r->states.back()]) throw DomainError("word outside the domain");
  if (i > s.size()) throw ValidationError("position out of range");
  if (x >= t.num_vars()) throw ValidationError("variable out of range");
  auto suffix = run_from(t, r->states[i], slice(s, i, s.size()));
  Substitution sigma = suffix->total(t.num_vars());
  for (auto y : t.out[r->states.back()]) {
    if (sigma.occurrences(y, static_cast<std::uint32_t>(x)) > 0) return true;
  }
  return false;
}

BoolMatrix underlying_monoid_matrix(const Sst& t, const Word& s) {
  BoolMatrix m(t.num_states());
  for (std::size_t p = 0; p < t.num_states(); ++p) {
    if (auto r = run_from(t, p, s)) m.set(p, r->states.back());
  }
  return m;
}

BoolMatrix project_states(const FlowMatrix& m, std::size_t states, std::size_t vars) {
  BoolMatrix b(states);
  for (std::size_t p = 0; p < states; ++p) {
    for (std::size_t q = 0; q < states; ++q) {
      for (std::size_t x = 0; x < vars && !b.at(p, q); ++x) {
        for (std::size_t y = 0; y < vars; ++y) {
          if (m.at(p * vars + x, q * vars + y) != Flow::bottom) {
            b.set(p, q);
            break;
          }
        }
      }
    }
  }
  return b;
}

namespace {

struct MapHash {
  std::size_t operator()(const std::vector<std::size_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

AperiodicVerdict dfa_aperiodic(const Dfa& a, std::size_t cap) {
  a.validate();
  using Map = std::vector<std::size_t>;
  Map id(a.num_states());
  std::iota(id.begin(), id.end(), 0);
  std::vector<Map> gens;
  for (Letter l = 0; l < a.alphabet.size(); ++l) {
    Map g(a.num_states());
    for (std::size_t p = 0; p < a.num_states(); ++p) g[p] = a.step(p, l);
    gens.push_back(std::move(g));
  }
  auto then = [](const Map& f, const Map& g) {
    Map h(f.size());
    for (std::size_t p = 0; p < f.size(); ++p) h[p] = g[f[p]];
    return h;
  };
  auto table = close_monoid<Map, MapHash>(id, gens, then, cap);
  return check_table_aperiodic(table, then);
}

}  // namespace sstkit
