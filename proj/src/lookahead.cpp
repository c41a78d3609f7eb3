#include "sstkit/lookahead.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "machine_text.hpp"
#include "sst_build.hpp"
#include "sstkit/error.hpp"

namespace sstkit {
namespace {

std::vector<std::size_t> insert_sorted(std::vector<std::size_t> v, std::size_t p) {
  auto it = std::lower_bound(v.begin(), v.end(), p);
  if (it == v.end() || *it != p) v.insert(it, p);
  return v;
}

std::size_t la_state(const Dfa& a, const std::string& name, std::size_t line) {
  auto it = std::find(a.states.begin(), a.states.end(), name);
  if (it == a.states.end()) throw ParseError(line, "unknown lookahead state `" + name + "`");
  return static_cast<std::size_t>(it - a.states.begin());
}

// Successor configurations of every reachable configuration, in config order.
struct ConfigGraph {
  std::vector<Config> configs;
  std::map<Config, std::size_t> index;
  /// edges[c] = (letter, transition, successor)
  std::vector<std::vector<std::tuple<Letter, const LaTransition*, std::size_t>>> edges;

  std::size_t add(const Config& c) {
    auto [it, inserted] = index.emplace(c, configs.size());
    if (inserted) {
      configs.push_back(c);
      edges.emplace_back();
    }
    return it->second;
  }
};

ConfigGraph explore(const SstLa& t) {
  ConfigGraph g;
  g.add(Config{t.base.initial, {}});
  for (std::size_t c = 0; c < g.configs.size(); ++c) {
    for (Letter a = 0; a < t.base.input.size(); ++a) {
      for (const LaTransition* tr : t.outgoing(g.configs[c].state, a)) {
        std::size_t d = g.add(config_step(t, g.configs[c], *tr));
        g.edges[c].emplace_back(a, tr, d);
      }
    }
  }
  return g;
}

std::string la_set_name(const SstLa& t, const std::vector<std::size_t>& la) {
  if (la.empty()) return "0";
  std::string s;
  for (auto p : la) s += (s.empty() ? "" : "+") + t.la.states[p];
  return s;
}

}  // namespace

std::vector<const LaTransition*> SstLa::outgoing(std::size_t q, Letter a) const {
  std::vector<const LaTransition*> out;
  for (const auto& tr : transitions) {
    if (tr.source == q && tr.letter == a) out.push_back(&tr);
  }
  return out;
}

void SstLa::validate() const {
  base.validate();
  la.validate();
  if (!(la.alphabet == base.input)) throw ValidationError("lookahead alphabet differs from the input alphabet");
  std::set<std::tuple<std::size_t, Letter, std::size_t>> seen;
  for (const auto& tr : transitions) {
    if (tr.source >= base.num_states() || tr.target >= base.num_states()) {
      throw ValidationError("transition state out of range");
    }
    if (tr.letter >= base.input.size() || tr.guard >= la.num_states()) {
      throw ValidationError("transition letter or guard out of range");
    }
    if (tr.update.size() != base.num_vars()) throw ValidationError("update does not cover every variable");
    if (!seen.emplace(tr.source, tr.letter, tr.guard).second) throw ValidationError("duplicate guarded transition");
  }
}

SstLa parse_sstla(std::string_view text) {
  auto raw = detail::read_machine_text(text, "sstla", true);
  SstLa t;
  detail::build_core(raw, t.base);

  const auto& las = detail::require_field(raw, "la-states");
  if (las.values.empty()) throw ParseError(las.line, "at least one lookahead state required");
  t.la.alphabet = t.base.input;
  t.la.states = las.values;
  if (std::set<std::string>(las.values.begin(), las.values.end()).size() != las.values.size()) {
    throw ParseError(las.line, "duplicate lookahead state");
  }
  t.la.finals.assign(t.la.num_states(), false);
  if (auto it = raw.fields.find("la-final"); it != raw.fields.end()) {
    for (const auto& p : it->second.values) t.la.finals[la_state(t.la, p, it->second.line)] = true;
  }
  const std::size_t k = t.base.input.size();
  std::vector<std::optional<std::size_t>> table(t.la.num_states() * k);
  for (const auto& e : raw.la_edges) {
    auto p = la_state(t.la, e.from, e.line);
    auto a = detail::resolve_letter(t.base.input, e.letter, e.line);
    auto& slot = table[p * k + a];
    if (slot) throw ParseError(e.line, "duplicate lookahead transition");
    slot = la_state(t.la, e.to, e.line);
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!table[i]) {
      throw ValidationError("lookahead transition not total: missing (" + t.la.states[i / k] + ", " +
                            t.base.input.name(static_cast<Letter>(i % k)) + ")");
    }
    t.la.transition.push_back(*table[i]);
  }

  std::set<std::tuple<std::size_t, Letter, std::size_t>> seen;
  for (const auto& tr : raw.transitions) {
    LaTransition lt;
    lt.source = detail::resolve_state(t.base, tr.source, tr.line);
    lt.letter = detail::resolve_letter(t.base.input, tr.letter, tr.line);
    lt.guard = la_state(t.la, *tr.guard, tr.line);
    lt.target = detail::resolve_state(t.base, tr.target, tr.line);
    if (!seen.emplace(lt.source, lt.letter, lt.guard).second) {
      throw ParseError(tr.line, "duplicate transition for (" + tr.source + ", " + tr.letter + ", " + *tr.guard + ")");
    }
    lt.update = detail::resolve_update(t.base, tr);
    t.transitions.push_back(std::move(lt));
  }
  t.validate();
  return t;
}

std::string write_sstla(const SstLa& t) {
  std::ostringstream os;
  os << detail::write_core(t.base, "sstla");
  os << "la-states:";
  for (const auto& p : t.la.states) os << " " << p;
  os << "\nla-final:";
  for (std::size_t p = 0; p < t.la.num_states(); ++p) {
    if (t.la.finals[p]) os << " " << t.la.states[p];
  }
  os << "\n";
  for (std::size_t p = 0; p < t.la.num_states(); ++p) {
    for (Letter a = 0; a < t.base.input.size(); ++a) {
      os << "la " << t.la.states[p] << " -" << t.base.input.name(a) << "-> " << t.la.states[t.la.step(p, a)] << "\n";
    }
  }
  for (const auto& tr : t.transitions) {
    os << t.base.states[tr.source] << " -" << t.base.input.name(tr.letter) << "," << t.la.states[tr.guard] << "-> "
       << t.base.states[tr.target] << " " << detail::write_update(t.base, tr.update) << "\n";
  }
  return os.str();
}

std::string config_name(const SstLa& t, const Config& c) {
  return "(" + t.base.states[c.state] + ",{" + (c.la.empty() ? "" : la_set_name(t, c.la)) + "})";
}

MutexVerdict mutual_exclusive_check(const SstLa& t) {
  MutexVerdict v;
  const std::size_t k = t.base.input.size();
  const std::size_t n = t.la.num_states();
  for (std::size_t q = 0; q < t.base.num_states(); ++q) {
    for (Letter a = 0; a < k; ++a) {
      auto trs = t.outgoing(q, a);
      for (std::size_t x = 0; x < trs.size(); ++x) {
        for (std::size_t y = x + 1; y < trs.size(); ++y) {
          std::size_t p1 = trs[x]->guard, p2 = trs[y]->guard;
          if (p1 == p2) continue;
          // Breadth-first search of the product, letters in order: the first
          // jointly accepting pair is reached by the shortlex-least word.
          std::vector<std::optional<std::pair<std::size_t, Letter>>> parent(n * n);
          std::vector<bool> seen(n * n, false);
          std::deque<std::size_t> queue{p1 * n + p2};
          seen[p1 * n + p2] = true;
          while (!queue.empty()) {
            std::size_t cur = queue.front();
            queue.pop_front();
            if (t.la.finals[cur / n] && t.la.finals[cur % n]) {
              v.ok = false;
              v.state = q;
              v.letter = a;
              v.guard1 = p1;
              v.guard2 = p2;
              for (std::size_t c = cur; parent[c]; c = parent[c]->first) v.witness.push_back(parent[c]->second);
              std::reverse(v.witness.begin(), v.witness.end());
              return v;
            }
            for (Letter b = 0; b < k; ++b) {
              std::size_t next = t.la.step(cur / n, b) * n + t.la.step(cur % n, b);
              if (seen[next]) continue;
              seen[next] = true;
              parent[next] = std::pair(cur, b);
              queue.push_back(next);
            }
          }
        }
      }
    }
  }
  return v;
}

bool accepting(const SstLa& t, const Config& c) {
  if (!t.base.final[c.state]) return false;
  return std::all_of(c.la.begin(), c.la.end(), [&](std::size_t p) { return t.la.finals[p]; });
}

Config config_step(const SstLa& t, const Config& c, const LaTransition& tr) {
  Config d{tr.target, {}};
  for (auto p : c.la) d.la = insert_sorted(std::move(d.la), t.la.step(p, tr.letter));
  d.la = insert_sorted(std::move(d.la), tr.guard);
  return d;
}

std::optional<LaRun> la_run(const SstLa& t, const Word& s) {
  const std::size_t n = s.size();
  LaRun r;
  r.suffix_sets.assign(n + 1, std::vector<bool>(t.la.num_states(), false));
  for (std::size_t i = 0; i <= n; ++i) {
    Word suffix = slice(s, i, n);
    for (std::size_t p = 0; p < t.la.num_states(); ++p) r.suffix_sets[i][p] = t.la.accepts_from(p, suffix);
  }
  r.configs.push_back(Config{t.base.initial, {}});
  r.total = Substitution::identity(t.base.num_vars());
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] >= t.base.input.size()) throw ValidationError("letter outside the input alphabet");
    const LaTransition* chosen = nullptr;
    for (const LaTransition* tr : t.outgoing(r.configs.back().state, s[i])) {
      if (!r.suffix_sets[i + 1][tr->guard]) continue;
      if (chosen) throw ValidationError("lookahead guards are not mutually exclusive");
      chosen = tr;
    }
    if (!chosen) return std::nullopt;
    r.steps.push_back(chosen);
    r.total = compose_subst(r.total, chosen->update);
    r.configs.push_back(config_step(t, r.configs.back(), *chosen));
  }
  if (!accepting(t, r.configs.back())) return std::nullopt;
  return r;
}

std::optional<Word> la_output(const SstLa& t, const Word& s) {
  auto r = la_run(t, s);
  if (!r) return std::nullopt;
  Expr f;
  for (auto x : t.base.out[r->configs.back().state]) f.push_back(Token::variable(x));
  return flatten(r->total.apply(f));
}

std::vector<Config> useful_configs(const SstLa& t) {
  ConfigGraph g = explore(t);
  const std::size_t n = g.configs.size();
  std::vector<std::vector<std::size_t>> back(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& e : g.edges[c]) back[std::get<2>(e)].push_back(c);
  }
  std::vector<bool> co(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t c = 0; c < n; ++c) {
    if (accepting(t, g.configs[c])) {
      co[c] = true;
      queue.push_back(c);
    }
  }
  while (!queue.empty()) {
    auto c = queue.front();
    queue.pop_front();
    for (auto b : back[c]) {
      if (!co[b]) {
        co[b] = true;
        queue.push_back(b);
      }
    }
  }
  std::vector<Config> out;
  for (std::size_t c = 0; c < n; ++c) {
    if (co[c]) out.push_back(g.configs[c]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool satisfies_star(const SstLa& t) {
  for (std::size_t q = 0; q < t.base.num_states(); ++q) {
    for (Letter a = 0; a < t.base.input.size(); ++a) {
      std::set<std::size_t> targets;
      auto trs = t.outgoing(q, a);
      for (const auto* tr : trs) targets.insert(tr->target);
      if (targets.size() != trs.size()) return false;
    }
  }
  return true;
}

SstLa normalize_star(const SstLa& t) {
  if (satisfies_star(t)) return t;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  auto add = [&](std::size_t q, std::size_t p) {
    auto [it, inserted] = id.emplace(std::pair(q, p), order.size());
    if (inserted) order.emplace_back(q, p);
    return it->second;
  };
  add(t.base.initial, 0);
  std::vector<LaTransition> trs;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [q, p] = order[i];
    for (const auto& tr : t.transitions) {
      if (tr.source != q) continue;
      LaTransition c = tr;
      c.source = i;
      c.target = add(tr.target, tr.guard);
      trs.push_back(std::move(c));
    }
  }
  SstLa n;
  n.la = t.la;
  n.base.input = t.base.input;
  n.base.output = t.base.output;
  n.base.vars = t.base.vars;
  n.base.initial = 0;
  for (auto [q, p] : order) {
    n.base.states.push_back(t.base.states[q] + "/" + t.la.states[p]);
    n.base.final.push_back(t.base.final[q]);
    n.base.out.push_back(t.base.out[q]);
  }
  std::sort(trs.begin(), trs.end(), [](const LaTransition& a, const LaTransition& b) {
    return std::tuple(a.source, a.letter, a.guard) < std::tuple(b.source, b.letter, b.guard);
  });
  n.transitions = std::move(trs);
  n.validate();
  return n;
}

Sst eliminate_lookahead(const SstLa& t) {
  if (!mutual_exclusive_check(t).ok) throw ValidationError("lookahead guards are not mutually exclusive");
  if (!satisfies_star(t)) throw ValidationError("distinct guards share a target; normalize the machine first");
  const auto useful = useful_configs(t);
  const std::size_t nu = useful.size();
  const std::size_t nv = t.base.num_vars();
  std::map<Config, std::size_t> uidx;
  for (std::size_t c = 0; c < nu; ++c) uidx.emplace(useful[c], c);

  Sst out;
  out.input = t.base.input;
  out.output = t.base.output;
  for (const auto& c : useful) {
    for (std::size_t x = 0; x < nv; ++x) {
      out.vars.push_back(t.base.vars[x] + "@" + t.base.states[c.state] + "." + la_set_name(t, c.la));
    }
  }
  auto var_of = [&](std::size_t c, std::size_t x) { return static_cast<std::uint32_t>(c * nv + x); };

  using Subset = std::vector<std::size_t>;  // sorted useful-config indices
  std::map<Subset, std::size_t> sid;
  std::vector<Subset> subsets;
  auto add = [&](const Subset& s) {
    auto [it, inserted] = sid.emplace(s, subsets.size());
    if (inserted) subsets.push_back(s);
    return it->second;
  };
  auto init = uidx.find(Config{t.base.initial, {}});
  add(init == uidx.end() ? Subset{} : Subset{init->second});

  struct Pending {
    std::size_t from;
    Letter a;
    std::size_t to;
    Substitution update;
  };
  std::vector<Pending> pending;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const Subset cur = subsets[i];
    for (Letter a = 0; a < t.base.input.size(); ++a) {
      // Minimal predecessor for every reachable useful successor.
      std::map<std::size_t, std::pair<std::size_t, const LaTransition*>> pred;
      for (std::size_t c : cur) {
        for (const LaTransition* tr : t.outgoing(useful[c].state, a)) {
          auto it = uidx.find(config_step(t, useful[c], *tr));
          if (it == uidx.end()) continue;
          pred.emplace(it->second, std::pair(c, tr));
        }
      }
      if (pred.empty()) continue;
      Subset next;
      Substitution upd;
      upd.image.assign(nu * nv, Expr{});
      for (const auto& [d, ct] : pred) {
        next.push_back(d);
        auto [c, tr] = ct;
        for (std::size_t x = 0; x < nv; ++x) {
          Expr e;
          for (Token tok : tr->update[x]) {
            e.push_back(tok.is_var() ? Token::variable(var_of(c, tok.id)) : tok);
          }
          upd.image[var_of(d, x)] = std::move(e);
        }
      }
      std::size_t to = add(next);
      pending.push_back({i, a, to, std::move(upd)});
    }
  }

  for (std::size_t i = 0; i < subsets.size(); ++i) {
    out.states.push_back("S" + std::to_string(i));
    std::optional<std::size_t> acc;
    for (std::size_t c : subsets[i]) {
      if (accepting(t, useful[c])) {
        acc = c;
        break;
      }
    }
    out.final.push_back(acc.has_value());
    std::vector<std::uint32_t> f;
    if (acc) {
      for (auto x : t.base.out[useful[*acc].state]) f.push_back(var_of(*acc, x));
    }
    out.out.push_back(std::move(f));
  }
  out.initial = 0;
  out.delta.assign(out.states.size() * out.input.size(), std::nullopt);
  for (auto& p : pending) out.set_transition(p.from, p.a, Transition{p.to, std::move(p.update)});
  out.validate();
  return out;
}

FlowMatrix la_matrix(const SstLa& t, const std::vector<Config>& useful, const Word& s) {
  const std::size_t nv = t.base.num_vars();
  const std::size_t nu = useful.size();
  std::map<Config, std::size_t> uidx;
  for (std::size_t c = 0; c < nu; ++c) uidx.emplace(useful[c], c);
  FlowMatrix m(nu * nv);
  std::vector<std::vector<std::size_t>> counts(nu * nv, std::vector<std::size_t>(nu * nv, 0));
  std::vector<std::vector<bool>> has_run(nu, std::vector<bool>(nu, false));

  // Depth-first enumeration of every run from each useful configuration.
  struct Frame {
    Config config;
    Substitution sigma;
  };
  for (std::size_t c = 0; c < nu; ++c) {
    std::vector<Frame> layer{{useful[c], Substitution::identity(nv)}};
    for (Letter a : s) {
      std::vector<Frame> next;
      for (const auto& f : layer) {
        for (const LaTransition* tr : t.outgoing(f.config.state, a)) {
          next.push_back({config_step(t, f.config, *tr), compose_subst(f.sigma, tr->update)});
        }
      }
      layer = std::move(next);
    }
    for (const auto& f : layer) {
      auto it = uidx.find(f.config);
      if (it == uidx.end()) continue;
      std::size_t d = it->second;
      has_run[c][d] = true;
      for (std::size_t x = 0; x < nv; ++x) {
        for (std::size_t y = 0; y < nv; ++y) {
          counts[c * nv + x][d * nv + y] += f.sigma.occurrences(y, static_cast<std::uint32_t>(x));
        }
      }
    }
  }
  for (std::size_t r = 0; r < nu * nv; ++r) {
    for (std::size_t col = 0; col < nu * nv; ++col) {
      m.at(r, col) = has_run[r / nv][col / nv] ? flow_from_count(counts[r][col]) : Flow::bottom;
    }
  }
  return m;
}

FlowMatrix la_matrix(const SstLa& t, const Word& s) { return la_matrix(t, useful_configs(t), s); }

FlowMonoid la_monoid(const SstLa& t, std::size_t cap) {
  auto useful = useful_configs(t);
  std::vector<FlowMatrix> gens;
  for (Letter a = 0; a < t.base.input.size(); ++a) gens.push_back(la_matrix(t, useful, Word{a}));
  return close_monoid<FlowMatrix, FlowMatrixHash>(la_matrix(t, useful, Word{}), gens, mat_mul, cap);
}

}  // namespace sstkit
