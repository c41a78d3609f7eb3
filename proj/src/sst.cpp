#include "sstkit/sst.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sst_build.hpp"
#include "sstkit/error.hpp"

namespace sstkit {

Substitution Substitution::identity(std::size_t vars) {
  Substitution s;
  s.image.resize(vars);
  for (std::size_t x = 0; x < vars; ++x) s.image[x] = {Token::variable(static_cast<std::uint32_t>(x))};
  return s;
}

Expr Substitution::apply(const Expr& e) const {
  Expr out;
  for (const Token& tok : e) {
    if (tok.is_var()) {
      const Expr& img = image.at(tok.id);
      out.insert(out.end(), img.begin(), img.end());
    } else {
      out.push_back(tok);
    }
  }
  return out;
}

std::size_t Substitution::occurrences(std::size_t x, std::uint32_t y) const {
  return static_cast<std::size_t>(std::count(image.at(x).begin(), image.at(x).end(), Token::variable(y)));
}

Substitution compose_subst(const Substitution& first, const Substitution& second) {
  Substitution out;
  out.image.reserve(second.size());
  for (const Expr& e : second.image) out.image.push_back(first.apply(e));
  return out;
}

Word flatten(const Expr& e) {
  Word w;
  for (const Token& tok : e) {
    if (!tok.is_var()) w.push_back(tok.id);
  }
  return w;
}

const Transition* Sst::step(std::size_t q, Letter a) const {
  std::size_t idx = q * input.size() + a;
  if (idx >= delta.size() || !delta[idx]) return nullptr;
  return &*delta[idx];
}

void Sst::set_transition(std::size_t q, Letter a, Transition t) {
  delta.resize(states.size() * input.size());
  delta.at(q * input.size() + a) = std::move(t);
}

std::optional<std::size_t> Sst::state_index(std::string_view name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end()) return std::nullopt;
  return static_cast<std::size_t>(it - states.begin());
}

std::optional<std::uint32_t> Sst::var_index(std::string_view name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - vars.begin());
}

void Sst::validate() const {
  if (states.empty()) throw ValidationError("machine has no states");
  if (initial >= states.size()) throw ValidationError("initial state out of range");
  if (final.size() != states.size() || out.size() != states.size()) {
    throw ValidationError("final/out tables do not match the state count");
  }
  std::set<std::string> seen;
  for (const auto& q : states) {
    if (!seen.insert(q).second) throw ValidationError("duplicate state '" + q + "'");
  }
  seen.clear();
  for (const auto& x : vars) {
    if (!seen.insert(x).second) throw ValidationError("duplicate variable '" + x + "'");
    if (output.contains(x) || input.contains(x)) {
      throw ValidationError("'" + x + "' is both a variable and a letter");
    }
  }
  if (!delta.empty() && delta.size() != states.size() * input.size()) {
    throw ValidationError("transition table has the wrong shape");
  }
  auto check_expr = [&](const Expr& e) {
    for (const Token& tok : e) {
      if (tok.is_var() ? tok.id >= vars.size() : tok.id >= output.size()) {
        throw ValidationError("update token out of range");
      }
    }
  };
  for (const auto& tr : delta) {
    if (!tr) continue;
    if (tr->target >= states.size()) throw ValidationError("transition target out of range");
    if (tr->update.size() != vars.size()) throw ValidationError("update does not cover every variable");
    for (const Expr& e : tr->update.image) check_expr(e);
  }
  for (std::size_t q = 0; q < states.size(); ++q) {
    for (auto x : out[q]) {
      if (x >= vars.size()) throw ValidationError("output variable out of range");
    }
  }
}

std::vector<std::string> Sst::lint() const {
  std::vector<std::string> warnings;
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (!final[q]) continue;
    std::set<std::uint32_t> seen;
    for (auto x : out[q]) {
      if (!seen.insert(x).second) {
        warnings.push_back("output of state " + states[q] + " repeats variable " + vars[x]);
      }
    }
  }
  return warnings;
}

std::string Sst::render_expr(const Expr& e) const {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ' ';
    s += e[i].is_var() ? vars.at(e[i].id) : output.name(e[i].id);
  }
  return s;
}

Substitution Run::total(std::size_t vars) const {
  return composed.empty() ? Substitution::identity(vars) : composed.back();
}

namespace detail {

std::size_t resolve_state(const Sst& t, const std::string& name, std::size_t line) {
  auto q = t.state_index(name);
  if (!q) throw ParseError(line, "undeclared state `" + name + "`");
  return *q;
}

Letter resolve_letter(const Alphabet& a, const std::string& name, std::size_t line) {
  auto l = a.find(name);
  if (!l) throw ParseError(line, "undeclared letter `" + name + "`");
  return *l;
}

void build_core(const RawMachine& m, Sst& t) {
  auto alphabet = [&](const std::string& key) {
    const auto& f = require_field(m, key);
    try {
      return Alphabet(f.values);
    } catch (const ValidationError& e) {
      throw ParseError(f.line, e.what());
    }
  };
  t.input = alphabet("input");
  t.output = alphabet("output");

  const auto& states = require_field(m, "states");
  if (states.values.empty()) throw ParseError(states.line, "at least one state required");
  t.states = states.values;
  std::set<std::string> seen;
  for (const auto& q : t.states) {
    if (!seen.insert(q).second) throw ParseError(states.line, "duplicate state `" + q + "`");
  }

  const auto& init = require_field(m, "initial");
  if (init.values.size() != 1) throw ParseError(init.line, "exactly one initial state required");
  t.initial = resolve_state(t, init.values[0], init.line);

  t.final.assign(t.states.size(), false);
  if (auto it = m.fields.find("final"); it != m.fields.end()) {
    for (const auto& q : it->second.values) t.final[resolve_state(t, q, it->second.line)] = true;
  }

  const auto& vars = require_field(m, "vars");
  t.vars = vars.values;
  seen.clear();
  for (const auto& x : t.vars) {
    if (!seen.insert(x).second) throw ParseError(vars.line, "duplicate variable `" + x + "`");
    if (t.output.contains(x) || t.input.contains(x)) {
      throw ParseError(vars.line, "`" + x + "` is both a variable and a letter");
    }
  }

  t.out.assign(t.states.size(), {});
  std::vector<bool> has_out(t.states.size(), false);
  for (const auto& o : m.outs) {
    auto q = resolve_state(t, o.state, o.line);
    if (!t.final[q]) throw ParseError(o.line, "`out` for non-final state `" + o.state + "`");
    if (has_out[q]) throw ParseError(o.line, "second `out` line for state `" + o.state + "`");
    has_out[q] = true;
    for (const auto& x : o.vars) {
      auto xi = t.var_index(x);
      if (!xi) throw ParseError(o.line, "undeclared variable `" + x + "`");
      t.out[q].push_back(*xi);
    }
  }
  for (std::size_t q = 0; q < t.states.size(); ++q) {
    if (t.final[q] && !has_out[q]) {
      throw ParseError(require_field(m, "final").line, "final state `" + t.states[q] + "` has no `out` line");
    }
  }
}

Substitution resolve_update(const Sst& t, const RawTransition& tr) {
  Substitution s = Substitution::identity(t.num_vars());
  std::vector<bool> assigned(t.num_vars(), false);
  for (const auto& a : tr.assigns) {
    auto x = t.var_index(a.var);
    if (!x) throw ParseError(tr.line, "undeclared variable `" + a.var + "`");
    if (assigned[*x]) throw ParseError(tr.line, "variable `" + a.var + "` assigned twice");
    assigned[*x] = true;
    Expr e;
    for (const auto& tok : a.rhs) {
      if (auto v = t.var_index(tok)) {
        e.push_back(Token::variable(*v));
      } else if (auto l = t.output.find(tok)) {
        e.push_back(Token::letter(*l));
      } else {
        throw ParseError(tr.line, "`" + tok + "` is neither a variable nor an output letter");
      }
    }
    s.image[*x] = std::move(e);
  }
  return s;
}

std::string write_update(const Sst& t, const Substitution& s) {
  std::string body;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (s.image[x] == Expr{Token::variable(static_cast<std::uint32_t>(x))}) continue;
    if (!body.empty()) body += " ;";
    body += " " + t.vars[x] + " :=";
    if (!s.image[x].empty()) body += " " + t.render_expr(s.image[x]);
  }
  return "{" + body + " }";
}

std::string write_core(const Sst& t, std::string_view header) {
  std::ostringstream os;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += " " + x;
    return s;
  };
  os << header << "\n";
  os << "input:" << join(t.input.letters()) << "\n";
  os << "output:" << join(t.output.letters()) << "\n";
  os << "states:" << join(t.states) << "\n";
  os << "initial: " << t.states[t.initial] << "\n";
  os << "final:";
  for (std::size_t q = 0; q < t.num_states(); ++q) {
    if (t.final[q]) os << " " << t.states[q];
  }
  os << "\n";
  os << "vars:" << join(t.vars) << "\n";
  for (std::size_t q = 0; q < t.num_states(); ++q) {
    if (!t.final[q]) continue;
    os << "out " << t.states[q] << " =";
    for (auto x : t.out[q]) os << " " << t.vars[x];
    os << "\n";
  }
  return os.str();
}

}  // namespace detail

Sst parse_sst(std::string_view text) {
  auto raw = detail::read_machine_text(text, "sst", false);
  Sst t;
  detail::build_core(raw, t);
  t.delta.assign(t.num_states() * t.input.size(), std::nullopt);
  for (const auto& tr : raw.transitions) {
    auto q = detail::resolve_state(t, tr.source, tr.line);
    auto a = detail::resolve_letter(t.input, tr.letter, tr.line);
    auto target = detail::resolve_state(t, tr.target, tr.line);
    auto& slot = t.delta[q * t.input.size() + a];
    if (slot) {
      throw ParseError(tr.line, "duplicate transition for (" + tr.source + ", " + tr.letter + ")");
    }
    slot = Transition{target, detail::resolve_update(t, tr)};
  }
  t.validate();
  return t;
}

std::string write_sst(const Sst& t) {
  std::string s = detail::write_core(t, "sst");
  for (std::size_t q = 0; q < t.num_states(); ++q) {
    for (Letter a = 0; a < t.input.size(); ++a) {
      const Transition* tr = t.step(q, a);
      if (!tr) continue;
      s += t.states[q] + " -" + t.input.name(a) + "-> " + t.states[tr->target] + " " +
           detail::write_update(t, tr->update) + "\n";
    }
  }
  return s;
}

std::optional<Run> run_from(const Sst& t, std::size_t from, const Word& input) {
  Run r;
  r.states.push_back(from);
  std::size_t q = from;
  for (Letter a : input) {
    if (a >= t.input.size()) throw ValidationError("letter outside the input alphabet");
    const Transition* tr = t.step(q, a);
    if (!tr) return std::nullopt;
    r.per_step.push_back(tr->update);
    r.composed.push_back(r.composed.empty() ? tr->update : compose_subst(r.composed.back(), tr->update));
    q = tr->target;
    r.states.push_back(q);
  }
  return r;
}

std::optional<Run> run(const Sst& t, const Word& input) { return run_from(t, t.initial, input); }

std::optional<Word> output(const Sst& t, const Word& input) {
  auto r = run(t, input);
  if (!r) return std::nullopt;
  std::size_t q = r->states.back();
  if (!t.final[q]) return std::nullopt;
  Expr f;
  for (auto x : t.out[q]) f.push_back(Token::variable(x));
  return flatten(r->total(t.num_vars()).apply(f));
}

std::vector<std::vector<Word>> variable_values(const Sst& t, const Run& r) {
  std::vector<std::vector<Word>> values;
  values.emplace_back(t.num_vars());
  for (const auto& sigma : r.composed) {
    std::vector<Word> row;
    row.reserve(t.num_vars());
    for (const Expr& e : sigma.image) row.push_back(flatten(e));
    values.push_back(std::move(row));
  }
  return values;
}

}  // namespace sstkit
