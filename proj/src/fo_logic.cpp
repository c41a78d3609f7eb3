#include "sstkit/fo_logic.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "sstkit/error.hpp"

namespace sstkit {
namespace {

using Kind = Formula::Kind;

struct SexprReader {
  std::vector<std::string> toks;
  std::size_t pos = 0;

  explicit SexprReader(std::string_view text) {
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) toks.push_back(std::move(cur));
      cur.clear();
    };
    for (char c : text) {
      if (c == '(' || c == ')') {
        flush();
        toks.emplace_back(1, c);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        cur += c;
      }
    }
    flush();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, "formula: " + what + " (token " + std::to_string(pos + 1) + ")");
  }

  const std::string& next() {
    if (pos >= toks.size()) fail("unexpected end of input");
    return toks[pos++];
  }

  void expect(const char* t) {
    if (next() != t) fail(std::string("expected `") + t + "`");
  }

  std::string atom() {
    const std::string& t = next();
    if (t == "(" || t == ")") fail("expected a name");
    return t;
  }

  std::string variable() {
    std::string v = atom();
    if (v.front() == '_') fail("variable names starting with `_` are reserved");
    return v;
  }

  Formula formula() {
    expect("(");
    std::string op = atom();
    Formula f;
    if (op == "true") {
      f = Formula::truth();
    } else if (op == "false") {
      f = Formula::falsity();
    } else if (op == "lab") {
      std::string a = atom();
      f = Formula::label(a, variable());
    } else if (op == "=" || op == "le" || op == "lt" || op == "succ") {
      Kind k = op == "=" ? Kind::eq : op == "le" ? Kind::le : op == "lt" ? Kind::lt : Kind::succ;
      std::string v1 = variable();
      f = Formula::binary(k, v1, variable());
    } else if (op == "first" || op == "last") {
      f = Formula::unary(op == "first" ? Kind::first : Kind::last, variable());
    } else if (op == "not") {
      f = Formula::negate(formula());
    } else if (op == "and" || op == "or") {
      Kind k = op == "and" ? Kind::conjunction : Kind::disjunction;
      f = formula();
      std::size_t n = 1;
      while (pos < toks.size() && toks[pos] == "(") {
        f = Formula::connect(k, std::move(f), formula());
        ++n;
      }
      if (n < 2) fail("`" + op + "` needs at least two operands");
    } else if (op == "implies") {
      Formula a = formula();
      f = Formula::connect(Kind::implication, std::move(a), formula());
    } else if (op == "exists" || op == "forall") {
      std::string v = variable();
      f = Formula::quantify(op == "exists" ? Kind::exists : Kind::forall, v, formula());
    } else {
      fail("unknown operator `" + op + "`");
    }
    expect(")");
    return f;
  }
};

struct Expander {
  std::size_t counter = 0;

  std::string fresh() { return "_" + std::to_string(++counter); }

  Formula lt(const std::string& a, const std::string& b) {
    return Formula::connect(Kind::conjunction, Formula::binary(Kind::le, a, b),
                            Formula::negate(Formula::binary(Kind::eq, a, b)));
  }

  // S(x,y) = x < y and forall z (z < y -> z <= x)
  Formula succ(const std::string& a, const std::string& b) {
    std::string z = fresh();
    return Formula::connect(
        Kind::conjunction, lt(a, b),
        Formula::quantify(Kind::forall, z,
                          Formula::connect(Kind::implication, lt(z, b), Formula::binary(Kind::le, z, a))));
  }

  Formula expand(const Formula& f) {
    switch (f.kind) {
      case Kind::lt: return lt(f.x, f.y);
      case Kind::succ: return succ(f.x, f.y);
      case Kind::last: {
        std::string y = fresh();
        return Formula::negate(Formula::quantify(Kind::exists, y, succ(f.x, y)));
      }
      case Kind::first: {
        std::string y = fresh();
        return Formula::negate(Formula::quantify(Kind::exists, y, succ(y, f.x)));
      }
      default: {
        Formula g = f;
        for (auto& c : g.children) c = expand(c);
        return g;
      }
    }
  }
};

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto use = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
  };
  switch (f.kind) {
    case Kind::truth:
    case Kind::falsity: return;
    case Kind::label:
    case Kind::first:
    case Kind::last: use(f.x); return;
    case Kind::eq:
    case Kind::le:
    case Kind::lt:
    case Kind::succ: use(f.x); use(f.y); return;
    case Kind::exists:
    case Kind::forall:
      bound.push_back(f.x);
      collect_free(f.children[0], bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& c : f.children) collect_free(c, bound, out);
  }
}

std::size_t qrank_core(const Formula& f) {
  switch (f.kind) {
    case Kind::exists:
    case Kind::forall: return 1 + qrank_core(f.children[0]);
    default: {
      std::size_t r = 0;
      for (const auto& c : f.children) r = std::max(r, qrank_core(c));
      return r;
    }
  }
}

struct Evaluator {
  const StringModel& model;
  std::size_t budget;
  std::size_t visits = 0;
  std::vector<std::pair<std::string_view, std::size_t>> env;

  std::size_t lookup(const std::string& v) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    throw ValidationError("variable `" + v + "` has no value");
  }

  bool run(const Formula& f) {
    if (++visits > budget) throw ResourceLimit("formula evaluation exceeded its node-visit budget");
    switch (f.kind) {
      case Kind::truth: return true;
      case Kind::falsity: return false;
      case Kind::label: return model.labels[lookup(f.x) - 1] == f.letter;
      case Kind::eq: return lookup(f.x) == lookup(f.y);
      case Kind::le: return lookup(f.x) <= lookup(f.y);
      case Kind::negation: return !run(f.children[0]);
      case Kind::conjunction: return run(f.children[0]) && run(f.children[1]);
      case Kind::disjunction: return run(f.children[0]) || run(f.children[1]);
      case Kind::implication: return !run(f.children[0]) || run(f.children[1]);
      case Kind::exists:
      case Kind::forall: {
        const bool want = f.kind == Kind::exists;
        env.emplace_back(f.x, 0);
        bool result = !want;
        for (std::size_t p = 1; p <= model.size(); ++p) {
          env.back().second = p;
          if (run(f.children[0]) == want) {
            result = want;
            break;
          }
        }
        env.pop_back();
        return result;
      }
      default: throw ValidationError("unexpanded macro during evaluation");
    }
  }
};

}  // namespace

Formula parse_formula(std::string_view text) {
  SexprReader r(text);
  Formula f = r.formula();
  if (r.pos != r.toks.size()) r.fail("trailing input");
  return f;
}

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case Kind::truth: return "(true)";
    case Kind::falsity: return "(false)";
    case Kind::label: return "(lab " + f.letter + " " + f.x + ")";
    case Kind::eq: return "(= " + f.x + " " + f.y + ")";
    case Kind::le: return "(le " + f.x + " " + f.y + ")";
    case Kind::lt: return "(lt " + f.x + " " + f.y + ")";
    case Kind::succ: return "(succ " + f.x + " " + f.y + ")";
    case Kind::first: return "(first " + f.x + ")";
    case Kind::last: return "(last " + f.x + ")";
    case Kind::negation: return "(not " + to_string(f.children[0]) + ")";
    case Kind::conjunction: return "(and " + to_string(f.children[0]) + " " + to_string(f.children[1]) + ")";
    case Kind::disjunction: return "(or " + to_string(f.children[0]) + " " + to_string(f.children[1]) + ")";
    case Kind::implication:
      return "(implies " + to_string(f.children[0]) + " " + to_string(f.children[1]) + ")";
    case Kind::exists: return "(exists " + f.x + " " + to_string(f.children[0]) + ")";
    case Kind::forall: return "(forall " + f.x + " " + to_string(f.children[0]) + ")";
  }
  return {};
}

Formula expand_macros(const Formula& f) { return Expander{}.expand(f); }

bool has_macros(const Formula& f) {
  if (f.kind == Kind::lt || f.kind == Kind::succ || f.kind == Kind::first || f.kind == Kind::last) return true;
  return std::any_of(f.children.begin(), f.children.end(), [](const Formula& c) { return has_macros(c); });
}

std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::size_t qrank(const Formula& f) { return qrank_core(expand_macros(f)); }

bool eval(const Formula& f, const StringModel& s, const Valuation& nu, std::size_t budget) {
  Formula g = has_macros(f) ? expand_macros(f) : f;
  for (const auto& v : free_variables(g)) {
    auto it = nu.find(v);
    if (it == nu.end()) throw ValidationError("free variable `" + v + "` has no value");
  }
  Evaluator ev{s, budget, 0, {}};
  for (const auto& [v, p] : nu) {
    if (p < 1 || p > s.size()) throw ValidationError("position of `" + v + "` is out of range");
    ev.env.emplace_back(v, p);
  }
  return ev.run(g);
}

namespace {

class EfGame {
 public:
  EfGame(std::vector<int> a, std::vector<int> b, std::size_t budget)
      : a_(std::move(a)), b_(std::move(b)), budget_(budget) {}

  bool duplicator_wins(std::vector<std::pair<int, int>>& pebbles, std::size_t rounds) {
    if (rounds == 0) return true;
    if (++visits_ > budget_) throw ResourceLimit("Ehrenfeucht-Fraisse game exceeded its budget");
    std::string key = memo_key(pebbles, rounds);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool result = spoiler_fails(pebbles, rounds, false) && spoiler_fails(pebbles, rounds, true);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  // Every spoiler move on one side has a winning answer on the other side.
  bool spoiler_fails(std::vector<std::pair<int, int>>& pebbles, std::size_t rounds, bool spoiler_on_b) {
    const auto& from = spoiler_on_b ? b_ : a_;
    const auto& to = spoiler_on_b ? a_ : b_;
    for (int i = 0; i < static_cast<int>(from.size()); ++i) {
      bool answered = false;
      for (int j = 0; j < static_cast<int>(to.size()) && !answered; ++j) {
        if (from[i] != to[j]) continue;
        int pa = spoiler_on_b ? j : i;
        int pb = spoiler_on_b ? i : j;
        if (!consistent(pebbles, pa, pb)) continue;
        pebbles.emplace_back(pa, pb);
        answered = duplicator_wins(pebbles, rounds - 1);
        pebbles.pop_back();
      }
      if (!answered) return false;
    }
    return true;
  }

  static bool consistent(const std::vector<std::pair<int, int>>& pebbles, int pa, int pb) {
    for (const auto& [x, y] : pebbles) {
      if ((pa < x) != (pb < y) || (pa == x) != (pb == y)) return false;
    }
    return true;
  }

  static std::string memo_key(std::vector<std::pair<int, int>> pebbles, std::size_t rounds) {
    std::sort(pebbles.begin(), pebbles.end());
    pebbles.erase(std::unique(pebbles.begin(), pebbles.end()), pebbles.end());
    std::string key = std::to_string(rounds);
    for (const auto& [x, y] : pebbles) key += ":" + std::to_string(x) + "," + std::to_string(y);
    return key;
  }

  std::vector<int> a_, b_;
  std::size_t budget_;
  std::size_t visits_ = 0;
  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

bool equiv_k(const StringModel& s1, const StringModel& s2, std::size_t k, std::size_t budget) {
  std::unordered_map<std::string, int> ids;
  auto encode = [&](const StringModel& s) {
    std::vector<int> out;
    for (const auto& l : s.labels) out.push_back(ids.emplace(l, static_cast<int>(ids.size())).first->second);
    return out;
  };
  EfGame game(encode(s1), encode(s2), budget);
  std::vector<std::pair<int, int>> pebbles;
  return game.duplicator_wins(pebbles, k);
}

bool equiv_k(const Word& s1, const Word& s2, std::size_t k, std::size_t budget) {
  auto model = [](const Word& w) {
    StringModel m;
    for (Letter l : w) m.labels.push_back(std::to_string(l));
    return m;
  };
  return equiv_k(model(s1), model(s2), k, budget);
}

bool is_string_check(const RelStructure& m) {
  const std::size_t n = m.nodes;
  if (m.order.size() != n || m.labels.size() != n) return false;
  for (std::size_t u = 0; u < n; ++u) {
    if (m.labels[u].size() != 1 || m.order[u].size() != n) return false;
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!m.order[u][v] && !m.order[v][u]) return false;
      if (u != v && m.order[u][v] && m.order[v][u]) return false;
      if (!m.order[u][v]) continue;
      for (std::size_t w = 0; w < n; ++w) {
        if (m.order[v][w] && !m.order[u][w]) return false;
      }
    }
  }
  return true;
}

}  // namespace sstkit
