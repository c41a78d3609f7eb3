#include "sstkit/output_graph.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "sstkit/error.hpp"
#include "sstkit/flow_monoid.hpp"

namespace sstkit {
namespace {

Run accepting_run(const Sst& t, const Word& s) {
  auto r = run(t, s);
  if (!r || !t.final[r->states.back()]) throw DomainError("word outside the domain");
  return *r;
}

std::string word_label(const Sst& t, const Word& w) { return t.output.render(w); }

// Flow of (q_i, X) into (q_j, Y) along s[i+1:j] on the accepting run, i <= j.
class FlowTable {
 public:
  FlowTable(const Sst& t, const Word& s, const Run& r) : t_(t), s_(s), r_(r) {}

  bool flows(std::size_t i, std::uint32_t x, std::size_t j, std::uint32_t y) {
    if (i > j) return false;
    auto key = std::tuple(i, j, x, y);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Flow f = flow_count(t_, slice(s_, i, j), r_.states[i], x, r_.states[j], y);
    bool v = f == Flow::one || f == Flow::omega;
    cache_.emplace(key, v);
    return v;
  }

 private:
  const Sst& t_;
  const Word& s_;
  const Run& r_;
  std::map<std::tuple<std::size_t, std::size_t, std::uint32_t, std::uint32_t>, bool> cache_;
};

// X' occurs before Y' in some right-hand side read at column k, or in the final
// output expression when k is the last column.
bool concatenated(const Sst& t, const Run& r, std::size_t k, std::uint32_t x2, std::uint32_t y2) {
  auto ordered = [&](const Expr& e) {
    bool seen_x = false;
    for (const Token& tok : e) {
      if (!tok.is_var()) continue;
      if (seen_x && tok.id == y2) return true;
      if (tok.id == x2) seen_x = true;
    }
    return false;
  };
  if (k < r.per_step.size()) {
    for (const Expr& e : r.per_step[k].image) {
      if (ordered(e)) return true;
    }
    return false;
  }
  Expr f;
  for (auto v : t.out[r.states.back()]) f.push_back(Token::variable(v));
  return ordered(f);
}

unsigned conditions_with(const Sst& t, const Run& r, FlowTable& ft, std::uint32_t x, Side d, std::size_t i,
                         std::uint32_t y, Side d2, std::size_t j) {
  unsigned bits = 0;
  if (d == Side::in && j <= i && ft.flows(j, y, i, x)) bits |= 1u;
  if (d2 == Side::out && i <= j && ft.flows(i, x, j, y)) bits |= 2u;
  const std::size_t n = r.per_step.size();
  const auto nv = static_cast<std::uint32_t>(t.num_vars());
  for (std::size_t k = std::max(i, j); k <= n && !(bits & 4u); ++k) {
    for (std::uint32_t x2 = 0; x2 < nv && !(bits & 4u); ++x2) {
      if (!ft.flows(i, x, k, x2)) continue;
      for (std::uint32_t y2 = 0; y2 < nv; ++y2) {
        if (ft.flows(j, y, k, y2) && concatenated(t, r, k, x2, y2)) {
          bits |= 4u;
          break;
        }
      }
    }
  }
  return bits;
}

}  // namespace

std::optional<std::size_t> SstOutputGraph::find(std::uint32_t var, Side side, std::size_t column) const {
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    const auto& n = nodes[u];
    if (n.var == var && n.side == side && n.column == column) return u;
  }
  return std::nullopt;
}

std::size_t SstOutputGraph::useful_nodes() const {
  std::size_t c = 0;
  for (const auto& n : nodes) c += n.useful;
  return c;
}

std::vector<std::vector<bool>> usefulness_table(const Sst& t, const Word& s) {
  Run r = accepting_run(t, s);
  const std::size_t n = s.size();
  std::vector<std::vector<bool>> u(n + 1, std::vector<bool>(t.num_vars(), false));
  for (auto x : t.out[r.states.back()]) u[n][x] = true;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t y = 0; y < t.num_vars(); ++y) {
      if (!u[i + 1][y]) continue;
      for (const Token& tok : r.per_step[i][y]) {
        if (tok.is_var()) u[i][tok.id] = true;
      }
    }
  }
  return u;
}

SstOutputGraph build_graph(const Sst& t, const Word& s, GraphOptions opts) {
  Run r = accepting_run(t, s);
  if (!check_one_bounded(t).one_bounded) throw ValidationError("machine not 1-bounded");
  auto use = usefulness_table(t, s);
  const std::size_t n = s.size();

  SstOutputGraph g;
  g.columns = n + 1;
  g.vars = t.num_vars();
  std::vector<std::vector<std::size_t>> in_id(n + 1, std::vector<std::size_t>(g.vars, SIZE_MAX));
  auto out_id = in_id;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::uint32_t x = 0; x < g.vars; ++x) {
      if (!use[i][x] && !opts.include_useless) continue;
      in_id[i][x] = g.nodes.size();
      g.nodes.push_back({x, Side::in, i, use[i][x]});
      out_id[i][x] = g.nodes.size();
      g.nodes.push_back({x, Side::out, i, use[i][x]});
    }
  }
  auto add = [&](std::size_t from, std::size_t to, Word label, EdgeKind kind = EdgeKind::update) {
    g.edges.push_back({from, to, std::move(label), kind});
  };

  for (std::uint32_t x = 0; x < g.vars; ++x) {
    if (in_id[0][x] != SIZE_MAX) add(in_id[0][x], out_id[0][x], {});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t x = 0; x < g.vars; ++x) {
      if (in_id[i + 1][x] == SIZE_MAX) continue;
      // Split the right-hand side into constant words around its variables.
      std::vector<Word> gamma(1);
      std::vector<std::uint32_t> vs;
      for (const Token& tok : r.per_step[i][x]) {
        if (tok.is_var()) {
          vs.push_back(tok.id);
          gamma.emplace_back();
        } else {
          gamma.back().push_back(tok.id);
        }
      }
      if (vs.empty()) {
        add(in_id[i + 1][x], out_id[i + 1][x], gamma[0]);
        continue;
      }
      add(in_id[i + 1][x], in_id[i][vs.front()], gamma.front());
      for (std::size_t m = 0; m + 1 < vs.size(); ++m) add(out_id[i][vs[m]], in_id[i][vs[m + 1]], gamma[m + 1]);
      add(out_id[i][vs.back()], out_id[i + 1][x], gamma.back());
    }
  }
  const auto& f = t.out[r.states.back()];
  for (std::size_t m = 0; m + 1 < f.size(); ++m) add(out_id[n][f[m]], in_id[n][f[m + 1]], {}, EdgeKind::final_glue);
  return g;
}

PathVerdict unique_path_check(const SstOutputGraph& g) {
  PathVerdict v;
  const std::size_t nn = g.nodes.size();
  std::vector<std::size_t> indeg(nn, 0), outdeg(nn, 0);
  std::vector<std::optional<std::size_t>> next(nn);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> multiplicity;
  for (const auto& e : g.edges) {
    if (!g.nodes[e.from].useful || !g.nodes[e.to].useful) continue;
    if (++multiplicity[{e.from, e.to}] > 1) {
      v.violation = "multi-edge between nodes " + std::to_string(e.from) + " and " + std::to_string(e.to);
      return v;
    }
    ++outdeg[e.from];
    ++indeg[e.to];
    next[e.from] = e.to;
  }
  std::optional<std::size_t> source;
  std::size_t sources = 0, sinks = 0, live = 0;
  for (std::size_t u = 0; u < nn; ++u) {
    if (!g.nodes[u].useful) continue;
    ++live;
    if (indeg[u] > 1 || outdeg[u] > 1) {
      v.violation = "node " + std::to_string(u) + " has degree above one";
      return v;
    }
    if (indeg[u] == 0) {
      ++sources;
      source = u;
    }
    sinks += outdeg[u] == 0;
  }
  if (sources == 0) {
    v.violation = "no source";
    return v;
  }
  if (sources != 1 || sinks != 1) {
    v.violation = std::to_string(sources) + " sources and " + std::to_string(sinks) + " sinks";
    return v;
  }
  for (std::optional<std::size_t> u = source; u; u = next[*u]) {
    v.path.push_back(*u);
    if (v.path.size() > live) break;
  }
  if (v.path.size() != live) {
    v.violation = "graph is not a single connected path";
    v.path.clear();
    return v;
  }
  v.ok = true;
  return v;
}

std::optional<Word> path_word(const SstOutputGraph& g, std::size_t from, std::size_t to) {
  Word w;
  std::size_t cur = from;
  for (std::size_t steps = 0; steps <= g.nodes.size(); ++steps) {
    if (cur == to) return w;
    const GraphEdge* e = nullptr;
    for (const auto& cand : g.edges) {
      if (cand.from == cur && g.nodes[cand.to].useful) {
        e = &cand;
        break;
      }
    }
    if (!e) return std::nullopt;
    w.insert(w.end(), e->label.begin(), e->label.end());
    cur = e->to;
  }
  return std::nullopt;
}

Word readout(const SstOutputGraph& g) {
  auto v = unique_path_check(g);
  if (!v.ok) throw ValidationError("output graph is not a unique path: " + v.violation);
  auto w = path_word(g, v.path.front(), v.path.back());
  return *w;
}

std::vector<std::vector<bool>> reachability(const SstOutputGraph& g) {
  const std::size_t nn = g.nodes.size();
  std::vector<std::vector<std::size_t>> adj(nn);
  for (const auto& e : g.edges) {
    if (g.nodes[e.from].useful && g.nodes[e.to].useful) adj[e.from].push_back(e.to);
  }
  std::vector<std::vector<bool>> reach(nn, std::vector<bool>(nn, false));
  for (std::size_t u = 0; u < nn; ++u) {
    if (!g.nodes[u].useful) continue;
    std::deque<std::size_t> queue{u};
    reach[u][u] = true;
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto w : adj[v]) {
        if (!reach[u][w]) {
          reach[u][w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return reach;
}

unsigned path_conditions(const Sst& t, const Word& s, std::uint32_t x, Side d, std::size_t i, std::uint32_t y,
                         Side d2, std::size_t j) {
  Run r = accepting_run(t, s);
  FlowTable ft(t, s, r);
  return conditions_with(t, r, ft, x, d, i, y, d2, j);
}

PathCheckVerdict path_characterization_check(const Sst& t, const Word& s) {
  Run r = accepting_run(t, s);
  auto g = build_graph(t, s);
  auto reach = reachability(g);
  auto use = usefulness_table(t, s);
  FlowTable ft(t, s, r);
  PathCheckVerdict v;
  const auto nv = static_cast<std::uint32_t>(t.num_vars());
  const std::size_t n = s.size();
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::uint32_t x = 0; x < nv; ++x) {
      for (Side d : {Side::in, Side::out}) {
        for (std::size_t j = 0; j <= n; ++j) {
          for (std::uint32_t y = 0; y < nv; ++y) {
            for (Side d2 : {Side::in, Side::out}) {
              ++v.pairs_checked;
              auto a = g.find(x, d, i);
              auto b = g.find(y, d2, j);
              bool got = a && b && reach[*a][*b];
              bool expected = use[i][x] && use[j][y] && conditions_with(t, r, ft, x, d, i, y, d2, j) != 0;
              if (got == expected) continue;
              v.ok = false;
              v.from = node_name(t, GraphNode{x, d, i, use[i][x]});
              v.to = node_name(t, GraphNode{y, d2, j, use[j][y]});
              v.expected = expected;
              v.reachable = got;
              return v;
            }
          }
        }
      }
    }
  }
  return v;
}

std::string node_name(const Sst& t, const GraphNode& n) {
  return t.vars[n.var] + (n.side == Side::in ? "_in_" : "_out_") + std::to_string(n.column);
}

std::string to_dot(const Sst& t, const SstOutputGraph& g) {
  std::ostringstream os;
  os << "digraph sst_output {\n  rankdir=LR;\n";
  for (std::size_t c = 0; c < g.columns; ++c) {
    os << "  { rank=same;";
    for (const auto& n : g.nodes) {
      if (n.column == c) os << " " << node_name(t, n) << ";";
    }
    os << " }\n";
  }
  for (const auto& n : g.nodes) {
    if (!n.useful) os << "  " << node_name(t, n) << " [style=dashed];\n";
  }
  for (const auto& e : g.edges) {
    os << "  " << node_name(t, g.nodes[e.from]) << " -> " << node_name(t, g.nodes[e.to]) << " [label=\""
       << word_label(t, e.label) << "\"";
    if (e.kind == EdgeKind::final_glue) os << ", style=dotted";
    if (!g.nodes[e.from].useful || !g.nodes[e.to].useful) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace sstkit
