#include "sstkit/fo_transducer.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "machine_text.hpp"
#include "sstkit/error.hpp"

namespace sstkit {
namespace {

struct FotLine {
  std::size_t line = 0;
  std::vector<std::string> key;
  std::string value;
};

int paren_balance(const std::string& s) {
  int b = 0;
  for (char c : s) b += c == '(' ? 1 : c == ')' ? -1 : 0;
  return b;
}

std::vector<FotLine> split_fot(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> raw;
  std::istringstream in{std::string(text)};
  std::string l;
  for (std::size_t no = 1; std::getline(in, l); ++no) {
    raw.emplace_back(no, l.substr(0, l.find('#')));
  }
  std::vector<FotLine> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::string content = raw[i].second;
    if (detail::split_tokens(content).empty()) continue;
    // A formula may span several lines until its parentheses balance.
    while (paren_balance(content) > 0 && i + 1 < raw.size()) content += ' ' + raw[++i].second;
    FotLine f;
    f.line = raw[i].first;
    auto colon = content.find(':');
    if (colon == std::string::npos) {
      f.key = detail::split_tokens(content);
    } else {
      f.key = detail::split_tokens(content.substr(0, colon));
      f.value = content.substr(colon + 1);
    }
    out.push_back(std::move(f));
  }
  return out;
}

Formula formula_at(const FotLine& l) {
  try {
    return parse_formula(l.value);
  } catch (const ParseError& e) {
    throw ParseError(l.line, e.what());
  }
}

void require_free(const Formula& f, const std::set<std::string>& allowed, std::size_t line,
                  const std::string& what) {
  for (const auto& v : free_variables(f)) {
    if (!allowed.count(v)) throw ParseError(line, what + " has unexpected free variable `" + v + "`");
  }
}

std::size_t copy_index(const FoTransducer& t, const std::string& s, std::size_t line) {
  std::size_t c = 0;
  try {
    std::size_t used = 0;
    c = std::stoul(s, &used);
    if (used != s.size()) c = 0;
  } catch (const std::exception&) {
    c = 0;
  }
  if (c < 1 || c > t.copies) throw ParseError(line, "unknown copy `" + s + "`");
  return c - 1;
}

}  // namespace

FoTransducer parse_fot(std::string_view text) {
  auto lines = split_fot(text);
  if (lines.empty() || lines[0].key != std::vector<std::string>{"fot"} || !lines[0].value.empty()) {
    throw ParseError(lines.empty() ? 1 : lines[0].line, "expected header `fot`");
  }
  FoTransducer t;
  std::map<std::string, const FotLine*> fields;
  std::vector<const FotLine*> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.key.size() == 1) {
      if (!fields.emplace(l.key[0], &l).second) throw ParseError(l.line, "field `" + l.key[0] + "` given twice");
    } else if (l.key.size() == 3 && (l.key[0] == "pos" || l.key[0] == "ord")) {
      entries.push_back(&l);
    } else {
      throw ParseError(l.line, "unrecognized line");
    }
  }
  auto field = [&](const std::string& k) -> const FotLine& {
    auto it = fields.find(k);
    if (it == fields.end()) throw ParseError(0, "missing field `" + k + ":`");
    return *it->second;
  };
  for (const auto& [k, l] : fields) {
    if (k != "input" && k != "output" && k != "copies" && k != "dom") {
      throw ParseError(l->line, "unknown field `" + k + "`");
    }
  }
  t.input = Alphabet(detail::split_tokens(field("input").value));
  t.output = Alphabet(detail::split_tokens(field("output").value));
  {
    const auto& l = field("copies");
    auto v = detail::split_tokens(l.value);
    if (v.size() != 1) throw ParseError(l.line, "`copies:` takes one number");
    try {
      t.copies = std::stoul(v[0]);
    } catch (const std::exception&) {
      throw ParseError(l.line, "`copies:` takes one number");
    }
    if (t.copies == 0) throw ParseError(l.line, "at least one copy is required");
  }
  t.dom = formula_at(field("dom"));
  require_free(t.dom, {}, field("dom").line, "domain formula");

  t.pos.assign(t.copies, std::vector<std::optional<Formula>>(t.output.size()));
  std::vector<std::vector<std::optional<Formula>>> ord(t.copies, std::vector<std::optional<Formula>>(t.copies));
  for (const FotLine* l : entries) {
    std::size_t c = copy_index(t, l->key[1], l->line);
    Formula f = formula_at(*l);
    if (l->key[0] == "pos") {
      auto g = t.output.find(l->key[2]);
      if (!g) throw ParseError(l->line, "unknown output letter `" + l->key[2] + "`");
      require_free(f, {"x"}, l->line, "pos formula");
      if (t.pos[c][*g]) throw ParseError(l->line, "duplicate pos entry");
      t.pos[c][*g] = std::move(f);
    } else {
      std::size_t d = copy_index(t, l->key[2], l->line);
      require_free(f, {"x", "y"}, l->line, "ord formula");
      if (ord[c][d]) throw ParseError(l->line, "duplicate ord entry");
      ord[c][d] = std::move(f);
    }
  }
  t.ord.resize(t.copies);
  for (std::size_t c = 0; c < t.copies; ++c) {
    for (std::size_t d = 0; d < t.copies; ++d) {
      if (!ord[c][d]) {
        throw ValidationError("missing ord entry for copies " + std::to_string(c + 1) + " " + std::to_string(d + 1));
      }
      t.ord[c].push_back(std::move(*ord[c][d]));
    }
  }
  return t;
}

std::string to_string(const CopyNode& n) { return std::to_string(n.position) + "^" + std::to_string(n.copy); }

std::optional<Letter> alive(const FoTransducer& t, const Word& s, std::size_t c, std::size_t j) {
  if (c < 1 || c > t.copies) throw ValidationError("copy out of range");
  if (j < 1 || j > s.size()) throw ValidationError("position out of range");
  auto model = StringModel::of(t.input, s);
  std::optional<Letter> found;
  for (Letter g = 0; g < t.output.size(); ++g) {
    const auto& f = t.pos[c - 1][g];
    if (!f || !eval(*f, model, {{"x", j}})) continue;
    if (found) {
      throw ValidationError("malformed transducer: two labels hold at node " + to_string(CopyNode{j, c}));
    }
    found = g;
  }
  return found;
}

std::optional<std::size_t> OutputStructure::find(CopyNode n) const {
  auto it = std::find(nodes.begin(), nodes.end(), n);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

RelStructure OutputStructure::relational(const Alphabet& output) const {
  RelStructure r;
  r.nodes = size();
  r.order = order;
  for (Letter l : labels) r.labels.push_back({output.name(l)});
  return r;
}

std::optional<OutputStructure> output_structure(const FoTransducer& t, const Word& s) {
  auto model = StringModel::of(t.input, s);
  if (!eval(t.dom, model)) return std::nullopt;
  OutputStructure m;
  for (std::size_t c = 1; c <= t.copies; ++c) {
    for (std::size_t j = 1; j <= s.size(); ++j) {
      if (auto g = alive(t, s, c, j)) {
        m.nodes.push_back({j, c});
        m.labels.push_back(*g);
      }
    }
  }
  const std::size_t n = m.size();
  m.order.assign(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto& f = t.ord[m.nodes[u].copy - 1][m.nodes[v].copy - 1];
      m.order[u][v] = eval(f, model, {{"x", m.nodes[u].position}, {"y", m.nodes[v].position}});
    }
  }
  auto less = [&](std::size_t u, std::size_t v) { return u != v && m.order[u][v]; };
  m.next.assign(n, std::nullopt);
  m.prev.assign(n, std::nullopt);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!less(u, v)) continue;
      bool covered = false;
      for (std::size_t w = 0; w < n && !covered; ++w) covered = less(u, w) && less(w, v);
      if (covered) continue;
      if (m.next[u] || m.prev[v]) continue;  // not a chain; the string check reports it
      m.next[u] = v;
      m.prev[v] = u;
    }
  }
  return m;
}

std::optional<Word> output_string(const FoTransducer& t, const Word& s) {
  auto m = output_structure(t, s);
  if (!m) return std::nullopt;
  if (!is_string_check(m->relational(t.output))) throw ValidationError("output not a string");
  std::vector<std::size_t> idx(m->size());
  for (std::size_t u = 0; u < idx.size(); ++u) idx[u] = u;
  std::sort(idx.begin(), idx.end(), [&](std::size_t u, std::size_t v) { return u != v && m->order[u][v]; });
  Word w;
  for (auto u : idx) w.push_back(m->labels[u]);
  return w;
}

HeadTailReport heads_tails(const FoTransducer& t, const Word& s, std::size_t i) {
  if (i < 1 || i > s.size()) throw ValidationError("position out of range");
  auto m = output_structure(t, s);
  if (!m) throw DomainError("input outside the transducer's domain");
  auto inside = [&](std::optional<std::size_t> u) { return u && m->nodes[*u].position <= i; };
  auto address = [&](const CopyNode& n) {
    return Address{slice(s, 0, n.position - 1), slice(s, n.position, i), s[n.position - 1], n.copy};
  };

  HeadTailReport r;
  r.position = i;
  std::vector<std::size_t> order;
  for (std::size_t u = 0; u < m->size(); ++u) {
    if (m->nodes[u].position <= i) order.push_back(u);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
    return std::pair(m->nodes[u].copy, m->nodes[u].position) < std::pair(m->nodes[v].copy, m->nodes[v].position);
  });
  for (std::size_t u : order) {
    if (inside(m->prev[u])) continue;
    Segment seg;
    std::size_t cur = u;
    while (true) {
      seg.nodes.push_back(m->nodes[cur]);
      seg.word.push_back(m->labels[cur]);
      if (!inside(m->next[cur]) || seg.nodes.size() > m->size()) break;
      cur = *m->next[cur];
    }
    r.heads.push_back(m->nodes[u]);
    r.tails.push_back(m->nodes[cur]);
    r.head_addresses.push_back(address(m->nodes[u]));
    r.tail_addresses.push_back(address(m->nodes[cur]));
    r.segments.push_back(std::move(seg));
  }
  return r;
}

bool verify_head_uniqueness(const FoTransducer& t, const Word& s, std::size_t i, std::size_t k,
                            std::size_t budget) {
  auto r = heads_tails(t, s, i);
  auto clash = [&](const std::vector<CopyNode>& group) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        const auto& n1 = group[a];
        const auto& n2 = group[b];
        if (n1 == n2 || n1.copy != n2.copy) continue;
        if (n1.position >= i || n2.position >= i) continue;
        if (s[n1.position - 1] != s[n2.position - 1]) continue;
        if (equiv_k(slice(s, 0, n1.position - 1), slice(s, 0, n2.position - 1), k + 2, budget) &&
            equiv_k(slice(s, n1.position, i), slice(s, n2.position, i), k + 2, budget)) {
          return true;
        }
      }
    }
    return false;
  };
  return !clash(r.heads) && !clash(r.tails);
}

std::size_t qrank_fot(const FoTransducer& t) {
  std::size_t r = qrank(t.dom);
  for (const auto& row : t.pos) {
    for (const auto& f : row) {
      if (f) r = std::max(r, qrank(*f));
    }
  }
  for (const auto& row : t.ord) {
    for (const auto& f : row) r = std::max(r, qrank(f));
  }
  return r + 1;
}

std::string to_dot(const FoTransducer& t, const OutputStructure& m) {
  std::ostringstream os;
  os << "digraph output {\n  rankdir=LR;\n";
  auto id = [&](std::size_t u) { return "n" + std::to_string(m.nodes[u].position) + "_" + std::to_string(m.nodes[u].copy); };
  for (std::size_t u = 0; u < m.size(); ++u) {
    os << "  " << id(u) << " [label=\"" << to_string(m.nodes[u]) << ":" << t.output.name(m.labels[u]) << "\"];\n";
  }
  for (std::size_t u = 0; u < m.size(); ++u) {
    if (m.next[u]) os << "  " << id(u) << " -> " << id(*m.next[u]) << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string format_report(const FoTransducer& t, const HeadTailReport& r) {
  std::ostringstream os;
  auto join = [](const std::vector<CopyNode>& v) {
    std::string s;
    for (const auto& n : v) s += (s.empty() ? "" : " ") + to_string(n);
    return s;
  };
  os << "position: " << r.position << "\n";
  os << "heads: " << join(r.heads) << "\n";
  os << "tails: " << join(r.tails) << "\n";
  for (std::size_t h = 0; h < r.segments.size(); ++h) {
    const auto& a = r.head_addresses[h];
    os << "segment " << to_string(r.heads[h]) << " .. " << to_string(r.tails[h]) << ": \""
       << t.output.render(r.segments[h].word) << "\"  address (\"" << t.input.render(a.prefix) << "\", \""
       << t.input.render(a.infix) << "\", " << t.input.name(a.letter) << ", " << a.copy << ")\n";
  }
  return os.str();
}

}  // namespace sstkit
