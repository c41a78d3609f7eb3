#include "machine_text.hpp"

#include <cctype>
#include <set>

#include "sstkit/error.hpp"

namespace sstkit::detail {
namespace {

const std::set<std::string> kFieldKeys = {"input",  "output", "states",    "initial",
                                          "final",  "vars",   "la-states", "la-final"};

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

// Braces and semicolons are separate tokens even when glued to a neighbour.
std::string space_punctuation(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '{' || c == '}' || c == ';') {
      out += ' ';
      out += c;
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

bool is_arrow(const std::string& tok) {
  return tok.size() >= 3 && tok.front() == '-' && tok.ends_with("->");
}

std::string arrow_label(const std::string& tok) { return tok.substr(1, tok.size() - 3); }

RawTransition parse_transition(std::size_t line, const std::vector<std::string>& toks,
                               bool allow_lookahead) {
  if (toks.size() < 3 || !is_arrow(toks[1])) {
    throw ParseError(line, "expected `<state> -<letter>-> <state> { ... }`");
  }
  RawTransition t;
  t.line = line;
  t.source = toks[0];
  t.target = toks[2];
  std::string label = arrow_label(toks[1]);
  if (allow_lookahead) {
    auto comma = label.rfind(',');
    if (comma == std::string::npos) throw ParseError(line, "transition needs `-letter,guard->`");
    t.letter = label.substr(0, comma);
    t.guard = label.substr(comma + 1);
    if (t.guard->empty()) throw ParseError(line, "empty lookahead guard");
  } else {
    t.letter = label;
  }
  if (t.letter.empty()) throw ParseError(line, "empty transition letter");
  if (toks.size() == 3) return t;
  if (toks[3] != "{" || toks.back() != "}") throw ParseError(line, "update block must be `{ ... }`");
  std::vector<std::string> cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (cur.size() < 2 || cur[1] != ":=") throw ParseError(line, "expected `X := ...` in update");
    RawAssign a;
    a.var = cur[0];
    a.rhs.assign(cur.begin() + 2, cur.end());
    t.assigns.push_back(std::move(a));
    cur.clear();
  };
  for (std::size_t i = 4; i + 1 < toks.size(); ++i) {
    if (toks[i] == ";") {
      flush();
    } else if (toks[i] == "{" || toks[i] == "}") {
      throw ParseError(line, "unbalanced braces");
    } else {
      cur.push_back(toks[i]);
    }
  }
  flush();
  return t;
}

}  // namespace

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::string s = strip_comment(line);
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

RawMachine read_machine_text(std::string_view text, std::string_view expected_header,
                             bool allow_lookahead) {
  RawMachine m;
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::size_t start = 0, no = 1;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      lines.emplace_back(no++, strip_comment(text.substr(start, end - start)));
      start = end + 1;
    }
  }

  bool seen_header = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::size_t line = lines[li].first;
    std::string content = lines[li].second;
    // An update block may continue over several lines until its closing brace.
    if (content.find('{') != std::string::npos) {
      while (content.find('}') == std::string::npos && li + 1 < lines.size()) {
        content += ' ' + lines[++li].second;
      }
    }
    auto toks = split_tokens(space_punctuation(content));
    if (toks.empty()) continue;

    if (!seen_header) {
      if (toks.size() != 1 || toks[0] != expected_header) {
        throw ParseError(line, "expected header `" + std::string(expected_header) + "`");
      }
      m.header = toks[0];
      seen_header = true;
      continue;
    }

    const std::string& head = toks[0];
    if (head.size() > 1 && head.back() == ':') {
      std::string key = head.substr(0, head.size() - 1);
      if (!kFieldKeys.count(key)) throw ParseError(line, "unknown field `" + key + "`");
      if ((key == "la-states" || key == "la-final") && !allow_lookahead) {
        throw ParseError(line, "lookahead field in a machine without lookahead");
      }
      if (m.fields.count(key)) throw ParseError(line, "field `" + key + "` given twice");
      m.fields[key] = RawField{line, {toks.begin() + 1, toks.end()}};
      continue;
    }
    if (head == "out" && toks.size() >= 3 && toks[2] == "=") {
      m.outs.push_back(RawOut{line, toks[1], {toks.begin() + 3, toks.end()}});
      continue;
    }
    if (head == "la" && toks.size() == 4 && is_arrow(toks[2])) {
      if (!allow_lookahead) throw ParseError(line, "lookahead edge in a machine without lookahead");
      m.la_edges.push_back(RawLaEdge{line, toks[1], arrow_label(toks[2]), toks[3]});
      continue;
    }
    m.transitions.push_back(parse_transition(line, toks, allow_lookahead));
  }
  if (!seen_header) throw ParseError(1, "empty input");
  return m;
}

const RawField& require_field(const RawMachine& m, const std::string& key) {
  auto it = m.fields.find(key);
  if (it == m.fields.end()) throw ParseError(0, "missing field `" + key + ":`");
  return it->second;
}

}  // namespace sstkit::detail
