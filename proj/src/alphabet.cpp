#include "sstkit/alphabet.hpp"

#include <algorithm>
#include <cctype>

#include "sstkit/error.hpp"

namespace sstkit {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ValidationError("alphabet must not be empty");
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const auto& l = letters_[i];
    if (l.empty()) throw ValidationError("empty letter");
    for (unsigned char ch : l) {
      if (std::isspace(ch)) throw ValidationError("letter '" + l + "' contains whitespace");
    }
    if (!index_.emplace(l, static_cast<Letter>(i)).second) {
      throw ValidationError("duplicate letter '" + l + "'");
    }
    if (l.size() != 1) compact_ = false;
  }
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word out;
  bool has_space = std::any_of(text.begin(), text.end(),
                               [](unsigned char c) { return std::isspace(c) != 0; });
  if (has_space) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j > i) {
        auto tok = text.substr(i, j - i);
        auto l = find(tok);
        if (!l) throw ValidationError("unknown letter '" + std::string(tok) + "'");
        out.push_back(*l);
      }
      i = j;
    }
    return out;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    std::optional<Letter> best;
    std::size_t best_len = 0;
    for (std::size_t l = 0; l < letters_.size(); ++l) {
      const auto& name = letters_[l];
      if (name.size() > best_len && text.substr(i, name.size()) == name) {
        best = static_cast<Letter>(l);
        best_len = name.size();
      }
    }
    if (!best) throw ValidationError("unknown letter at '" + std::string(text.substr(i)) + "'");
    out.push_back(*best);
    i += best_len;
  }
  return out;
}

std::string Alphabet::render(const Word& w) const { return render_tokens(names(w)); }

std::vector<std::string> Alphabet::names(const Word& w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(name(l));
  return out;
}

std::string render_tokens(const std::vector<std::string>& tokens) {
  bool compact = std::all_of(tokens.begin(), tokens.end(),
                             [](const std::string& t) { return t.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!compact && i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

void for_each_word(std::size_t alphabet_size, std::size_t max_len,
                   const std::function<bool(const Word&)>& visit) {
  Word w;
  if (!visit(w)) return;
  if (alphabet_size == 0) return;
  for (std::size_t len = 1; len <= max_len; ++len) {
    w.assign(len, 0);
    while (true) {
      if (!visit(w)) return;
      std::size_t pos = len;
      while (pos > 0) {
        --pos;
        if (++w[pos] < alphabet_size) break;
        w[pos] = 0;
        if (pos == 0) goto next_len;
      }
    }
  next_len:;
  }
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(const Word& w, std::size_t n) {
  Word out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
  if (from >= to) return {};
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

}  // namespace sstkit
